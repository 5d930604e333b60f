#pragma once

// Case analysis for surfaces geometrically ruled over an elliptic curve.
// Sheaf-theoretic facts about which curves exist enter as explicit
// CurveSupply models; everything downstream of them is computed.

#include "ramdata/am_kernel.hpp"
#include "ramdata/ram_enum.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ramdata::elliptic {

using lattice::CurveSupply;
using lattice::CurveSupplyEntry;
using lattice::SupplyCount;
using lattice::SurfaceModel;
using ramification::FilterVerdict;
using ramification::RamificationDatum;
using ramification::RamificationVector;

/// Largest fibre degree any ramification curve can have: sum a_i (1 - 1/e_i) = 2
/// with weights >= 1/2.
inline constexpr Int max_fiber_degree = 4;

/// E = O + L with L of order n in Pic^0(C).
struct SplitRuledConfig {
    Int torsion = 1;

    SurfaceModel surface() const;
};

/// Pass iff every class is a positive multiple of -K, has p_a = 1, and the
/// curves are pairwise disjoint.
FilterVerdict extremality_filter(const SurfaceModel& surface, const RamificationDatum& datum);

/// Does |aC_0 + rho^* P| contain a member? P is the torsion class of O(P)
/// written as a multiple of [L] in Z/n: true iff -P = i[L] for some 0 <= i <= a.
bool split_section_test(const SplitRuledConfig& config, Int a, Int p);

/// Irreducible a-sections for a = 1..max_fiber_degree:
/// a = 1: two (C_0, C_1), unbounded when n = 1; a >= 2: unbounded iff n | a.
CurveSupply split_supply(const SplitRuledConfig& config);

/// Single section C_0 (non-split extension of O by O). With
/// `allow_two_sections` a counterfactual unbounded family of 2-sections is
/// added.
CurveSupply nonsplit_degree0_supply(bool allow_two_sections = false);

/// Non-split extension of a degree-one bundle by O (e = -1): three curves
/// in -K from the degree-2 isogenies, and an unbounded family in -2K.
CurveSupply degree1_supply();

/// One enumerated datum with its verdicts and supply usage.
struct SupplyDatum {
    RamificationDatum datum;
    std::vector<FilterVerdict> verdicts;
    bool supply_consistent = false;
    std::string supply_note;

    bool survives() const;
};

struct SplitCaseRow {
    RamificationVector vector;
    bool realizable = false;
    std::vector<SupplyDatum> data;
};

/// Vectors with sum over entries (1 - 1/e) = 2 and length >= 3, each with the
/// data drawn from the surface's curve supply. Sorted by vector.
std::vector<SplitCaseRow> enumerate_supply_cases(const SurfaceModel& surface);

std::vector<SplitCaseRow> enumerate_split_case(const SplitRuledConfig& config);

struct ClassificationResult {
    bool empty = true;
    std::vector<SplitCaseRow> rows;
    std::vector<std::string> transcript;
};

/// Non-split degree-0 bundle: only C_0 is available, so
/// sum (1 - 1/e_i) D_i == 2C_0 has no solution.
ClassificationResult nonsplit_deg0_check(bool allow_two_sections = false);

struct DegreeOneCase {
    std::string label;
    RamificationDatum datum;
    /// D_i == m_i (-K).
    std::vector<Int> multiples;
    std::vector<FilterVerdict> verdicts;
    kernel::CoverFamilyProblem problem;
    kernel::CoverFamilySolution solution;
};

SurfaceModel degree1_surface();

/// All data on the e = -1 surface: sum m_i (1 - 1/e_i) = 1 with m_i >= 1,
/// each with a cover-family witness.
std::vector<DegreeOneCase> deg1_case_enumerate();

} // namespace ramdata::elliptic
