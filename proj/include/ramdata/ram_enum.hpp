#pragma once

// Ramification data with numerically trivial K_X: bounded exhaustive search
// plus the necessary-condition filters (Artin genus bound, node
// divisibility, nef anticanonical class).

#include "ramdata/egyptian.hpp"
#include "ramdata/lattice.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ramdata::ramification {

using lattice::DivisorClass;
using lattice::RamifiedCurve;
using lattice::SurfaceModel;

/// Canonically ordered list of (irreducible class, index >= 2) pairs.
class RamificationDatum {
public:
    RamificationDatum() = default;
    /// Validates every pair against `surface` and sorts them.
    RamificationDatum(const SurfaceModel& surface, std::vector<RamifiedCurve> pairs);

    const std::vector<RamifiedCurve>& pairs() const { return pairs_; }
    const std::string& surface_id() const { return surface_id_; }
    bool empty() const { return pairs_.empty(); }
    std::size_t size() const { return pairs_.size(); }

    /// Sum of the classes whose index is divisible by `divisor`.
    DivisorClass sum_where_divisible(const SurfaceModel& surface, Int divisor) const;
    /// Sum of the classes with index exactly `index` (the paper-style D^e).
    DivisorClass sum_with_index(const SurfaceModel& surface, Int index) const;
    DivisorClass total(const SurfaceModel& surface) const;

    friend bool operator==(const RamificationDatum&, const RamificationDatum&) = default;
    friend auto operator<=>(const RamificationDatum&, const RamificationDatum&) = default;

private:
    std::string surface_id_;
    std::vector<RamifiedCurve> pairs_;
};

/// Indices repeated with multiplicity D_i.H, nondecreasing.
struct RamificationVector {
    std::vector<Int> entries;

    std::string to_string() const;
    friend bool operator==(const RamificationVector&, const RamificationVector&) = default;
    friend auto operator<=>(const RamificationVector&, const RamificationVector&) = default;
};

RamificationVector vector_of(const SurfaceModel& surface, const RamificationDatum& datum, const DivisorClass& h);

enum class VerdictStatus { pass, fail, not_applicable };

std::string_view to_string(VerdictStatus s);
VerdictStatus parse_verdict_status(std::string_view s);

struct FilterVerdict {
    std::string filter_name;
    VerdictStatus status = VerdictStatus::pass;
    std::string reason;

    bool passed() const { return status == VerdictStatus::pass; }
    bool failed() const { return status == VerdictStatus::fail; }
    friend bool operator==(const FilterVerdict&, const FilterVerdict&) = default;
};

namespace filter_names {
inline constexpr std::string_view nef = "nef_anticanonical";
inline constexpr std::string_view artin = "artin_genus";
inline constexpr std::string_view node = "node_divisibility";
inline constexpr std::string_view extremality = "extremality";
} // namespace filter_names

enum class Mode { terminal, canonical };

std::string_view to_string(Mode m);
Mode parse_mode(std::string_view s);

/// -K nef against the surface's extremal curve classes.
bool nef_precheck(const SurfaceModel& surface);
FilterVerdict nef_verdict(const SurfaceModel& surface);

/// p_a(C^p) >= 1 for every prime p dividing an index, where C^p sums the
/// curves whose index is divisible by the largest power of p occurring.
FilterVerdict artin_filter(const SurfaceModel& surface, const RamificationDatum& datum);

/// Fails when two meeting curves have indices neither of which divides the
/// other.
FilterVerdict node_divisibility_filter(const SurfaceModel& surface, const RamificationDatum& datum);

/// nef, Artin and node verdicts, in that order. The node filter reports
/// not_applicable in canonical mode.
std::vector<FilterVerdict> rational_filters(const SurfaceModel& surface, const RamificationDatum& datum, Mode mode);

/// Caps the coefficient usage of the total ramification divisor:
/// sum_i |coeff_j(D_i)| <= cap[j] (== cap[j] when `exact`).
struct SearchBox {
    std::vector<Int> cap;
    std::optional<Int> max_index;
    bool exact = false;
};

/// Box implied by sum (1 - 1/e_i) D_i = -K with weights >= 1/2, for the
/// built-in rational surfaces (cap = 2 * (-K)).
std::optional<SearchBox> builtin_box(const SurfaceModel& surface);

struct Candidate {
    RamificationDatum datum;
    std::vector<FilterVerdict> verdicts;

    bool survives() const;
    const FilterVerdict* verdict(std::string_view name) const;
};

/// RAMDATA_THREADS if set, otherwise the hardware concurrency.
unsigned default_thread_count();

/// Every datum inside the box with K_X numerically trivial, each carrying
/// all filter verdicts. Output is sorted by datum.
std::vector<Candidate> enumerate_ncy(const SurfaceModel& surface, Mode mode,
                                     const std::optional<SearchBox>& box = std::nullopt, unsigned threads = 0);

} // namespace ramdata::ramification
