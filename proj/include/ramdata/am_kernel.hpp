#pragma once

// Finite-abelian-group model of the secondary obstruction on ruled surfaces
// over an elliptic curve. H^1(E, Z/n) is modelled as (Z/n)^2; an isogeny
// enters only through its induced 2x2 matrix and its declared kernel.

#include "ramdata/rational.hpp"
#include "ramdata/smith.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace ramdata::kernel {

using Element = std::array<Int, 2>;
using Matrix2 = std::array<std::array<Int, 2>, 2>;

/// (Z/n)^2.
class TorsionModule {
public:
    explicit TorsionModule(Int level);

    Int level() const { return level_; }
    Element reduce(const Element& x) const;
    Element add(const Element& x, const Element& y) const;
    Element scale(Int k, const Element& x) const;
    Element apply(const Matrix2& m, const Element& x) const;
    /// Least k >= 1 with k x = 0.
    Int exact_order(const Element& x) const;
    /// All n^2 elements in lexicographic order.
    std::vector<Element> elements() const;

private:
    Int level_;
};

Int exact_order(Int level, const Element& x);

/// Subgroup of (Z/n)^2 with generators and invariant factors (> 1, each
/// dividing the next).
struct Subgroup {
    Int level = 1;
    std::vector<Element> generators;
    std::vector<Int> invariant_factors;
    Int order = 1;

    /// Sorted element list (closure of the generators).
    std::vector<Element> elements() const;
    bool contains(const Element& x) const;
};

/// Subgroup generated by `gens` (brute-force closure).
Subgroup span(Int level, const std::vector<Element>& gens);

struct IsogenyDatum {
    std::string label;
    Int degree = 1;
    Int source_level = 1;
    Int target_level = 1;
    /// Induced map H^1(D_i, Z/N) -> H^1(C, Z/N), entries taken mod N.
    Matrix2 matrix{};
    std::vector<Element> declared_kernel;
    /// Matrix of the dual isogeny, when known.
    std::optional<Matrix2> dual;
};

/// Kernel of the induced map. Throws ModelInconsistency when it disagrees
/// with the declared kernel or its order differs from the degree.
Subgroup gysin_kernel(const IsogenyDatum& iso);

/// Kernel of the matrix action alone, via Smith normal form.
Subgroup matrix_kernel(Int level, const Matrix2& m);

/// dual * matrix == degree * I mod level. Nullopt when no dual is declared.
std::optional<bool> check_duality(const IsogenyDatum& iso);

struct CoverCurve {
    IsogenyDatum isogeny;
    Int index = 2;
};

struct CoverFamilyProblem {
    Int level = 1;
    std::vector<CoverCurve> curves;
    /// Ramification index e means an order-e cyclic cover, so xi_i must
    /// have exact order e_i. When false, xi_i only needs to be nonzero with
    /// order dividing e_i.
    bool require_exact_order = true;

    /// Throws InvalidInput / ModelInconsistency on malformed problems.
    void validate() const;
};

struct CoverFamilySolution {
    bool solvable = false;
    std::vector<Element> witness;
    Int solution_group_order = 0;
    std::vector<std::string> transcript;
};

/// Finds xi_i with sum_i M_i xi_i = 0 mod N under the order constraints, or
/// certifies that none exists. The witness is the lexicographically least
/// valid tuple and is re-verified by verify_witness.
CoverFamilySolution solve_cover_family(const CoverFamilyProblem& problem);

/// Direct summation check of a witness; appends its steps to `transcript`.
bool verify_witness(const CoverFamilyProblem& problem, const std::vector<Element>& witness,
                    std::vector<std::string>* transcript = nullptr);

std::string to_string(const Element& x);
std::string to_string(const Matrix2& m);

} // namespace ramdata::kernel
