#pragma once

// Divisor arithmetic on the Neron-Severi lattices of the surfaces that can
// carry numerically Calabi-Yau orders.

#include "ramdata/rational.hpp"

#include <compare>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ramdata::lattice {

/// Integral class in a fixed numerical-equivalence basis.
struct DivisorClass {
    std::vector<Int> coeffs;
    std::string lattice_id;

    std::size_t rank() const { return coeffs.size(); }
    bool is_zero() const;

    DivisorClass& operator+=(const DivisorClass& o);
    DivisorClass& operator-=(const DivisorClass& o);
    friend DivisorClass operator+(DivisorClass a, const DivisorClass& b) { return a += b; }
    friend DivisorClass operator-(DivisorClass a, const DivisorClass& b) { return a -= b; }
    friend DivisorClass operator*(Int k, DivisorClass d);
    DivisorClass operator-() const { return Int{-1} * *this; }

    friend bool operator==(const DivisorClass&, const DivisorClass&) = default;
    friend auto operator<=>(const DivisorClass&, const DivisorClass&) = default;
};

/// Class with exact rational coefficients (K_X lives here).
struct QDivisorClass {
    std::vector<Rational> coeffs;
    std::string lattice_id;

    /// this += weight * d
    void add_scaled(const Rational& weight, const DivisorClass& d);
    friend bool operator==(const QDivisorClass&, const QDivisorClass&) = default;
};

/// One ramification curve class together with its ramification index.
struct RamifiedCurve {
    DivisorClass cls;
    Int index = 2;

    friend bool operator==(const RamifiedCurve&, const RamifiedCurve&) = default;
    friend auto operator<=>(const RamifiedCurve&, const RamifiedCurve&) = default;
};

enum class SurfaceKind { projective_plane, quadric, hirzebruch, ruled_elliptic, generic };

std::string_view to_string(SurfaceKind kind);

/// A nonnegative curve count, or unbounded (a positive-dimensional family).
class SupplyCount {
public:
    static SupplyCount unbounded() { return SupplyCount(-1); }
    static SupplyCount finite(Int n);

    bool is_unbounded() const { return value_ < 0; }
    bool is_zero() const { return value_ == 0; }
    /// Count for finite supplies; throws for unbounded ones.
    Int count() const;
    /// True when k distinct curves can be drawn.
    bool allows(Int k) const { return is_unbounded() || k <= value_; }
    std::string to_string() const;

    friend bool operator==(const SupplyCount&, const SupplyCount&) = default;

private:
    explicit SupplyCount(Int v) : value_(v) {}
    Int value_;
};

/// How many irreducible curves of fibre degree a exist in the classes
/// numerically proportional to -K on a ruled surface over an elliptic curve.
struct CurveSupplyEntry {
    Int fiber_degree = 1;
    SupplyCount available = SupplyCount::finite(0);

    friend bool operator==(const CurveSupplyEntry&, const CurveSupplyEntry&) = default;
};

struct CurveSupply {
    std::string rule;  // "split", "nonsplit-deg0", "nonsplit-deg1"
    Int torsion = 0;   // order of L in Pic^0(C) for the split rule, 0 otherwise
    std::vector<CurveSupplyEntry> entries;
    std::vector<std::string> notes;

    /// Zero for fibre degrees without an entry.
    SupplyCount available(Int fiber_degree) const;
    Int max_fiber_degree() const;
};

class SurfaceModel {
public:
    static SurfaceModel projective_plane();
    static SurfaceModel quadric();
    /// F_e = P(O + O(-e)) over P^1, e >= 0.
    static SurfaceModel hirzebruch(Int e);
    /// Geometrically ruled surface over an elliptic curve with invariant e >= -1.
    static SurfaceModel ruled_elliptic(Int e, CurveSupply supply);
    /// User lattice. Every nonzero class counts as irreducible.
    /// `cone` lists the extremal curve classes used by the nef check.
    static SurfaceModel generic(std::vector<std::vector<Int>> gram, std::vector<Int> canonical,
                                std::vector<std::string> labels = {},
                                std::vector<std::vector<Int>> cone = {},
                                std::optional<std::vector<Int>> polarization = std::nullopt);

    SurfaceKind kind() const { return kind_; }
    /// e of F_e / ruled_elliptic(e); zero elsewhere.
    Int invariant_e() const { return e_; }
    std::size_t rank() const { return gram_.size(); }
    const std::string& id() const { return id_; }
    const std::vector<std::vector<Int>>& gram() const { return gram_; }
    const DivisorClass& canonical() const { return canonical_; }
    const DivisorClass& polarization() const { return polarization_; }
    const std::string& polarization_label() const { return polarization_label_; }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::vector<DivisorClass>& cone_generators() const { return cone_; }
    const std::optional<CurveSupply>& supply() const { return supply_; }

    /// Surfaces on which the Artin genus bound applies.
    bool is_rational() const { return kind_ != SurfaceKind::ruled_elliptic; }

    /// Generators of the nef cone (D.N >= 0 for every irreducible D); empty
    /// for generic lattices.
    std::vector<DivisorClass> nef_generators() const;

    /// A class A with D.A >= 1 for every irreducible D, when one is known.
    std::optional<DivisorClass> positive_functional() const;

    /// Named polarizations. The quadric has two: "A" (multiplicities D.B)
    /// and "B" (multiplicities D.A).
    std::vector<std::pair<std::string, DivisorClass>> rulings() const;
    SurfaceModel with_polarization(DivisorClass h, std::string label) const;
    /// Selects one of rulings() by name.
    SurfaceModel with_ruling(std::string_view name) const;

    DivisorClass make_class(std::vector<Int> coeffs) const;
    DivisorClass basis(std::size_t i) const;
    DivisorClass zero() const;

    /// "2C_0+4F" style rendering.
    std::string format(const DivisorClass& d) const;
    std::string format(const QDivisorClass& d) const;

private:
    SurfaceModel() = default;
    void validate() const;

    SurfaceKind kind_ = SurfaceKind::generic;
    Int e_ = 0;
    std::string id_;
    std::vector<std::vector<Int>> gram_;
    DivisorClass canonical_;
    DivisorClass polarization_;
    std::string polarization_label_;
    std::vector<std::string> labels_;
    std::vector<DivisorClass> cone_;
    std::optional<CurveSupply> supply_;
};

/// Throws InvalidInput unless d lives on `surface`.
void require_same_lattice(const SurfaceModel& surface, const DivisorClass& d);

Int intersect(const SurfaceModel& surface, const DivisorClass& d, const DivisorClass& e);

/// p_a(D) = 1 + (D^2 + D.K)/2.
Int arithmetic_genus(const SurfaceModel& surface, const DivisorClass& d);

/// K_X = K + sum (1 - 1/e_i) D_i.
QDivisorClass k_order(const SurfaceModel& surface, std::span<const RamifiedCurve> curves);

bool is_numerically_trivial(const QDivisorClass& d);

/// Admissible invariants e of a minimal model ruled over a curve of genus g.
std::set<Int> minimal_model_bounds(Int genus);

bool is_irreducible_class(const SurfaceModel& surface, const DivisorClass& d);

/// Classes with negative self-intersection carry a single curve.
bool is_rigid_class(const SurfaceModel& surface, const DivisorClass& d);

/// True when d = t * v for some rational t > 0.
bool is_positive_multiple(const DivisorClass& d, const DivisorClass& v);

} // namespace ramdata::lattice
