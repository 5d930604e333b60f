#include "ramdata/lattice.hpp"

#include "ramdata/errors.hpp"
#include "ramdata/hash.hpp"

#include <algorithm>
#include <sstream>

namespace ramdata::lattice {

bool DivisorClass::is_zero() const {
    return std::all_of(coeffs.begin(), coeffs.end(), [](Int c) { return c == 0; });
}

namespace {

void require_compatible(const DivisorClass& a, const DivisorClass& b) {
    if (a.lattice_id != b.lattice_id || a.coeffs.size() != b.coeffs.size())
        throw InvalidInput("lattice mismatch: '" + a.lattice_id + "' vs '" + b.lattice_id + "'");
}

} // namespace

DivisorClass& DivisorClass::operator+=(const DivisorClass& o) {
    require_compatible(*this, o);
    for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] = checked_add(coeffs[i], o.coeffs[i]);
    return *this;
}

DivisorClass& DivisorClass::operator-=(const DivisorClass& o) {
    require_compatible(*this, o);
    for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] = checked_sub(coeffs[i], o.coeffs[i]);
    return *this;
}

DivisorClass operator*(Int k, DivisorClass d) {
    for (auto& c : d.coeffs) c = checked_mul(k, c);
    return d;
}

void QDivisorClass::add_scaled(const Rational& weight, const DivisorClass& d) {
    if (d.lattice_id != lattice_id || d.coeffs.size() != coeffs.size())
        throw InvalidInput("lattice mismatch: '" + lattice_id + "' vs '" + d.lattice_id + "'");
    for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] += weight * Rational(d.coeffs[i]);
}

std::string_view to_string(SurfaceKind kind) {
    switch (kind) {
    case SurfaceKind::projective_plane: return "projective_plane";
    case SurfaceKind::quadric: return "quadric";
    case SurfaceKind::hirzebruch: return "hirzebruch";
    case SurfaceKind::ruled_elliptic: return "ruled_elliptic";
    case SurfaceKind::generic: return "generic";
    }
    return "unknown";
}

SupplyCount SupplyCount::finite(Int n) {
    if (n < 0) throw InvalidInput("curve supply count must be nonnegative");
    return SupplyCount(n);
}

Int SupplyCount::count() const {
    if (is_unbounded()) throw InvariantViolation("count() on unbounded supply");
    return value_;
}

std::string SupplyCount::to_string() const { return is_unbounded() ? "unbounded" : std::to_string(value_); }

SupplyCount CurveSupply::available(Int fiber_degree) const {
    for (const auto& e : entries)
        if (e.fiber_degree == fiber_degree) return e.available;
    return SupplyCount::finite(0);
}

Int CurveSupply::max_fiber_degree() const {
    Int m = 0;
    for (const auto& e : entries) m = std::max(m, e.fiber_degree);
    return m;
}

// ---------------------------------------------------------------------------
// SurfaceModel

namespace {

std::vector<std::vector<Int>> ruled_gram(Int e) { return {{-e, 1}, {1, 0}}; }

} // namespace

SurfaceModel SurfaceModel::projective_plane() {
    SurfaceModel s;
    s.kind_ = SurfaceKind::projective_plane;
    s.id_ = "p2";
    s.gram_ = {{1}};
    s.labels_ = {"H"};
    s.canonical_ = s.make_class({-3});
    s.polarization_ = s.make_class({1});
    s.polarization_label_ = "H";
    s.cone_ = {s.make_class({1})};
    return s;
}

SurfaceModel SurfaceModel::quadric() {
    SurfaceModel s;
    s.kind_ = SurfaceKind::quadric;
    s.id_ = "quadric";
    s.gram_ = {{0, 1}, {1, 0}};
    s.labels_ = {"A", "B"};
    s.canonical_ = s.make_class({-2, -2});
    // A-ruling vector: multiplicities D.B.
    s.polarization_ = s.make_class({0, 1});
    s.polarization_label_ = "A";
    s.cone_ = {s.make_class({1, 0}), s.make_class({0, 1})};
    return s;
}

SurfaceModel SurfaceModel::hirzebruch(Int e) {
    if (e < 0) throw InvalidInput("hirzebruch surface needs e >= 0");
    SurfaceModel s;
    s.kind_ = SurfaceKind::hirzebruch;
    s.e_ = e;
    s.id_ = "hirzebruch(" + std::to_string(e) + ")";
    s.gram_ = ruled_gram(e);
    s.labels_ = {"C_0", "F"};
    s.canonical_ = s.make_class({-2, -(2 + e)});
    s.polarization_ = s.make_class({0, 1});
    s.polarization_label_ = "F";
    s.cone_ = {s.make_class({1, 0}), s.make_class({0, 1})};
    return s;
}

SurfaceModel SurfaceModel::ruled_elliptic(Int e, CurveSupply supply) {
    if (e < -1) throw InvalidInput("ruled surface over an elliptic curve needs e >= -1");
    SurfaceModel s;
    s.kind_ = SurfaceKind::ruled_elliptic;
    s.e_ = e;
    s.id_ = "ruled_elliptic(" + std::to_string(e) + ")";
    s.gram_ = ruled_gram(e);
    s.labels_ = {"C_0", "F"};
    s.canonical_ = s.make_class({-2, -e});
    s.polarization_ = s.make_class({0, 1});
    s.polarization_label_ = "F";
    if (e >= 0)
        s.cone_ = {s.make_class({1, 0}), s.make_class({0, 1})};
    else
        s.cone_ = {s.make_class({2, -1}), s.make_class({0, 1})};
    s.supply_ = std::move(supply);
    return s;
}

SurfaceModel SurfaceModel::generic(std::vector<std::vector<Int>> gram, std::vector<Int> canonical,
                                   std::vector<std::string> labels, std::vector<std::vector<Int>> cone,
                                   std::optional<std::vector<Int>> polarization) {
    SurfaceModel s;
    s.kind_ = SurfaceKind::generic;
    s.gram_ = std::move(gram);
    const std::size_t r = s.gram_.size();
    if (r == 0) throw InvalidInput("generic lattice needs rank >= 1");
    for (const auto& row : s.gram_)
        if (row.size() != r) throw InvalidInput("gram matrix must be square");
    if (canonical.size() != r) throw InvalidInput("canonical class length must equal the rank");
    if (labels.empty())
        for (std::size_t i = 0; i < r; ++i) labels.push_back("e" + std::to_string(i));
    if (labels.size() != r) throw InvalidInput("labels length must equal the rank");
    s.labels_ = std::move(labels);

    std::ostringstream key;
    for (const auto& row : s.gram_)
        for (Int v : row) key << v << ',';
    key << '|';
    for (Int v : canonical) key << v << ',';
    s.id_ = "generic:" + hex64(fnv1a64(key.str())).substr(0, 12);

    s.canonical_ = s.make_class(std::move(canonical));
    std::vector<Int> h(r, 0);
    h[0] = 1;
    s.polarization_ = s.make_class(polarization ? *polarization : h);
    s.polarization_label_ = s.labels_[0];
    if (polarization) s.polarization_label_ = "H";
    for (auto& c : cone) s.cone_.push_back(s.make_class(std::move(c)));
    s.validate();
    return s;
}

void SurfaceModel::validate() const {
    const std::size_t r = gram_.size();
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j)
            if (gram_[i][j] != gram_[j][i]) throw InvalidInput("gram matrix must be symmetric");
    // Adjunction parity: D^2 + D.K is even for every basis vector.
    for (std::size_t i = 0; i < r; ++i) {
        Int v = checked_add(gram_[i][i], intersect(*this, basis(i), canonical_));
        if (v % 2 != 0)
            throw InvalidInput("canonical class violates adjunction parity on basis vector " + labels_[i]);
    }
}

std::vector<DivisorClass> SurfaceModel::nef_generators() const {
    switch (kind_) {
    case SurfaceKind::projective_plane: return {make_class({1})};
    case SurfaceKind::quadric: return {make_class({1, 0}), make_class({0, 1})};
    case SurfaceKind::hirzebruch: return {make_class({0, 1}), make_class({1, e_})};
    case SurfaceKind::ruled_elliptic:
        if (e_ >= 0) return {make_class({0, 1}), make_class({1, e_})};
        return {make_class({0, 1}), make_class({2, -1})};
    case SurfaceKind::generic: return {};
    }
    return {};
}

std::optional<DivisorClass> SurfaceModel::positive_functional() const {
    switch (kind_) {
    case SurfaceKind::projective_plane: return make_class({1});
    case SurfaceKind::quadric: return make_class({1, 1});
    case SurfaceKind::hirzebruch: return make_class({1, e_ + 1});
    case SurfaceKind::ruled_elliptic:
        if (e_ >= 0) return make_class({1, e_ + 1});
        return make_class({1, 1});
    case SurfaceKind::generic: return std::nullopt;
    }
    return std::nullopt;
}

std::vector<std::pair<std::string, DivisorClass>> SurfaceModel::rulings() const {
    if (kind_ == SurfaceKind::quadric) return {{"A", make_class({0, 1})}, {"B", make_class({1, 0})}};
    return {{polarization_label_, polarization_}};
}

SurfaceModel SurfaceModel::with_polarization(DivisorClass h, std::string label) const {
    require_same_lattice(*this, h);
    SurfaceModel s = *this;
    s.polarization_ = std::move(h);
    s.polarization_label_ = std::move(label);
    return s;
}

SurfaceModel SurfaceModel::with_ruling(std::string_view name) const {
    for (auto& [label, h] : rulings())
        if (label == name) return with_polarization(h, label);
    throw InvalidInput("surface '" + id_ + "' has no ruling named '" + std::string(name) + "'");
}

DivisorClass SurfaceModel::make_class(std::vector<Int> coeffs) const {
    if (coeffs.size() != rank())
        throw InvalidInput("class has " + std::to_string(coeffs.size()) + " coefficients, lattice '" + id_ +
                           "' has rank " + std::to_string(rank()));
    return DivisorClass{std::move(coeffs), id_};
}

DivisorClass SurfaceModel::basis(std::size_t i) const {
    std::vector<Int> c(rank(), 0);
    c.at(i) = 1;
    return make_class(std::move(c));
}

DivisorClass SurfaceModel::zero() const { return make_class(std::vector<Int>(rank(), 0)); }

namespace {

template <class T, class IsZero, class IsNeg, class Abs, class IsOne>
std::string format_terms(const std::vector<T>& coeffs, const std::vector<std::string>& labels, IsZero is_zero,
                         IsNeg is_neg, Abs abs, IsOne is_one) {
    std::string out;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (is_zero(coeffs[i])) continue;
        if (is_neg(coeffs[i]))
            out += "-";
        else if (!out.empty())
            out += "+";
        T a = abs(coeffs[i]);
        if (!is_one(a)) {
            std::ostringstream os;
            os << a;
            std::string s = os.str();
            out += s.find('/') != std::string::npos ? "(" + s + ")" : s;
        }
        out += labels[i];
    }
    return out.empty() ? "0" : out;
}

} // namespace

std::string SurfaceModel::format(const DivisorClass& d) const {
    require_same_lattice(*this, d);
    return format_terms(
        d.coeffs, labels_, [](Int v) { return v == 0; }, [](Int v) { return v < 0; },
        [](Int v) { return v < 0 ? -v : v; }, [](Int v) { return v == 1; });
}

std::string SurfaceModel::format(const QDivisorClass& d) const {
    return format_terms(
        d.coeffs, labels_, [](const Rational& v) { return v.is_zero(); },
        [](const Rational& v) { return v.sign() < 0; }, [](const Rational& v) { return v.sign() < 0 ? -v : v; },
        [](const Rational& v) { return v == Rational(1); });
}

// ---------------------------------------------------------------------------

void require_same_lattice(const SurfaceModel& surface, const DivisorClass& d) {
    if (d.lattice_id != surface.id() || d.coeffs.size() != surface.rank())
        throw InvalidInput("class from lattice '" + d.lattice_id + "' used on '" + surface.id() + "'");
}

Int intersect(const SurfaceModel& surface, const DivisorClass& d, const DivisorClass& e) {
    require_same_lattice(surface, d);
    require_same_lattice(surface, e);
    const auto& g = surface.gram();
    Int total = 0;
    for (std::size_t i = 0; i < d.coeffs.size(); ++i) {
        if (d.coeffs[i] == 0) continue;
        Int row = 0;
        for (std::size_t j = 0; j < e.coeffs.size(); ++j) row = checked_add(row, checked_mul(g[i][j], e.coeffs[j]));
        total = checked_add(total, checked_mul(d.coeffs[i], row));
    }
    return total;
}

Int arithmetic_genus(const SurfaceModel& surface, const DivisorClass& d) {
    Int twice = checked_add(intersect(surface, d, d), intersect(surface, d, surface.canonical()));
    if (twice % 2 != 0)
        throw InvariantViolation("non-integral arithmetic genus for " + surface.format(d) + " on " + surface.id());
    return 1 + twice / 2;
}

QDivisorClass k_order(const SurfaceModel& surface, std::span<const RamifiedCurve> curves) {
    QDivisorClass k{{}, surface.id()};
    for (Int c : surface.canonical().coeffs) k.coeffs.emplace_back(c);
    for (const auto& rc : curves) {
        require_same_lattice(surface, rc.cls);
        if (rc.index < 2) throw InvalidInput("ramification index must be >= 2");
        k.add_scaled(Rational(1) - Rational(1, rc.index), rc.cls);
    }
    return k;
}

bool is_numerically_trivial(const QDivisorClass& d) {
    return std::all_of(d.coeffs.begin(), d.coeffs.end(), [](const Rational& r) { return r.is_zero(); });
}

std::set<Int> minimal_model_bounds(Int genus) {
    if (genus < 0) throw InvalidInput("genus must be nonnegative");
    if (genus == 0) return {0, 1, 2};
    if (genus == 1) return {0, -1};
    throw InvalidInput("base genus " + std::to_string(genus) + " is outside the classification: K^2 = 8(1-g) = " +
                       std::to_string(8 * (1 - genus)) + " < 0");
}

namespace {

// Irreducible classes aC_0 + bF on a geometrically ruled surface.
bool ruled_irreducible(Int e, Int a, Int b, bool elliptic_base) {
    if (a == 0) return b == 1;
    if (a < 0) return false;
    if (a == 1 && b == 0) return true;
    if (elliptic_base && e < 0) return 2 * b >= -a;
    return b >= a * e;
}

} // namespace

bool is_positive_multiple(const DivisorClass& d, const DivisorClass& v) {
    if (d.coeffs.size() != v.coeffs.size() || d.is_zero() || v.is_zero()) return false;
    for (std::size_t i = 0; i < d.coeffs.size(); ++i)
        for (std::size_t j = i + 1; j < d.coeffs.size(); ++j)
            if (checked_mul(d.coeffs[i], v.coeffs[j]) != checked_mul(d.coeffs[j], v.coeffs[i])) return false;
    for (std::size_t i = 0; i < d.coeffs.size(); ++i) {
        if (d.coeffs[i] == 0 && v.coeffs[i] == 0) continue;
        return (d.coeffs[i] > 0) == (v.coeffs[i] > 0);
    }
    return false;
}

bool is_irreducible_class(const SurfaceModel& surface, const DivisorClass& d) {
    require_same_lattice(surface, d);
    if (d.is_zero()) return false;
    const auto& c = d.coeffs;
    switch (surface.kind()) {
    case SurfaceKind::projective_plane: return c[0] >= 1;
    case SurfaceKind::quadric:
        return (c[0] == 1 && c[1] == 0) || (c[0] == 0 && c[1] == 1) || (c[0] >= 1 && c[1] >= 1);
    case SurfaceKind::hirzebruch: return ruled_irreducible(surface.invariant_e(), c[0], c[1], false);
    case SurfaceKind::ruled_elliptic: {
        const auto& supply = surface.supply();
        if (supply && is_positive_multiple(d, -surface.canonical())) {
            Int a = intersect(surface, d, surface.basis(1));
            return !supply->available(a).is_zero();
        }
        return ruled_irreducible(surface.invariant_e(), c[0], c[1], true);
    }
    case SurfaceKind::generic: return true;
    }
    return false;
}

bool is_rigid_class(const SurfaceModel& surface, const DivisorClass& d) { return intersect(surface, d, d) < 0; }

} // namespace ramdata::lattice
