#include "ramdata/elliptic_ruled.hpp"

#include "ramdata/errors.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace ramdata::elliptic {

using lattice::DivisorClass;
using lattice::intersect;
using lattice::RamifiedCurve;
using ramification::VerdictStatus;

SurfaceModel SplitRuledConfig::surface() const { return SurfaceModel::ruled_elliptic(0, split_supply(*this)); }

FilterVerdict extremality_filter(const SurfaceModel& surface, const RamificationDatum& datum) {
    FilterVerdict v{std::string(ramification::filter_names::extremality), VerdictStatus::pass, ""};
    if (surface.kind() != lattice::SurfaceKind::ruled_elliptic) {
        v.status = VerdictStatus::not_applicable;
        v.reason = "only meaningful over an elliptic base";
        return v;
    }
    const DivisorClass anti = -surface.canonical();
    const auto& ps = datum.pairs();
    for (const auto& p : ps) {
        if (!lattice::is_positive_multiple(p.cls, anti)) {
            v.status = VerdictStatus::fail;
            v.reason = surface.format(p.cls) + " is not a positive multiple of -K = " + surface.format(anti);
            return v;
        }
        Int g = lattice::arithmetic_genus(surface, p.cls);
        if (g != 1) {
            v.status = VerdictStatus::fail;
            v.reason = surface.format(p.cls) + " has p_a = " + std::to_string(g) + ", not elliptic";
            return v;
        }
    }
    for (std::size_t i = 0; i < ps.size(); ++i)
        for (std::size_t j = i + 1; j < ps.size(); ++j) {
            Int m = intersect(surface, ps[i].cls, ps[j].cls);
            if (m != 0) {
                v.status = VerdictStatus::fail;
                v.reason = surface.format(ps[i].cls) + " . " + surface.format(ps[j].cls) + " = " + std::to_string(m) +
                           ", curves not disjoint";
                return v;
            }
        }
    v.reason = "all curves elliptic, disjoint and proportional to -K";
    return v;
}

bool split_section_test(const SplitRuledConfig& config, Int a, Int p) {
    if (a < 1) throw InvalidInput("fibre degree must be >= 1");
    const Int n = config.torsion;
    if (n < 1) throw InvalidInput("torsion order must be >= 1");
    const Int minus_p = ((-p) % n + n) % n;
    for (Int i = 0; i <= a; ++i)
        if (i % n == minus_p) return true;
    return false;
}

CurveSupply split_supply(const SplitRuledConfig& config) {
    const Int n = config.torsion;
    if (n < 1) throw InvalidInput("torsion order must be >= 1");
    CurveSupply s;
    s.rule = "split";
    s.torsion = n;
    for (Int a = 1; a <= max_fiber_degree; ++a) {
        SupplyCount c = SupplyCount::finite(0);
        if (a == 1)
            c = n == 1 ? SupplyCount::unbounded() : SupplyCount::finite(2);
        else if (a % n == 0)
            c = SupplyCount::unbounded();
        s.entries.push_back({a, c});
    }
    s.notes.push_back(n == 1 ? "L trivial: every |aC_0| is a base-point-free pencil or larger"
                             : "sections: C_0 (from O) and C_1 (from L)");
    s.notes.push_back("a-sections with a >= 2 exist iff n | a (model rule)");
    return s;
}

CurveSupply nonsplit_degree0_supply(bool allow_two_sections) {
    CurveSupply s;
    s.rule = "nonsplit-deg0";
    s.entries.push_back({1, SupplyCount::finite(1)});
    s.entries.push_back({2, allow_two_sections ? SupplyCount::unbounded() : SupplyCount::finite(0)});
    s.entries.push_back({3, SupplyCount::finite(0)});
    s.entries.push_back({4, SupplyCount::finite(0)});
    s.notes.push_back("the only curve numerically proportional to -K is the section C_0");
    if (allow_two_sections) s.notes.push_back("counterfactual: unbounded family of 2-sections added");
    return s;
}

CurveSupply degree1_supply() {
    CurveSupply s;
    s.rule = "nonsplit-deg1";
    s.entries.push_back({2, SupplyCount::finite(3)});
    s.entries.push_back({4, SupplyCount::unbounded()});
    s.notes.push_back("class -K: images of the three degree-2 isogenies C_i -> C");
    s.notes.push_back("class -2K: smooth members coming from a degree-4 composite isogeny");
    return s;
}

bool SupplyDatum::survives() const {
    return std::none_of(verdicts.begin(), verdicts.end(), [](const FilterVerdict& v) { return v.failed(); });
}

namespace {

void partitions(Int n, Int max_part, std::vector<Int>& prefix, std::vector<std::vector<Int>>& out) {
    if (n == 0) {
        out.push_back(prefix);
        return;
    }
    for (Int part = std::min(n, max_part); part >= 1; --part) {
        prefix.push_back(part);
        partitions(n - part, part, prefix, out);
        prefix.pop_back();
    }
}

std::vector<std::vector<Int>> partitions(Int n) {
    std::vector<std::vector<Int>> out;
    std::vector<Int> prefix;
    partitions(n, n, prefix, out);
    return out;
}

} // namespace

std::vector<SplitCaseRow> enumerate_supply_cases(const SurfaceModel& surface) {
    if (surface.kind() != lattice::SurfaceKind::ruled_elliptic || !surface.supply())
        throw InvalidInput("supply enumeration needs a ruled surface over an elliptic curve with a curve supply");
    const CurveSupply& supply = *surface.supply();
    const DivisorClass anti = -surface.canonical();
    const DivisorClass fibre = surface.basis(1);
    const Int target = intersect(surface, anti, fibre);  // -K.F

    // Class of fibre degree a proportional to -K, when integral and supplied.
    auto class_of_degree = [&](Int a) -> std::optional<DivisorClass> {
        std::vector<Int> c;
        for (Int k : anti.coeffs) {
            if (checked_mul(a, k) % target != 0) return std::nullopt;
            c.push_back(a * k / target);
        }
        if (supply.available(a).is_zero()) return std::nullopt;
        return surface.make_class(std::move(c));
    };

    std::vector<SplitCaseRow> rows;
    for (const auto& entries : ramification::egyptian_solutions(Rational(target), static_cast<int>(2 * target))) {
        // sum D_i.F >= 3
        if (entries.size() < 3) continue;
        SplitCaseRow row;
        row.vector.entries = entries;

        std::map<Int, Int> multiplicity;
        for (Int e : entries) ++multiplicity[e];
        std::vector<std::pair<Int, std::vector<std::vector<Int>>>> choices;
        bool possible = true;
        for (auto [e, m] : multiplicity) {
            std::vector<std::vector<Int>> usable;
            for (auto& part : partitions(m)) {
                bool ok = std::all_of(part.begin(), part.end(), [&](Int a) { return class_of_degree(a).has_value(); });
                if (ok) usable.push_back(part);
            }
            if (usable.empty()) possible = false;
            choices.emplace_back(e, std::move(usable));
        }

        if (possible) {
            std::vector<std::size_t> pick(choices.size(), 0);
            while (true) {
                std::vector<RamifiedCurve> pairs;
                std::map<Int, Int> usage;
                for (std::size_t g = 0; g < choices.size(); ++g)
                    for (Int a : choices[g].second[pick[g]]) {
                        pairs.push_back({*class_of_degree(a), choices[g].first});
                        ++usage[a];
                    }
                SupplyDatum sd;
                sd.datum = RamificationDatum(surface, pairs);
                sd.supply_consistent = true;
                std::string note;
                for (auto [a, used] : usage) {
                    SupplyCount have = supply.available(a);
                    if (!note.empty()) note += ", ";
                    note += std::to_string(used) + " of " + have.to_string() + " curve(s) of fibre degree " +
                            std::to_string(a);
                    if (!have.allows(used)) sd.supply_consistent = false;
                }
                sd.supply_note = note;
                auto k = lattice::k_order(surface, sd.datum.pairs());
                if (!lattice::is_numerically_trivial(k))
                    throw InvariantViolation("supply enumeration produced nontrivial K_X");
                sd.verdicts.push_back(ramification::nef_verdict(surface));
                sd.verdicts.push_back(ramification::artin_filter(surface, sd.datum));
                sd.verdicts.push_back(ramification::node_divisibility_filter(surface, sd.datum));
                sd.verdicts.push_back(extremality_filter(surface, sd.datum));
                sd.verdicts.push_back({"curve_supply", sd.supply_consistent ? VerdictStatus::pass : VerdictStatus::fail,
                                       note});
                row.data.push_back(std::move(sd));

                std::size_t g = 0;
                while (g < pick.size() && ++pick[g] == choices[g].second.size()) {
                    pick[g] = 0;
                    ++g;
                }
                if (g == pick.size()) break;
            }
        }
        std::sort(row.data.begin(), row.data.end(),
                  [](const SupplyDatum& a, const SupplyDatum& b) { return a.datum < b.datum; });
        row.realizable = std::any_of(row.data.begin(), row.data.end(), [](const SupplyDatum& d) { return d.survives(); });
        rows.push_back(std::move(row));
    }
    std::sort(rows.begin(), rows.end(), [](const SplitCaseRow& a, const SplitCaseRow& b) { return a.vector < b.vector; });
    return rows;
}

std::vector<SplitCaseRow> enumerate_split_case(const SplitRuledConfig& config) {
    if (config.torsion < 1) throw InvalidInput("torsion order must be >= 1");
    return enumerate_supply_cases(config.surface());
}

ClassificationResult nonsplit_deg0_check(bool allow_two_sections) {
    const SurfaceModel surface = SurfaceModel::ruled_elliptic(0, nonsplit_degree0_supply(allow_two_sections));
    ClassificationResult result;
    auto& tr = result.transcript;
    tr.push_back("bundle: non-split extension of O_C by O_C; e = 0, K == " + surface.format(surface.canonical()));
    for (const auto& e : surface.supply()->entries)
        tr.push_back("supply: fibre degree " + std::to_string(e.fiber_degree) + ": " + e.available.to_string());
    for (const auto& n : surface.supply()->notes) tr.push_back("supply note: " + n);
    result.rows = enumerate_supply_cases(surface);
    for (const auto& row : result.rows) {
        tr.push_back(row.vector.to_string() + ": " +
                     (row.realizable ? "realizable" : "no supply-consistent curve assignment"));
        if (row.realizable) result.empty = false;
    }
    if (result.empty)
        tr.push_back("EMPTY: sum (1-1/e_i) D_i == 2C_0 is violated; C_0 is the only available curve and "
                     "(1-1/e) C_0 < 2C_0 for every index e");
    return result;
}

SurfaceModel degree1_surface() { return SurfaceModel::ruled_elliptic(-1, degree1_supply()); }

namespace {

using kernel::IsogenyDatum;

// The three degree-2 isogenies onto C, seen on 2-torsion: each kills one of
// the three order-2 subgroups of (Z/2)^2.
IsogenyDatum two_isogeny(int which) {
    IsogenyDatum iso;
    iso.degree = 2;
    iso.source_level = iso.target_level = 2;
    switch (which % 3) {
    case 0:
        iso.label = "g_1";
        iso.matrix = {{{0, 0}, {0, 1}}};
        iso.declared_kernel = {{1, 0}};
        iso.dual = kernel::Matrix2{{{1, 0}, {0, 0}}};
        break;
    case 1:
        iso.label = "g_2";
        iso.matrix = {{{1, 0}, {0, 0}}};
        iso.declared_kernel = {{0, 1}};
        iso.dual = kernel::Matrix2{{{0, 0}, {0, 1}}};
        break;
    default:
        iso.label = "g_3";
        iso.matrix = {{{1, 1}, {0, 0}}};
        iso.declared_kernel = {{1, 1}};
        iso.dual = kernel::Matrix2{{{0, 1}, {0, 1}}};
        break;
    }
    return iso;
}

// h = g f of degree 4, killing all of the 2-torsion.
IsogenyDatum composite_four_isogeny() {
    IsogenyDatum iso;
    iso.label = "h = g f";
    iso.degree = 4;
    iso.source_level = iso.target_level = 2;
    iso.matrix = {{{0, 0}, {0, 0}}};
    iso.declared_kernel = {{1, 0}, {0, 1}};
    iso.dual = kernel::Matrix2{{{0, 0}, {0, 0}}};
    return iso;
}

} // namespace

std::vector<DegreeOneCase> deg1_case_enumerate() {
    const SurfaceModel surface = degree1_surface();
    const DivisorClass anti = -surface.canonical();
    const Int anti_fibre = intersect(surface, anti, surface.basis(1));
    std::vector<DegreeOneCase> cases;
    for (const auto& row : enumerate_supply_cases(surface)) {
        for (const auto& sd : row.data) {
            if (!sd.survives()) continue;
            DegreeOneCase c;
            c.datum = sd.datum;
            c.verdicts = sd.verdicts;
            c.problem.level = 1;
            int next_two_isogeny = 0;
            for (const auto& p : sd.datum.pairs()) {
                Int m = intersect(surface, p.cls, surface.basis(1)) / anti_fibre;
                c.multiples.push_back(m);
                c.problem.level = lcm(c.problem.level, p.index);
            }
            for (std::size_t i = 0; i < sd.datum.pairs().size(); ++i) {
                kernel::CoverCurve curve;
                curve.index = sd.datum.pairs()[i].index;
                curve.isogeny = c.multiples[i] == 1 ? two_isogeny(next_two_isogeny++) : composite_four_isogeny();
                c.problem.curves.push_back(curve);
            }
            auto multiple = [](Int m) { return m == 1 ? std::string("-K") : "-" + std::to_string(m) + "K"; };
            if (c.multiples.size() == 1)
                c.label = "single curve D == " + multiple(c.multiples[0]);
            else if (std::all_of(c.multiples.begin(), c.multiples.end(), [&](Int m) { return m == c.multiples[0]; }))
                c.label = std::to_string(c.multiples.size()) + " curves D_i == " + multiple(c.multiples[0]);
            else
                c.label = std::to_string(c.multiples.size()) + " curves of mixed classes";
            c.solution = kernel::solve_cover_family(c.problem);
            cases.push_back(std::move(c));
        }
    }
    std::sort(cases.begin(), cases.end(),
              [](const DegreeOneCase& a, const DegreeOneCase& b) { return a.datum < b.datum; });
    return cases;
}

} // namespace ramdata::elliptic
