// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit when
// any criterion fails.

#include "oracles.hpp"
#include "ramdata/elliptic_ruled.hpp"
#include "ramdata/errors.hpp"
#include "ramdata/report.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

using namespace ramdata;
using lattice::SurfaceModel;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            detail += (detail.empty() ? "" : "; ") + what;
        }
    }
};

using Set = std::set<std::string>;

std::string show(const Set& s) {
    std::string out = "{";
    for (const auto& v : s) out += (out.size() > 1 ? "," : "") + v;
    return out + "}";
}

report::ClassificationReport classify(std::string surface, std::string mode = "terminal",
                                      std::optional<std::string> ruling = std::nullopt,
                                      std::optional<Int> torsion = std::nullopt,
                                      std::optional<std::string> box = std::nullopt) {
    report::ClassifyRequest r;
    r.surface = std::move(surface);
    r.mode = std::move(mode);
    r.ruling = std::move(ruling);
    r.torsion = torsion;
    r.box = std::move(box);
    return report::run_classify(r);
}

Set survivors(const report::ClassificationReport& r) {
    auto v = r.surviving_vectors();
    return Set(v.begin(), v.end());
}

const ramification::FilterVerdict* verdict(const report::DatumEntry& d, std::string_view name) {
    for (const auto& v : d.verdicts)
        if (v.filter_name == name) return &v;
    return nullptr;
}

Outcome plane() {
    Outcome o;
    auto got = survivors(classify("p2", "canonical"));
    Set want{"(2,2,2,2,2,2)", "(4,4,4,4)", "(2,6,6,6)"};
    o.require(got == want, "survivors " + show(got));
    o.detail = o.ok ? "survivors " + show(got) : o.detail;
    return o;
}

Outcome quintic() {
    Outcome o;
    auto r = classify("p2", "canonical", std::nullopt, std::nullopt, "=5");
    std::size_t n = 0;
    std::set<std::string> primes;
    for (const auto& row : r.rows)
        for (const auto& d : row.data) {
            ++n;
            o.require(!d.survives, "a quintic datum survives");
            auto* a = verdict(d, ramification::filter_names::artin);
            bool named = a && a->failed() && a->reason.find("p=") != std::string::npos;
            o.require(named, "datum in " + row.vector + " lacks a failing Artin verdict naming a prime");
            if (named) primes.insert(a->reason.substr(0, a->reason.find(' ')));
        }
    o.require(n > 0, "no quintic candidates enumerated");
    o.require(r.outcome == "EMPTY", "outcome " + r.outcome);
    if (o.ok) {
        o.detail = std::to_string(n) + " candidates, 0 survivors; offending primes";
        for (const auto& p : primes) o.detail += " " + p;
    }
    return o;
}

Outcome quadric() {
    Outcome o;
    Set want{"(3,3,3)", "(2,4,4)", "(2,2,2,2)"};
    bool mixed = false;
    std::string mixed_note;
    for (const char* ruling : {"A", "B"}) {
        auto r = classify("quadric", "terminal", std::string(ruling));
        auto got = survivors(r);
        o.require(got == want, std::string("ruling ") + ruling + " survivors " + show(got));
        for (const auto& row : r.rows)
            for (const auto& d : row.data) {
                auto a = d.vectors.at("A"), b = d.vectors.at("B");
                if ((a == "(2,4,4)" && b == "(2,2,2,2)") || (a == "(2,2,2,2)" && b == "(2,4,4)")) {
                    mixed = true;
                    if (mixed_note.empty()) {
                        for (const auto& p : d.pairs) mixed_note += "(" + p.text + "," + std::to_string(p.index) + ")";
                        for (const auto& v : d.verdicts)
                            if (v.failed()) mixed_note += " flagged by " + v.filter_name;
                    }
                }
            }
    }
    o.require(mixed, "no class-level datum with (2,4,4) on one ruling and (2,2,2,2) on the other");
    if (o.ok) o.detail = "both rulings " + show(want) + "; mixed configuration present: " + mixed_note;
    return o;
}

Outcome hirzebruch() {
    Outcome o;
    auto f2 = SurfaceModel::hirzebruch(2);
    auto r = classify("f2", "terminal");
    Set want{"(2,4,4)", "(3,3,3)", "(2,2,2,2)"};
    auto got = survivors(r);
    o.require(got == want, "terminal survivors " + show(got));
    const report::ReportRow* row236 = nullptr;
    for (const auto& row : r.rows)
        if (row.vector == "(2,3,6)") row236 = &row;
    o.require(row236 != nullptr, "(2,3,6) not enumerated");
    if (!row236) return o;
    o.require(!row236->survives, "(2,3,6) survives");
    int node_only = 0;
    for (const auto& d : row236->data) {
        auto* node = verdict(d, ramification::filter_names::node);
        o.require(node && node->failed(), "(2,3,6) datum without a failing node verdict");
        bool others_pass = true;
        for (const auto& v : d.verdicts)
            if (v.failed() && v.filter_name != ramification::filter_names::node) others_pass = false;
        if (!others_pass) continue;
        ++node_only;
        std::map<Int, lattice::DivisorClass> by_index;
        for (const auto& p : d.pairs) {
            auto cls = f2.make_class(p.cls);
            auto it = by_index.find(p.index);
            if (it == by_index.end()) by_index.emplace(p.index, cls);
            else it->second = it->second + cls;
        }
        auto target = f2.make_class({1, 2});
        for (Int e : {2, 3, 6})
            o.require(by_index.count(e) && by_index.at(e) == target, "D^" + std::to_string(e) + " != C_0+2F");
    }
    o.require(node_only > 0, "no (2,3,6) datum excluded by the node filter alone");
    if (o.ok)
        o.detail = "terminal " + show(got) + "; (2,3,6) flagged by node_divisibility, " + std::to_string(node_only) +
                   " data with D^2 == D^3 == D^6 == C_0+2F";
    return o;
}

Outcome split() {
    Outcome o;
    std::map<Int, Set> table{{1, {"(2,2,2,2)", "(3,3,3)", "(2,4,4)", "(2,3,6)"}},
                             {2, {"(2,2,2,2)", "(3,3,3)", "(2,4,4)"}},
                             {3, {"(2,2,2,2)", "(3,3,3)"}},
                             {4, {"(2,2,2,2)"}},
                             {5, {}}};
    for (const auto& [n, want] : table) {
        auto got = survivors(classify("elliptic-split", "terminal", std::nullopt, n));
        o.require(got == want, "n = " + std::to_string(n) + ": " + show(got));
    }
    if (o.ok) o.detail = "n = 1..5 match the converse table";
    return o;
}

Outcome nonsplit0() {
    Outcome o;
    auto r = classify("elliptic-nonsplit-deg0");
    o.require(r.outcome == "EMPTY", "outcome " + r.outcome);
    std::string line;
    for (const auto& l : r.transcript)
        if (l.find("sum (1-1/e_i) D_i == 2C_0") != std::string::npos) line = l;
    o.require(!line.empty(), "violated identity missing from the transcript");
    if (o.ok) o.detail = "EMPTY; transcript: " + line;
    return o;
}

Outcome degree_one() {
    Outcome o;
    auto r = classify("elliptic-deg1");
    o.require(r.rows.size() == 2, std::to_string(r.rows.size()) + " rows");
    auto cases = elliptic::deg1_case_enumerate();
    o.require(cases.size() == 2, std::to_string(cases.size()) + " cases");
    auto s = elliptic::degree1_surface();
    auto anti = -s.canonical();
    std::set<std::vector<lattice::DivisorClass>> classes;
    for (const auto& c : cases) {
        std::vector<lattice::DivisorClass> cls;
        for (const auto& p : c.datum.pairs()) {
            o.require(p.index == 2, "index " + std::to_string(p.index));
            cls.push_back(p.cls);
        }
        classes.insert(cls);
        o.require(c.solution.solvable, c.label + ": no witness");
        if (!c.solution.solvable) continue;
        // re-sum sum_i gamma_i(xi_i) with the oracle's own matrix action
        const Int n = c.problem.level;
        kernel::Element sum{0, 0};
        for (std::size_t i = 0; i < c.problem.curves.size(); ++i) {
            const auto& xi = c.solution.witness.at(i);
            o.require(oracle::order_by_scan(n, xi) == c.problem.curves[i].index, c.label + ": witness order");
            auto y = oracle::act(n, c.problem.curves[i].isogeny.matrix, xi);
            sum = {oracle::mod(sum[0] + y[0], n), oracle::mod(sum[1] + y[1], n)};
        }
        o.require(sum == kernel::Element{0, 0}, c.label + ": witness does not sum to 0");
    }
    std::set<std::vector<lattice::DivisorClass>> want{{Int{2} * anti}, {anti, anti}};
    o.require(classes == want, "classes differ from {-2K} and {-K,-K}");
    if (o.ok) o.detail = "cases {-2K} and {-K,-K}, all indices 2, witnesses re-summed to 0";
    return o;
}

Outcome properties() {
    Outcome o;
    auto p2 = SurfaceModel::projective_plane();
    auto q = SurfaceModel::quadric();
    auto f2 = SurfaceModel::hirzebruch(2);
    int genus_checks = 0;
    for (Int a = 0; a <= 10; ++a) {
        o.require(lattice::arithmetic_genus(p2, p2.make_class({a})) == (a - 1) * (a - 2) / 2, "plane genus");
        for (Int b = 0; b <= 10; ++b) {
            o.require(lattice::arithmetic_genus(q, q.make_class({a, b})) == (a - 1) * (b - 1), "quadric genus");
            o.require(lattice::arithmetic_genus(f2, f2.make_class({a, b})) == -a * a + a * b - b + 1, "F_2 genus");
            genus_checks += 2;
        }
    }

    for (auto [n, d] : std::vector<std::pair<Int, Int>>{{1, 1}, {3, 2}, {2, 1}, {3, 1}}) {
        std::set<std::vector<Int>> got;
        for (const auto& s : ramification::egyptian_solutions(Rational(n, d), 6))
            if (s.back() <= 60) got.insert(s);
        o.require(got == oracle::egyptian({n, d}, 6, 60), "egyptian mismatch at c = " + Rational(n, d).to_string());
    }

    std::mt19937_64 rng(99);
    int kernel_checks = 0;
    for (Int n = 2; n <= 6; ++n) {
        std::vector<Int> indices;
        for (Int e = 2; e <= n; ++e)
            if (n % e == 0) indices.push_back(e);
        std::uniform_int_distribution<Int> entry(0, n - 1);
        std::uniform_int_distribution<std::size_t> pick(0, indices.size() - 1);
        for (std::size_t k = 1; k <= 3; ++k)
            for (int trial = 0; trial < 20; ++trial) {
                kernel::CoverFamilyProblem p;
                p.level = n;
                for (std::size_t i = 0; i < k; ++i)
                    p.curves.push_back(
                        {oracle::isogeny(n, {{{entry(rng), entry(rng)}, {entry(rng), entry(rng)}}}), indices[pick(rng)]});
                auto s = kernel::solve_cover_family(p);
                auto b = oracle::cover_family(p);
                o.require(s.solvable == b.solvable && (!b.solvable || s.witness == b.first),
                          "cover family mismatch at N = " + std::to_string(n));
                ++kernel_checks;
            }
    }

    auto k2 = [](const SurfaceModel& s) { return lattice::intersect(s, s.canonical(), s.canonical()); };
    std::vector<Int> ks{k2(p2), k2(q), k2(f2), k2(elliptic::SplitRuledConfig{1}.surface())};
    o.require(ks == std::vector<Int>{9, 8, 8, 0}, "K^2 values");
    if (o.ok)
        o.detail = std::to_string(genus_checks) + " genus checks, egyptian c in {1,3/2,2,3}, " +
                   std::to_string(kernel_checks) + " cover families, K^2 = {9,8,8,0}";
    return o;
}

Outcome bounds() {
    Outcome o;
    o.require(lattice::minimal_model_bounds(0) == std::set<Int>{0, 1, 2}, "g = 0");
    o.require(lattice::minimal_model_bounds(1) == std::set<Int>{0, -1}, "g = 1");
    bool rejected = false;
    try {
        lattice::minimal_model_bounds(2);
    } catch (const InvalidInput&) {
        rejected = true;
    }
    o.require(rejected, "g = 2 accepted");
    if (o.ok) o.detail = "g=0 -> {0,1,2}, g=1 -> {-1,0}, g=2 rejected";
    return o;
}

Outcome nonminimal() {
    Outcome o;
    std::vector<std::vector<Int>> gram(10, std::vector<Int>(10, 0));
    gram[0][0] = 1;
    std::vector<Int> k(10, 1);
    k[0] = -3;
    std::vector<std::vector<Int>> cone;
    for (int i = 1; i < 10; ++i) {
        gram[i][i] = -1;
        std::vector<Int> e(10, 0);
        e[i] = 1;
        cone.push_back(e);
    }
    auto s = SurfaceModel::generic(gram, k, {}, cone);
    auto anti = -s.canonical();
    ramification::RamificationDatum datum(s, {{anti, 2}, {anti, 2}});
    o.require(lattice::is_numerically_trivial(lattice::k_order(s, datum.pairs())), "K_X not trivial");
    for (const auto& v : ramification::rational_filters(s, datum, ramification::Mode::terminal))
        o.require(v.passed(), v.filter_name + " " + std::string(ramification::to_string(v.status)) + ": " + v.reason);
    if (o.ok) o.detail = "K_X == 0; nef, artin_genus, node_divisibility pass";
    return o;
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"P2 surviving vectors", plane},
        {"P2 quintic exclusion", quintic},
        {"quadric per-ruling vectors and mixed configuration", quadric},
        {"F_2 terminal list and flagged (2,3,6)", hirzebruch},
        {"elliptic split converse table", split},
        {"non-split degree 0 is EMPTY", nonsplit0},
        {"non-split degree 1 cases and witnesses", degree_one},
        {"property suite", properties},
        {"minimal-model bounds", bounds},
        {"non-minimal 9-point blow-up example", nonminimal},
    };
    int failed = 0;
    auto start = std::chrono::steady_clock::now();
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.ok = false;
            o.detail = std::string("exception: ") + e.what();
        }
        if (!o.ok) ++failed;
        std::cout << "AC" << (i + 1) << " " << (o.ok ? "PASS" : "FAIL") << "  " << criteria[i].first << " -- " << o.detail
                  << "\n";
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed in " << ms << " ms\n";
    return failed == 0 ? 0 : 1;
}
