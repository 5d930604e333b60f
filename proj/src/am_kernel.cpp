#include "ramdata/am_kernel.hpp"

#include "ramdata/errors.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace ramdata::kernel {

namespace {

Int mod(Int a, Int n) {
    Int r = a % n;
    return r < 0 ? r + n : r;
}

} // namespace

TorsionModule::TorsionModule(Int level) : level_(level) {
    if (level < 1) throw InvalidInput("torsion level must be positive");
}

Element TorsionModule::reduce(const Element& x) const { return {mod(x[0], level_), mod(x[1], level_)}; }

Element TorsionModule::add(const Element& x, const Element& y) const { return reduce({x[0] + y[0], x[1] + y[1]}); }

Element TorsionModule::scale(Int k, const Element& x) const {
    return reduce({checked_mul(mod(k, level_), x[0]), checked_mul(mod(k, level_), x[1])});
}

Element TorsionModule::apply(const Matrix2& m, const Element& x) const {
    Element r = reduce(x);
    return reduce({checked_add(checked_mul(m[0][0], r[0]), checked_mul(m[0][1], r[1])),
                   checked_add(checked_mul(m[1][0], r[0]), checked_mul(m[1][1], r[1]))});
}

Int TorsionModule::exact_order(const Element& x) const { return kernel::exact_order(level_, x); }

std::vector<Element> TorsionModule::elements() const {
    std::vector<Element> out;
    out.reserve(static_cast<std::size_t>(level_ * level_));
    for (Int a = 0; a < level_; ++a)
        for (Int b = 0; b < level_; ++b) out.push_back({a, b});
    return out;
}

Int exact_order(Int level, const Element& x) {
    if (level < 1) throw InvalidInput("torsion level must be positive");
    return level / gcd(gcd(level, mod(x[0], level)), mod(x[1], level));
}

std::vector<Element> Subgroup::elements() const {
    TorsionModule mod_n(level);
    std::set<Element> seen{Element{0, 0}};
    std::vector<Element> frontier{Element{0, 0}};
    while (!frontier.empty()) {
        Element x = frontier.back();
        frontier.pop_back();
        for (const auto& g : generators) {
            Element y = mod_n.add(x, g);
            if (seen.insert(y).second) frontier.push_back(y);
        }
    }
    return {seen.begin(), seen.end()};
}

bool Subgroup::contains(const Element& x) const {
    auto els = elements();
    return std::binary_search(els.begin(), els.end(), TorsionModule(level).reduce(x));
}

Subgroup span(Int level, const std::vector<Element>& gens) {
    Subgroup s;
    s.level = level;
    TorsionModule mod_n(level);
    for (const auto& g : gens) s.generators.push_back(mod_n.reduce(g));
    s.order = static_cast<Int>(s.elements().size());
    // Invariant factors via Smith form of the relation-free presentation:
    // the subgroup is the image of Z^k -> (Z/n)^2; its invariants follow
    // from the Smith form of [gens | n I].
    Matrix a(2);
    for (const auto& g : s.generators) {
        a[0].push_back(g[0]);
        a[1].push_back(g[1]);
    }
    a[0].push_back(level);
    a[0].push_back(0);
    a[1].push_back(0);
    a[1].push_back(level);
    auto d = smith_normal_form(a).invariants();
    for (Int di : d) {
        Int f = level / gcd(di, level);
        if (f > 1) s.invariant_factors.push_back(f);
    }
    std::sort(s.invariant_factors.begin(), s.invariant_factors.end());
    return s;
}

Subgroup matrix_kernel(Int level, const Matrix2& m) {
    TorsionModule mod_n(level);
    Matrix a{{mod(m[0][0], level), mod(m[0][1], level)}, {mod(m[1][0], level), mod(m[1][1], level)}};
    SmithForm snf = smith_normal_form(a);
    Subgroup s;
    s.level = level;
    for (std::size_t j = 0; j < 2; ++j) {
        Int g = gcd(snf.diagonal[j][j], level);  // gcd(0, N) = N
        Int step = level / g;
        s.order *= g;
        if (g > 1) {
            s.generators.push_back(mod_n.reduce({checked_mul(snf.right[0][j], step), checked_mul(snf.right[1][j], step)}));
            s.invariant_factors.push_back(g);
        }
    }
    std::sort(s.invariant_factors.begin(), s.invariant_factors.end());
    return s;
}

Subgroup gysin_kernel(const IsogenyDatum& iso) {
    const std::string name = iso.label.empty() ? std::string("isogeny") : iso.label;
    if (iso.degree < 1) throw InvalidInput(name + ": degree must be positive");
    if (iso.source_level < 1) throw InvalidInput(name + ": level must be positive");
    if (iso.source_level != iso.target_level)
        throw ModelInconsistency(name + ": source and target levels differ (" + std::to_string(iso.source_level) +
                                 " vs " + std::to_string(iso.target_level) + ")");
    Subgroup k = matrix_kernel(iso.source_level, iso.matrix);
    if (k.order != iso.degree)
        throw ModelInconsistency(name + ": kernel of " + to_string(iso.matrix) + " has order " +
                                 std::to_string(k.order) + ", degree is " + std::to_string(iso.degree));
    Subgroup declared = span(iso.source_level, iso.declared_kernel);
    if (declared.elements() != k.elements())
        throw ModelInconsistency(name + ": declared kernel (order " + std::to_string(declared.order) +
                                 ") differs from the kernel of " + to_string(iso.matrix));
    return k;
}

std::optional<bool> check_duality(const IsogenyDatum& iso) {
    if (!iso.dual) return std::nullopt;
    const Int n = iso.source_level;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            Int v = 0;
            for (int k = 0; k < 2; ++k) v = checked_add(v, checked_mul((*iso.dual)[i][k], iso.matrix[k][j]));
            Int expected = i == j ? iso.degree : 0;
            if (mod(v - expected, n) != 0) return false;
        }
    return true;
}

void CoverFamilyProblem::validate() const {
    if (level < 1) throw InvalidInput("cover family level must be positive");
    if (curves.empty()) throw InvalidInput("cover family needs at least one curve");
    for (std::size_t i = 0; i < curves.size(); ++i) {
        const auto& c = curves[i];
        if (c.index < 2) throw InvalidInput("curve " + std::to_string(i) + ": index must be >= 2");
        if (level % c.index != 0)
            throw InvalidInput("curve " + std::to_string(i) + ": index " + std::to_string(c.index) +
                               " does not divide level " + std::to_string(level));
        if (c.isogeny.source_level != level)
            throw InvalidInput("curve " + std::to_string(i) + ": isogeny level " +
                               std::to_string(c.isogeny.source_level) + " differs from problem level " +
                               std::to_string(level));
        gysin_kernel(c.isogeny);
    }
}

namespace {

bool order_ok(const CoverFamilyProblem& p, std::size_t i, const Element& x) {
    Int ord = exact_order(p.level, x);
    Int e = p.curves[i].index;
    if (p.require_exact_order) return ord == e;
    return ord > 1 && e % ord == 0;
}

} // namespace

bool verify_witness(const CoverFamilyProblem& problem, const std::vector<Element>& witness,
                    std::vector<std::string>* transcript) {
    auto log = [&](const std::string& s) {
        if (transcript) transcript->push_back(s);
    };
    if (witness.size() != problem.curves.size()) {
        log("verify: witness length " + std::to_string(witness.size()) + " != curve count");
        return false;
    }
    const Int n = problem.level;
    Int s0 = 0, s1 = 0;
    bool ok = true;
    for (std::size_t i = 0; i < witness.size(); ++i) {
        const auto& m = problem.curves[i].isogeny.matrix;
        const auto& x = witness[i];
        Int y0 = m[0][0] * x[0] + m[0][1] * x[1];
        Int y1 = m[1][0] * x[0] + m[1][1] * x[1];
        y0 = ((y0 % n) + n) % n;
        y1 = ((y1 % n) + n) % n;
        s0 += y0;
        s1 += y1;
        Int ord = exact_order(n, x);
        bool good = order_ok(problem, i, x);
        ok = ok && good;
        log("verify: gamma_" + std::to_string(i + 1) + "(xi_" + std::to_string(i + 1) + " = " + to_string(x) +
            ") = " + to_string(Element{y0, y1}) + ", order " + std::to_string(ord) +
            (good ? " ok" : " violates index " + std::to_string(problem.curves[i].index)));
    }
    s0 = ((s0 % n) + n) % n;
    s1 = ((s1 % n) + n) % n;
    bool zero = s0 == 0 && s1 == 0;
    log("verify: sum = " + to_string(Element{s0, s1}) + " mod " + std::to_string(n) + (zero ? " == 0" : " != 0"));
    return ok && zero;
}

CoverFamilySolution solve_cover_family(const CoverFamilyProblem& problem) {
    problem.validate();
    const Int n = problem.level;
    const std::size_t k = problem.curves.size();
    TorsionModule mod_n(n);
    CoverFamilySolution sol;
    auto& tr = sol.transcript;

    Matrix stacked(2);
    for (const auto& c : problem.curves)
        for (int r = 0; r < 2; ++r)
            for (int col = 0; col < 2; ++col) stacked[r].push_back(mod(c.isogeny.matrix[r][col], n));
    std::ostringstream head;
    head << "level N = " << n << ", " << k << " curve(s), indices";
    for (const auto& c : problem.curves) head << ' ' << c.index;
    head << (problem.require_exact_order ? ", exact orders required" : ", orders dividing indices");
    tr.push_back(head.str());

    SmithForm snf = smith_normal_form(stacked);
    const std::size_t cols = 2 * k;
    std::vector<Int> step(cols), count(cols);
    std::ostringstream diag;
    diag << "smith diagonal of stacked map:";
    for (std::size_t j = 0; j < cols; ++j) {
        Int d = j < 2 ? snf.diagonal[j][j] : 0;
        if (j < 2) diag << ' ' << d;
        Int g = gcd(d, n);
        step[j] = n / g;
        count[j] = g;
    }
    tr.push_back(diag.str());

    Int total = 1;
    for (Int c : count) total = checked_mul(total, c);
    sol.solution_group_order = total;
    tr.push_back("solution subgroup of (Z/N)^" + std::to_string(cols) + " has order " + std::to_string(total));
    constexpr Int search_limit = 50'000'000;
    if (total > search_limit) throw InvalidInput("cover family solution space too large to search");

    std::vector<Int> y(cols, 0);
    std::optional<std::vector<Element>> best;
    Int valid = 0;
    for (Int iter = 0; iter < total; ++iter) {
        std::vector<Element> xi(k);
        for (std::size_t i = 0; i < k; ++i) {
            for (int r = 0; r < 2; ++r) {
                Int v = 0;
                for (std::size_t j = 0; j < cols; ++j)
                    v = checked_add(v, checked_mul(snf.right[2 * i + r][j], checked_mul(y[j], step[j])));
                xi[i][r] = mod(v, n);
            }
        }
        bool good = true;
        for (std::size_t i = 0; i < k && good; ++i) good = order_ok(problem, i, xi[i]);
        if (good) {
            ++valid;
            if (!best || xi < *best) best = xi;
        }
        for (std::size_t j = 0; j < cols; ++j) {
            if (++y[j] < count[j]) break;
            y[j] = 0;
        }
    }
    tr.push_back(std::to_string(valid) + " solution(s) satisfy the order constraints");
    if (!best) {
        tr.push_back("UNSOLVABLE: no admissible xi in the kernel of the sum map");
        return sol;
    }
    sol.witness = *best;
    std::string w = "witness:";
    for (std::size_t i = 0; i < k; ++i) w += " xi_" + std::to_string(i + 1) + " = " + to_string(sol.witness[i]);
    tr.push_back(w);
    if (!verify_witness(problem, sol.witness, &tr))
        throw InvariantViolation("cover family witness failed independent verification");
    sol.solvable = true;
    return sol;
}

std::string to_string(const Element& x) { return "(" + std::to_string(x[0]) + "," + std::to_string(x[1]) + ")"; }

std::string to_string(const Matrix2& m) {
    return "[[" + std::to_string(m[0][0]) + "," + std::to_string(m[0][1]) + "],[" + std::to_string(m[1][0]) + "," +
           std::to_string(m[1][1]) + "]]";
}

} // namespace ramdata::kernel
