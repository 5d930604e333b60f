#pragma once

// Independent brute-force oracles shared by the unit tests and the
// acceptance runner. They use plain integer scans and none of the engine's
// search code.

#include "ramdata/am_kernel.hpp"

#include <numeric>
#include <set>
#include <vector>

namespace oracle {

using ramdata::Int;
using ramdata::kernel::CoverFamilyProblem;
using ramdata::kernel::Element;
using ramdata::kernel::IsogenyDatum;
using ramdata::kernel::Matrix2;

struct Frac {
    Int n = 0, d = 1;
};

inline int cmp(Frac a, Frac b) {
    __extension__ using Wide = __int128;
    Wide l = Wide(a.n) * b.d, r = Wide(b.n) * a.d;
    return (l > r) - (l < r);
}

// a + m (1 - 1/e)
inline Frac add_weight(Frac a, Int m, Int e) {
    Int n = a.n * e + m * (e - 1) * a.d, d = a.d * e;
    Int g = std::gcd(n, d);
    return {n / g, d / g};
}

namespace detail {
inline void egyptian_scan(Frac target, int slots, Int lo, Int max_e, Frac acc, std::vector<Int>& cur,
                          std::set<std::vector<Int>>& out) {
    int c = cmp(acc, target);
    if (c == 0 && !cur.empty()) out.insert(cur);
    if (c >= 0 || slots == 0) return;
    if (cmp(Frac{acc.n + slots * acc.d, acc.d}, target) < 0) return;  // every weight is < 1
    for (Int e = lo; e <= max_e; ++e) {
        Frac next = add_weight(acc, 1, e);
        if (cmp(next, target) > 0) break;  // weights grow with e
        cur.push_back(e);
        egyptian_scan(target, slots - 1, e, max_e, next, cur, out);
        cur.pop_back();
    }
}
} // namespace detail

/// Nondecreasing tuples (e_1..e_k), 1 <= k <= max_terms, 2 <= e_i <= max_e,
/// with sum (1 - 1/e_i) = target.
inline std::set<std::vector<Int>> egyptian(Frac target, int max_terms, Int max_e) {
    std::set<std::vector<Int>> out;
    std::vector<Int> cur;
    detail::egyptian_scan(target, max_terms, 2, max_e, {0, 1}, cur, out);
    return out;
}

inline Int mod(Int a, Int n) { return ((a % n) + n) % n; }

inline Element act(Int n, const Matrix2& m, const Element& x) {
    return {mod(m[0][0] * x[0] + m[0][1] * x[1], n), mod(m[1][0] * x[0] + m[1][1] * x[1], n)};
}

inline Int order_by_scan(Int n, const Element& x) {
    for (Int k = 1; k <= n; ++k)
        if (mod(k * x[0], n) == 0 && mod(k * x[1], n) == 0) return k;
    return -1;
}

inline std::vector<Element> kernel_by_scan(Int n, const Matrix2& m) {
    std::vector<Element> out;
    for (Int a = 0; a < n; ++a)
        for (Int b = 0; b < n; ++b)
            if (act(n, m, {a, b}) == Element{0, 0}) out.push_back({a, b});
    return out;
}

/// Isogeny datum whose declared kernel and degree come from a scan.
inline IsogenyDatum isogeny(Int n, const Matrix2& m, std::string label = "phi") {
    IsogenyDatum iso;
    iso.label = std::move(label);
    iso.source_level = iso.target_level = n;
    iso.matrix = m;
    iso.declared_kernel = kernel_by_scan(n, m);
    iso.degree = static_cast<Int>(iso.declared_kernel.size());
    return iso;
}

struct CoverScan {
    bool solvable = false;
    std::vector<Element> first;  // lexicographically least valid tuple
    Int solutions = 0;           // of sum M_i xi_i = 0, ignoring orders
};

inline CoverScan cover_family(const CoverFamilyProblem& p) {
    const Int n = p.level;
    const std::size_t k = p.curves.size();
    CoverScan b;
    std::vector<Element> xi(k, Element{0, 0});
    std::vector<Int> digits(2 * k, 0);
    while (true) {
        for (std::size_t i = 0; i < k; ++i) xi[i] = {digits[2 * i], digits[2 * i + 1]};
        Element sum{0, 0};
        for (std::size_t i = 0; i < k; ++i) {
            auto y = act(n, p.curves[i].isogeny.matrix, xi[i]);
            sum = {mod(sum[0] + y[0], n), mod(sum[1] + y[1], n)};
        }
        if (sum == Element{0, 0}) {
            ++b.solutions;
            bool ok = true;
            for (std::size_t i = 0; i < k; ++i) {
                Int ord = order_by_scan(n, xi[i]);
                Int e = p.curves[i].index;
                ok &= p.require_exact_order ? ord == e : (ord > 1 && e % ord == 0);
            }
            if (ok && !b.solvable) {
                b.solvable = true;
                b.first = xi;
            }
        }
        // odometer, last digit fastest
        std::size_t d = 2 * k;
        while (d > 0 && ++digits[d - 1] == n) digits[--d] = 0;
        if (d == 0) break;
    }
    return b;
}

} // namespace oracle
