#include "ramdata/egyptian.hpp"

#include "ramdata/errors.hpp"

#include <algorithm>

namespace ramdata::ramification {

namespace {

// Fill `slots` more entries >= min_index whose reciprocals sum to `residual`.
void unit_fractions(int slots, const Rational& residual, Int min_index, IndexMultiset& prefix,
                    std::vector<IndexMultiset>& out) {
    if (slots == 0) {
        if (residual.is_zero()) out.push_back(prefix);
        return;
    }
    if (residual.sign() <= 0) return;
    // 1/e <= residual and slots/e >= residual.
    const Rational inverse = Rational(1) / residual;
    const Int ceil_inverse = inverse.is_integer() ? inverse.num() : inverse.floor() + 1;
    const Int lo = std::max(min_index, ceil_inverse);
    Int hi = (Rational(slots) / residual).floor();
    if (slots == 1) {
        if (inverse.is_integer() && inverse.num() >= lo) {
            prefix.push_back(inverse.num());
            out.push_back(prefix);
            prefix.pop_back();
        }
        return;
    }
    for (Int e = lo; e <= hi; ++e) {
        prefix.push_back(e);
        unit_fractions(slots - 1, residual - Rational(1, e), e, prefix, out);
        prefix.pop_back();
    }
}

} // namespace

std::vector<IndexMultiset> egyptian_solutions_exact(const Rational& target, int terms) {
    if (target.sign() <= 0) throw InvalidInput("egyptian target must be positive");
    if (terms < 1) return {};
    std::vector<IndexMultiset> out;
    IndexMultiset prefix;
    unit_fractions(terms, Rational(terms) - target, 2, prefix, out);
    return out;
}

std::vector<IndexMultiset> egyptian_solutions(const Rational& target, int max_terms) {
    if (max_terms < 1) throw InvalidInput("max_terms must be >= 1");
    std::vector<IndexMultiset> out;
    for (int k = 1; k <= max_terms; ++k) {
        auto part = egyptian_solutions_exact(target, k);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

} // namespace ramdata::ramification
