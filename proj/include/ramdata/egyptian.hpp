#pragma once

#include "ramdata/rational.hpp"

#include <vector>

namespace ramdata::ramification {

using IndexMultiset = std::vector<Int>;

/// Every nondecreasing (e_1..e_k), e_i >= 2, with sum (1 - 1/e_i) = target and
/// exactly `terms` entries. Sorted lexicographically.
std::vector<IndexMultiset> egyptian_solutions_exact(const Rational& target, int terms);

/// Union of egyptian_solutions_exact over 1 <= k <= max_terms, ordered by
/// length then lexicographically.
std::vector<IndexMultiset> egyptian_solutions(const Rational& target, int max_terms);

} // namespace ramdata::ramification
