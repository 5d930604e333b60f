#pragma once

#include "ramdata/rational.hpp"

#include <vector>

namespace ramdata::kernel {

using Matrix = std::vector<std::vector<Int>>;

/// left * input * right == diagonal, with left/right unimodular and the
/// diagonal entries d_0 | d_1 | ... nonnegative.
struct SmithForm {
    Matrix left;
    Matrix diagonal;
    Matrix right;

    std::vector<Int> invariants() const;
};

SmithForm smith_normal_form(const Matrix& input);

Matrix multiply(const Matrix& a, const Matrix& b);
Matrix identity(std::size_t n);

} // namespace ramdata::kernel
