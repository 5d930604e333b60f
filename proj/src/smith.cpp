#include "ramdata/smith.hpp"

#include "ramdata/errors.hpp"

#include <algorithm>
#include <cstdlib>
#include <utility>

namespace ramdata::kernel {

Matrix identity(std::size_t n) {
    Matrix m(n, std::vector<Int>(n, 0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
    if (a.empty() || b.empty()) return {};
    const std::size_t rows = a.size(), inner = b.size(), cols = b[0].size();
    if (a[0].size() != inner) throw InvalidInput("matrix dimension mismatch");
    Matrix out(rows, std::vector<Int>(cols, 0));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t k = 0; k < inner; ++k)
            for (std::size_t j = 0; j < cols; ++j)
                out[i][j] = checked_add(out[i][j], checked_mul(a[i][k], b[k][j]));
    return out;
}

std::vector<Int> SmithForm::invariants() const {
    std::vector<Int> d;
    for (std::size_t i = 0; i < diagonal.size() && i < (diagonal.empty() ? 0 : diagonal[0].size()); ++i)
        d.push_back(diagonal[i][i]);
    return d;
}

namespace {

struct Reducer {
    Matrix a, u, v;
    std::size_t m, n;

    void swap_rows(std::size_t i, std::size_t j) {
        std::swap(a[i], a[j]);
        std::swap(u[i], u[j]);
    }
    void swap_cols(std::size_t i, std::size_t j) {
        for (auto& row : a) std::swap(row[i], row[j]);
        for (auto& row : v) std::swap(row[i], row[j]);
    }
    // row i -= q * row j
    void row_sub(std::size_t i, std::size_t j, Int q) {
        for (std::size_t c = 0; c < n; ++c) a[i][c] = checked_sub(a[i][c], checked_mul(q, a[j][c]));
        for (std::size_t c = 0; c < m; ++c) u[i][c] = checked_sub(u[i][c], checked_mul(q, u[j][c]));
    }
    // col i -= q * col j
    void col_sub(std::size_t i, std::size_t j, Int q) {
        for (std::size_t r = 0; r < m; ++r) a[r][i] = checked_sub(a[r][i], checked_mul(q, a[r][j]));
        for (std::size_t r = 0; r < n; ++r) v[r][i] = checked_sub(v[r][i], checked_mul(q, v[r][j]));
    }
    void negate_row(std::size_t i) {
        for (auto& x : a[i]) x = -x;
        for (auto& x : u[i]) x = -x;
    }

    bool move_min_to(std::size_t t) {
        std::size_t bi = m, bj = n;
        Int best = 0;
        for (std::size_t i = t; i < m; ++i)
            for (std::size_t j = t; j < n; ++j)
                if (a[i][j] != 0 && (best == 0 || std::llabs(a[i][j]) < best)) {
                    best = std::llabs(a[i][j]);
                    bi = i;
                    bj = j;
                }
        if (best == 0) return false;
        if (bi != t) swap_rows(bi, t);
        if (bj != t) swap_cols(bj, t);
        return true;
    }

    void run() {
        for (std::size_t t = 0; t < std::min(m, n); ++t) {
            if (!move_min_to(t)) break;
            while (true) {
                bool clean = true;
                for (std::size_t i = t + 1; i < m; ++i) {
                    if (a[i][t] == 0) continue;
                    row_sub(i, t, a[i][t] / a[t][t]);
                    if (a[i][t] != 0) clean = false;
                }
                for (std::size_t j = t + 1; j < n; ++j) {
                    if (a[t][j] == 0) continue;
                    col_sub(j, t, a[t][j] / a[t][t]);
                    if (a[t][j] != 0) clean = false;
                }
                if (!clean) {
                    move_min_to(t);
                    continue;
                }
                // Pivot must divide the rest of the submatrix.
                bool divides = true;
                for (std::size_t i = t + 1; i < m && divides; ++i)
                    for (std::size_t j = t + 1; j < n; ++j)
                        if (a[i][j] % a[t][t] != 0) {
                            row_sub(t, i, -1);
                            divides = false;
                            break;
                        }
                if (divides) break;
            }
            if (a[t][t] < 0) negate_row(t);
        }
    }
};

} // namespace

SmithForm smith_normal_form(const Matrix& input) {
    if (input.empty() || input[0].empty()) throw InvalidInput("smith_normal_form of an empty matrix");
    const std::size_t m = input.size(), n = input[0].size();
    for (const auto& row : input)
        if (row.size() != n) throw InvalidInput("ragged matrix");
    Reducer r{input, identity(m), identity(n), m, n};
    r.run();
    return {std::move(r.u), std::move(r.a), std::move(r.v)};
}

} // namespace ramdata::kernel
