#pragma once

// Reference implementations used as independent oracles by the test suites.
// They share no code with the library beyond DenseTensor storage access.

#include "tensorrank/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace oracle {

using tensorrank::DenseTensor;
using tensorrank::Matrix;
using tensorrank::Shape;

__extension__ typedef __int128 wide_int;

// Exact rank of an integer-valued matrix by Bareiss fraction-free elimination
// in 128-bit arithmetic. Every intermediate is a minor of the input, so it is
// exact for the small-entry fixtures used in the tests.
inline std::size_t integer_rank(const Matrix& m) {
    const auto rows = static_cast<std::size_t>(m.rows()), cols = static_cast<std::size_t>(m.cols());
    std::vector<std::vector<wide_int>> a(rows, std::vector<wide_int>(cols));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            a[i][j] = static_cast<wide_int>(static_cast<long long>(std::llround(m(static_cast<Eigen::Index>(i),
                                                                                   static_cast<Eigen::Index>(j)))));
    wide_int prev = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t k = c + 1; k < cols; ++k) a[i][k] = (a[r][c] * a[i][k] - a[i][c] * a[r][k]) / prev;
            a[i][c] = 0;
        }
        prev = a[r][c];
        ++r;
    }
    return r;
}

// Mode-j unfolding (1-based j) built directly from the index formula.
inline Matrix reference_unfold(const DenseTensor& x, std::size_t j) {
    const Shape& s = x.shape();
    const std::size_t m = s.size(), jj = j - 1;
    std::size_t cols = 1;
    for (std::size_t l = 0; l < m; ++l)
        if (l != jj) cols *= s[l];
    Matrix out(static_cast<Eigen::Index>(s[jj]), static_cast<Eigen::Index>(cols));
    std::vector<std::size_t> idx(m, 0);
    for (std::size_t off = 0; off < x.size(); ++off) {
        std::size_t rem = off;
        for (std::size_t l = m; l-- > 0;) {
            idx[l] = rem % s[l];
            rem /= s[l];
        }
        std::size_t col = 0, stride = 1;
        for (std::size_t l = 0; l < m; ++l) {
            if (l == jj) continue;
            col += idx[l] * stride;
            stride *= s[l];
        }
        out(static_cast<Eigen::Index>(idx[jj]), static_cast<Eigen::Index>(col)) = x.values()[off];
    }
    return out;
}

inline bool is_integer_valued(const DenseTensor& x) {
    return std::all_of(x.values().begin(), x.values().end(),
                       [](double v) { return v == std::round(v) && std::abs(v) < 1e6; });
}

// Exact n-rank of an integer-valued tensor (order-1 treated as n x 1).
inline std::vector<std::size_t> n_rank(const DenseTensor& x) {
    std::vector<std::size_t> out;
    if (x.order() == 1) {
        out.push_back(x.is_zero() ? 0 : 1);
        out.push_back(x.is_zero() ? 0 : 1);
        return out;
    }
    for (std::size_t j = 1; j <= x.order(); ++j) out.push_back(integer_rank(reference_unfold(x, j)));
    return out;
}

inline std::size_t max_of(const std::vector<std::size_t>& v) { return *std::max_element(v.begin(), v.end()); }

inline std::size_t submax_of(std::vector<std::size_t> v) {
    std::sort(v.begin(), v.end(), std::greater<>());
    return v.size() > 1 ? v[1] : v[0];
}

// Enumerates every nonempty subset of {1..n} as sorted 1-based index lists.
inline std::vector<std::vector<std::size_t>> subsets(std::size_t n) {
    std::vector<std::vector<std::size_t>> out;
    for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
        std::vector<std::size_t> s;
        for (std::size_t b = 0; b < n; ++b)
            if (mask & (std::size_t{1} << b)) s.push_back(b + 1);
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace oracle
