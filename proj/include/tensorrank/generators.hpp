#pragma once

#include "tensorrank/random.hpp"
#include "tensorrank/tensor.hpp"

#include <cstdint>
#include <vector>

namespace tensorrank::gen {

/// 2x3x4 tensor with ones at (1,1,1), (1,2,2), (1,3,3), (2,1,4); n-rank (2,3,4).
[[nodiscard]] DenseTensor prop36();

/// 3x2x2 tensor whose mode-1 unfolding is [I_3 | e]; n-rank (3,2,2).
[[nodiscard]] DenseTensor thm34();

/// Y + Z in T(2a, 2b, 2c): Y lives on the leading block with n-rank
/// (r1,r2,r3), r1 > r2 > r3, Z on the trailing block with n-rank
/// (R1,R2,R3), R2 > R1 > R3. Unfolding ranks of the sum add blockwise.
struct BlockPair {
    DenseTensor y;
    DenseTensor z;
    DenseTensor sum;
};

/// Integer-valued block pair with block 4x4x4, n-rank(Y) = (4,3,2) and
/// n-rank(Z) = (3,4,2). The rank profiles are verified before returning.
[[nodiscard]] BlockPair block_thm35(std::uint64_t seed = 35);

/// Integer entries drawn uniformly from [lo, hi].
[[nodiscard]] DenseTensor random_integer(const Shape& shape, Rng& rng, int lo = -4, int hi = 4);

/// Standard normal entries.
[[nodiscard]] DenseTensor random_normal(const Shape& shape, Rng& rng);

/// Outer product of random nonzero integer vectors in [-3, 3].
[[nodiscard]] DenseTensor random_rank_one(const Shape& shape, Rng& rng);

/// core ×_1 A_1 ... ×_m A_m with integer core and factors in [-2, 2].
/// Generic draws give n-rank equal to the core shape when that is attainable.
[[nodiscard]] DenseTensor random_tucker_integer(const Shape& shape, const Shape& core, Rng& rng);

/// Integer n1 x n2 matrix of rank <= k embedded in T(n1, n2, 1, ..., 1).
[[nodiscard]] DenseTensor matrix_embedded(std::size_t n1, std::size_t n2, std::size_t k,
                                          std::size_t order, Rng& rng);

/// Traffic-like synthetic tensor: planted Tucker model with nonnegative
/// core and factors, plus Gaussian noise at `snr_db` (infinite = no
/// noise), clamped at zero.
[[nodiscard]] DenseTensor planted_tucker(const Shape& shape, const Shape& core, double snr_db,
                                         std::uint64_t seed);

/// Appends copies of existing mode-`mode` slices: the result has
/// `extra` more slices, each equal to a randomly chosen existing one.
[[nodiscard]] DenseTensor duplicate_slices(const DenseTensor& x, std::size_t mode, std::size_t extra,
                                           Rng& rng);

}  // namespace tensorrank::gen
