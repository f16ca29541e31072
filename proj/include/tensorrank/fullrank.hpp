#pragma once

#include "tensorrank/linalg.hpp"
#include "tensorrank/rank_functions.hpp"
#include "tensorrank/tensor.hpp"

#include <optional>
#include <string>
#include <utility>

namespace tensorrank {

/// Full-rank test result. `mode` is the smallest 1-based p with r(x) = n_p;
/// it is empty for zero tensors, which count as full rank by convention.
struct FullRankResult {
    bool full = false;
    std::optional<std::size_t> mode;
    std::size_t rank = 0;
};

[[nodiscard]] FullRankResult is_full_rank(const RankFunction& r, const DenseTensor& x);

/// Extracted full-rank subtensor description. `indices` is T_p; for the
/// rank-0 certificate `mode` is empty and `indices` is empty.
struct FullRankCertificate {
    std::optional<std::size_t> mode;
    std::vector<std::size_t> indices;
    std::size_t rank = 0;
    IndexSelection selection;
};

/// {"mode": p|null, "indices": [...], "rank": r, "selection": [[...], ...]}
[[nodiscard]] std::string to_json(const FullRankCertificate& cert);

/// Constructive max-Tucker extraction: the smallest mode p attaining the
/// largest unfolding rank, with T_p given by row_basis(unfold(x, p)).
[[nodiscard]] std::pair<DenseTensor, FullRankCertificate> extract_max_tucker(
    const DenseTensor& x, const RankTolerance& tol = {});

struct EnumerationLimits {
    std::size_t max_entries = 4096;
    std::size_t max_dim = 8;
};

/// Exhaustive search for a maximum full-rank subtensor under a proper rank
/// function `r`.
///
/// Candidates are visited by decreasing largest subtensor dimension, then
/// lexicographically by (T_1, ..., T_m); the first candidate reaching the
/// maximal value wins. The search stops once the best value reaches r(x)
/// or the largest remaining candidate dimension (both bounds hold for
/// proper rank functions). Throws CapacityError past `limits`.
[[nodiscard]] std::pair<DenseTensor, FullRankCertificate> extract_brute_force(
    const RankFunction& r, const DenseTensor& x, const EnumerationLimits& limits = {});

/// max { r(Y) : Y a full-r-rank subtensor of x }.
[[nodiscard]] std::size_t closure_eval(const RankFunction& r, const DenseTensor& x,
                                       const EnumerationLimits& limits = {});

/// closure_eval wrapped as a rank function named "closure(<name>)".
[[nodiscard]] RankFunction closure_rank_function(const RankFunction& r,
                                                 const EnumerationLimits& limits = {});

}  // namespace tensorrank
