#pragma once

#include "tensorrank/linalg.hpp"
#include "tensorrank/tensor.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace tensorrank {

enum class RankProperty { proper, strongly_proper, subadditive };

[[nodiscard]] std::string to_string(RankProperty p);

/// Named scalar rank evaluator plus the optional properties it claims.
class RankFunction {
public:
    using Evaluator = std::function<std::size_t(const DenseTensor&)>;

    RankFunction(std::string name, Evaluator evaluator, std::set<RankProperty> declared = {});

    std::size_t operator()(const DenseTensor& x) const { return evaluator_(x); }

    [[nodiscard]] const std::string& name() const noexcept { return name_; }
    [[nodiscard]] const std::set<RankProperty>& declared() const noexcept { return declared_; }
    [[nodiscard]] bool declares(RankProperty p) const { return declared_.contains(p); }

private:
    std::string name_;
    Evaluator evaluator_;
    std::set<RankProperty> declared_;
};

/// Unfolding ranks (r_1..r_m). Order-1 tensors are evaluated as n x 1
/// matrices, so their n-rank has two entries.
struct NRank {
    std::vector<std::size_t> ranks;
    RankTolerance tol;
};

[[nodiscard]] NRank n_rank(const DenseTensor& x, const RankTolerance& tol = {});

/// Second entry of the values sorted descending (so submax{3,3,2} = 3).
/// A single value is its own submax.
[[nodiscard]] std::size_t submax(std::vector<std::size_t> values);

[[nodiscard]] std::size_t max_tucker_rank(const DenseTensor& x, const RankTolerance& tol = {});
[[nodiscard]] std::size_t submax_tucker_rank(const DenseTensor& x, const RankTolerance& tol = {});

/// r_max: proper and subadditive.
[[nodiscard]] RankFunction max_tucker(const RankTolerance& tol = {});
/// r_sub: proper and strongly proper.
[[nodiscard]] RankFunction submax_tucker(const RankTolerance& tol = {});

/// Pointwise minimum. Keeps proper / strongly proper when either input has
/// it; never declares subadditivity.
[[nodiscard]] RankFunction min_rank(const RankFunction& a, const RankFunction& b);

// ---------------------------------------------------------------------------
// CP rank bounds

struct CpOptions {
    std::size_t max_rank = 6;     ///< largest CP rank attempted by ALS
    std::size_t restarts = 8;     ///< random initializations per rank
    std::size_t max_iters = 2000; ///< ALS sweeps per initialization
    double fit_tol = 1e-8;        ///< relative residual that counts as a fit
    std::uint64_t seed = 1;
};

/// Factor matrices A_l of size n_l x R; the tensor is sum_k a_{1k} ∘ ... ∘ a_{mk}.
struct CpDecomposition {
    std::vector<Matrix> factors;
    [[nodiscard]] std::size_t rank() const {
        return factors.empty() ? 0 : static_cast<std::size_t>(factors.front().cols());
    }
};

struct CpBounds {
    std::size_t lower = 0;
    std::optional<std::size_t> upper;  ///< empty when no fit was found
    double upper_residual = 0.0;       ///< relative residual of the fit behind `upper`
};

[[nodiscard]] DenseTensor cp_reconstruct(const CpDecomposition& cp);

/// Alternating least squares for a fixed CP rank; returns the best of
/// `options.restarts` runs and its relative residual.
[[nodiscard]] std::pair<CpDecomposition, double> cp_als(const DenseTensor& x, std::size_t rank,
                                                        const CpOptions& options);

/// lower = max n-rank entry. upper = smallest rank in [lower, max_rank] with an
/// ALS fit below fit_tol, or the certificate's rank if that is smaller and
/// the certificate reproduces x within fit_tol. The upper bound is heuristic.
[[nodiscard]] CpBounds cp_bounds(const DenseTensor& x, const RankTolerance& tol = {},
                                 const CpOptions& options = {},
                                 const std::optional<CpDecomposition>& certificate = std::nullopt);

}  // namespace tensorrank
