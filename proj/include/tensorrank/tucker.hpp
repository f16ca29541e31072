#pragma once

#include "tensorrank/tensor.hpp"

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace tensorrank {

enum class TuckerMethod { hosvd, st_hosvd, hooi };

[[nodiscard]] std::string to_string(TuckerMethod m);
[[nodiscard]] TuckerMethod parse_tucker_method(const std::string& s);

/// core ×_1 F_1 ... ×_m F_m with orthonormal factor columns.
struct TuckerModel {
    DenseTensor core;
    std::vector<Matrix> factors;  ///< factor j is n_j x r_j
    TuckerMethod method = TuckerMethod::hosvd;
    std::size_t iterations = 0;
    double relative_error = 0.0;
    /// HOOI: error of the initialization followed by the error after each sweep.
    std::vector<double> error_history;

    [[nodiscard]] Shape shape() const;
    [[nodiscard]] Shape ranks() const { return core.shape(); }
};

/// Leading `k` left singular vectors of `m`.
[[nodiscard]] Matrix leading_left_singular_vectors(const Matrix& m, std::size_t k);

/// x ×_1 F_1^T ... ×_m F_m^T.
[[nodiscard]] DenseTensor project_core(const DenseTensor& x, const std::vector<Matrix>& factors);

/// Truncated HOSVD: every factor from the unfolding of the original tensor.
[[nodiscard]] TuckerModel hosvd(const DenseTensor& x, const Shape& ranks);

/// Sequentially truncated HOSVD; `order` lists 1-based modes (default 1..m).
[[nodiscard]] TuckerModel st_hosvd(const DenseTensor& x, const Shape& ranks,
                                   std::vector<std::size_t> order = {});

struct HooiOptions {
    std::size_t max_iters = 100;
    double fit_tol = 1e-8;  ///< stop when |fit_k - fit_{k-1}| < fit_tol, fit = ||core|| / ||x||
};

/// Higher-order orthogonal iteration initialized from st_hosvd.
[[nodiscard]] TuckerModel hooi(const DenseTensor& x, const Shape& ranks, const HooiOptions& options = {});

[[nodiscard]] DenseTensor reconstruct(const TuckerModel& model);

/// ||xhat - x||_F / ||x||_F; x must be nonzero.
[[nodiscard]] double relative_error(const DenseTensor& xhat, const DenseTensor& x);

[[nodiscard]] TuckerModel decompose(const DenseTensor& x, const Shape& ranks, TuckerMethod method,
                                    const HooiOptions& options = {});

/// True when some mode j has sigma_k - sigma_{k+1} <= rel * sigma_max at its
/// truncation boundary k = ranks[j] of unfold(x, j) (leading subspace not unique).
[[nodiscard]] bool has_truncation_tie(const DenseTensor& x, const Shape& ranks, double rel = 1e-8);

/// Directory layout: core.tns, factor_1.tns ... factor_m.tns, meta.json.
void write_model(const std::filesystem::path& dir, const TuckerModel& model,
                 const std::string& tolerance = "relative:default");
[[nodiscard]] TuckerModel read_model(const std::filesystem::path& dir);

// ---------------------------------------------------------------------------
// Error sweep: core (n̄, r, ..., r) against (r, r, ..., r).

struct SweepConfig {
    Shape shape{100, 11, 11};
    Shape planted_core{20, 4, 4};
    double snr_db = 20.0;
    std::uint64_t seed = 7;
    std::vector<std::size_t> r_values{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11};
    /// Mode-1 caps n̄; an empty entry means n̄ = r (the max-Tucker configuration).
    std::vector<std::optional<std::size_t>> mode1_caps{std::nullopt, 10, 20, 40};
    TuckerMethod method = TuckerMethod::hosvd;
    std::size_t threads = 1;
};

struct SweepRow {
    std::size_t r = 0;
    std::optional<std::size_t> mode1_cap;
    TuckerMethod method = TuckerMethod::hosvd;
    double relative_error = 0.0;
    double elapsed_ms = 0.0;

    /// Mode-1 core dimension used for this row. A cap below r is lifted to r:
    /// the core (n̄, r, r) with n̄ < r would tighten the max-Tucker bound rather
    /// than relax it, so it is not a submax configuration.
    [[nodiscard]] std::size_t effective_cap() const { return std::max(mode1_cap.value_or(r), r); }
};

/// Throws ArgumentError unless every n̄ <= n_1 and every r fits the other modes.
void validate(const SweepConfig& config, const Shape& source_shape);

[[nodiscard]] SweepConfig sweep_config_from_json(const std::string& text);
[[nodiscard]] std::string to_json(const SweepConfig& config);

/// The seeded traffic-like tensor described by the config.
[[nodiscard]] DenseTensor sweep_source(const SweepConfig& config);

/// One row per (r, n̄); rows ordered by r, then n̄ ("r" first), regardless
/// of worker completion order.
[[nodiscard]] std::vector<SweepRow> run_sweep(const SweepConfig& config, const DenseTensor& source);

/// Header "r,mode1_cap,method,relative_error,elapsed_ms". With
/// `include_timing == false` elapsed_ms is written as 0 so the output
/// depends only on the inputs.
[[nodiscard]] std::string to_csv(const std::vector<SweepRow>& rows, bool include_timing = true);

}  // namespace tensorrank
