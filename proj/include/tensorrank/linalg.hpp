#pragma once

#include "tensorrank/tensor.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tensorrank {

/// Singular-value threshold for numerical rank.
///
/// `relative` compares against value * sigma_max; `absolute` against value.
/// A relative tolerance without an explicit value uses max(rows, cols) * eps.
struct RankTolerance {
    enum class Mode { relative, absolute };

    Mode mode = Mode::relative;
    std::optional<double> value;

    static RankTolerance relative_default() { return {}; }
    static RankTolerance relative(double v);
    static RankTolerance absolute(double v);

    /// Threshold below or at which a singular value counts as zero.
    [[nodiscard]] double threshold(Eigen::Index rows, Eigen::Index cols, double sigma_max) const;

    /// "relative:default", "relative:1e-10", "absolute:1e-6".
    [[nodiscard]] std::string describe() const;
    static RankTolerance parse(const std::string& text);

    friend bool operator==(const RankTolerance&, const RankTolerance&) = default;
};

/// Maximal independent row set, 1-based and strictly increasing.
struct RowBasis {
    std::vector<std::size_t> indices;
    [[nodiscard]] std::size_t rank() const noexcept { return indices.size(); }
};

[[nodiscard]] Eigen::VectorXd singular_values(const Matrix& m);

/// Number of singular values above the tolerance threshold.
[[nodiscard]] std::size_t matrix_rank(const Matrix& m, const RankTolerance& tol = {});

/// Row selection by column-pivoted QR of m^T. Pivot ties go to the smallest
/// row index. Exactly matrix_rank(m, tol) rows are returned.
[[nodiscard]] RowBasis row_basis(const Matrix& m, const RankTolerance& tol = {});

/// Rows of `m` listed in `basis` (1-based), stacked in order.
[[nodiscard]] Matrix select_rows(const Matrix& m, const RowBasis& basis);

/// True iff appending v to the basis rows leaves the numerical rank unchanged.
[[nodiscard]] bool in_row_span(const Matrix& m, const RowBasis& basis, const Eigen::VectorXd& v,
                               const RankTolerance& tol = {});

}  // namespace tensorrank
