#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace tensorrank {

using Shape = std::vector<std::size_t>;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Dense real tensor of order m >= 1, stored row-major (last index fastest).
///
/// Values are immutable after construction. Every entry must be finite and
/// every shape entry must be at least 1. Public element access is 1-based.
class DenseTensor {
public:
    DenseTensor(Shape shape, std::vector<double> values);

    static DenseTensor zeros(Shape shape);

    [[nodiscard]] const Shape& shape() const noexcept { return shape_; }
    [[nodiscard]] std::size_t order() const noexcept { return shape_.size(); }
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }

    /// Dimension of 1-based mode `mode`.
    [[nodiscard]] std::size_t dim(std::size_t mode) const;

    /// Entry at a 1-based multi-index.
    [[nodiscard]] double at(std::span<const std::size_t> index) const;
    [[nodiscard]] double at(std::initializer_list<std::size_t> index) const;

    [[nodiscard]] bool is_zero() const noexcept;

    /// Same shape and identical bit patterns in every entry.
    [[nodiscard]] bool bitwise_equal(const DenseTensor& other) const noexcept;

    /// Same shape and equal values (so 0.0 == -0.0).
    friend bool operator==(const DenseTensor& a, const DenseTensor& b) noexcept {
        return a.shape_ == b.shape_ && a.values_ == b.values_;
    }

private:
    Shape shape_;
    std::vector<double> values_;
};

/// Per-mode index subsets T_1..T_m (1-based, strictly increasing, nonempty).
class IndexSelection {
public:
    explicit IndexSelection(std::vector<std::vector<std::size_t>> per_mode);

    /// Every index of every mode.
    static IndexSelection full(const Shape& shape);

    [[nodiscard]] std::size_t order() const noexcept { return per_mode_.size(); }
    [[nodiscard]] const std::vector<std::size_t>& mode(std::size_t mode) const;
    [[nodiscard]] const std::vector<std::vector<std::size_t>>& per_mode() const noexcept {
        return per_mode_;
    }
    [[nodiscard]] Shape shape() const;

    /// Throws SelectionError unless this selection fits inside `shape`.
    void validate(const Shape& shape) const;

    /// `inner` addresses the subtensor selected by `*this`; the result
    /// addresses the same entries in the original tensor.
    [[nodiscard]] IndexSelection compose(const IndexSelection& inner) const;

    friend bool operator==(const IndexSelection&, const IndexSelection&) = default;

private:
    std::vector<std::vector<std::size_t>> per_mode_;
};

/// Bijection on {1..m}. Result mode k takes source mode `source(k)`, so the
/// permuted shape is (n_{σ1}, ..., n_{σm}).
class ModePermutation {
public:
    explicit ModePermutation(std::vector<std::size_t> one_based);

    static ModePermutation identity(std::size_t order);

    [[nodiscard]] std::size_t order() const noexcept { return perm_.size(); }
    [[nodiscard]] std::size_t source(std::size_t result_mode) const;
    [[nodiscard]] const std::vector<std::size_t>& values() const noexcept { return perm_; }
    [[nodiscard]] ModePermutation inverse() const;

private:
    std::vector<std::size_t> perm_;
};

[[nodiscard]] std::size_t product(const Shape& shape) noexcept;

[[nodiscard]] DenseTensor subtensor(const DenseTensor& x, const IndexSelection& sel);

/// q-th p-row: T_p = {q}, all other modes full.
[[nodiscard]] DenseTensor p_row(const DenseTensor& x, std::size_t p, std::size_t q);

[[nodiscard]] DenseTensor permute_modes(const DenseTensor& x, const ModePermutation& sigma);

/// x^(1) ∘ ... ∘ x^(m); every vector must be nonzero.
[[nodiscard]] DenseTensor outer_product(const std::vector<std::vector<double>>& vectors);

/// I_{m,n}: ones on the superdiagonal (i,...,i), zeros elsewhere. m >= 2.
[[nodiscard]] DenseTensor identity_tensor(std::size_t m, std::size_t n);

/// Mode-j unfolding X_(j), size n_j x prod_{l != j} n_l.
///
/// Column of (i_1..i_m) = sum over l != j of (i_l - 1) * prod_{k < l, k != j} n_k,
/// i.e. the remaining modes in increasing order with the earliest fastest.
[[nodiscard]] Matrix unfold(const DenseTensor& x, std::size_t mode);

/// Inverse of unfold for the same mode and target shape.
[[nodiscard]] DenseTensor fold(const Matrix& m, std::size_t mode, const Shape& shape);

/// x ×_j A: unfold(result, j) == A * unfold(x, j).
[[nodiscard]] DenseTensor mode_product(const DenseTensor& x, const Matrix& a, std::size_t mode);

[[nodiscard]] DenseTensor scale(const DenseTensor& x, double alpha);
[[nodiscard]] DenseTensor add(const DenseTensor& x, const DenseTensor& y);
[[nodiscard]] double frobenius_norm(const DenseTensor& x) noexcept;

/// Order-1 tensors viewed as n x 1 matrices; higher orders returned as is.
[[nodiscard]] DenseTensor as_at_least_order2(const DenseTensor& x);

/// Matrix as an order-2 tensor, and back.
[[nodiscard]] DenseTensor from_matrix(const Matrix& m);
[[nodiscard]] Matrix to_matrix(const DenseTensor& x);

}  // namespace tensorrank
