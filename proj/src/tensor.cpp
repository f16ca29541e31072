#include "tensorrank/tensor.hpp"

#include "tensorrank/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>

namespace tensorrank {

namespace {

std::string shape_string(const Shape& shape) {
    std::string s = "(";
    for (std::size_t i = 0; i < shape.size(); ++i) {
        if (i) s += "x";
        s += std::to_string(shape[i]);
    }
    return s + ")";
}

// Row-major strides, 0-based.
std::vector<std::size_t> strides_of(const Shape& shape) {
    std::vector<std::size_t> s(shape.size(), 1);
    for (std::size_t l = shape.size(); l-- > 1;) s[l - 1] = s[l] * shape[l];
    return s;
}

// Advance a 0-based multi-index in row-major order. Returns false on wrap.
bool next_index(std::vector<std::size_t>& idx, const Shape& shape) {
    for (std::size_t l = shape.size(); l-- > 0;) {
        if (++idx[l] < shape[l]) return true;
        idx[l] = 0;
    }
    return false;
}

// Column strides of the mode-j unfolding (earliest remaining mode fastest).
std::vector<std::size_t> unfold_col_strides(const Shape& shape, std::size_t j0) {
    std::vector<std::size_t> s(shape.size(), 0);
    std::size_t stride = 1;
    for (std::size_t l = 0; l < shape.size(); ++l) {
        if (l == j0) continue;
        s[l] = stride;
        stride *= shape[l];
    }
    return s;
}

void check_mode(std::size_t mode, std::size_t order) {
    if (mode < 1 || mode > order)
        throw ArgumentError("mode " + std::to_string(mode) + " out of range for order " +
                            std::to_string(order));
}

}  // namespace

std::size_t product(const Shape& shape) noexcept {
    return std::accumulate(shape.begin(), shape.end(), std::size_t{1}, std::multiplies<>{});
}

// ---------------------------------------------------------------------------
// DenseTensor

DenseTensor::DenseTensor(Shape shape, std::vector<double> values)
    : shape_(std::move(shape)), values_(std::move(values)) {
    if (shape_.empty()) throw ArgumentError("tensor order must be at least 1");
    for (auto n : shape_)
        if (n == 0) throw ArgumentError("shape entries must be >= 1, got " + shape_string(shape_));
    if (values_.size() != product(shape_))
        throw ArgumentError("shape " + shape_string(shape_) + " needs " +
                            std::to_string(product(shape_)) + " values, got " +
                            std::to_string(values_.size()));
    for (double v : values_)
        if (!std::isfinite(v)) throw ArgumentError("non-finite tensor entry");
}

DenseTensor DenseTensor::zeros(Shape shape) {
    auto n = product(shape);
    return DenseTensor(std::move(shape), std::vector<double>(n, 0.0));
}

std::size_t DenseTensor::dim(std::size_t mode) const {
    check_mode(mode, order());
    return shape_[mode - 1];
}

double DenseTensor::at(std::span<const std::size_t> index) const {
    if (index.size() != order()) throw SelectionError("index has wrong length");
    std::size_t off = 0;
    for (std::size_t l = 0; l < order(); ++l) {
        if (index[l] < 1 || index[l] > shape_[l]) throw SelectionError("index out of range");
        off = off * shape_[l] + (index[l] - 1);
    }
    return values_[off];
}

double DenseTensor::at(std::initializer_list<std::size_t> index) const {
    return at(std::span<const std::size_t>(index.begin(), index.size()));
}

bool DenseTensor::is_zero() const noexcept {
    return std::all_of(values_.begin(), values_.end(), [](double v) { return v == 0.0; });
}

bool DenseTensor::bitwise_equal(const DenseTensor& other) const noexcept {
    if (shape_ != other.shape_) return false;
    for (std::size_t i = 0; i < values_.size(); ++i)
        if (std::bit_cast<std::uint64_t>(values_[i]) != std::bit_cast<std::uint64_t>(other.values_[i]))
            return false;
    return true;
}

// ---------------------------------------------------------------------------
// IndexSelection

IndexSelection::IndexSelection(std::vector<std::vector<std::size_t>> per_mode)
    : per_mode_(std::move(per_mode)) {
    if (per_mode_.empty()) throw SelectionError("selection must cover at least one mode");
    for (std::size_t l = 0; l < per_mode_.size(); ++l) {
        const auto& t = per_mode_[l];
        if (t.empty()) throw SelectionError("empty index set in mode " + std::to_string(l + 1));
        for (std::size_t k = 0; k < t.size(); ++k) {
            if (t[k] < 1) throw SelectionError("indices are 1-based");
            if (k && t[k] <= t[k - 1])
                throw SelectionError("index set in mode " + std::to_string(l + 1) +
                                     " must be strictly increasing");
        }
    }
}

IndexSelection IndexSelection::full(const Shape& shape) {
    std::vector<std::vector<std::size_t>> sets(shape.size());
    for (std::size_t l = 0; l < shape.size(); ++l) {
        sets[l].resize(shape[l]);
        std::iota(sets[l].begin(), sets[l].end(), std::size_t{1});
    }
    return IndexSelection(std::move(sets));
}

const std::vector<std::size_t>& IndexSelection::mode(std::size_t mode) const {
    if (mode < 1 || mode > order()) throw SelectionError("selection mode out of range");
    return per_mode_[mode - 1];
}

Shape IndexSelection::shape() const {
    Shape s;
    s.reserve(per_mode_.size());
    for (const auto& t : per_mode_) s.push_back(t.size());
    return s;
}

void IndexSelection::validate(const Shape& shape) const {
    if (shape.size() != per_mode_.size())
        throw SelectionError("selection has " + std::to_string(per_mode_.size()) +
                             " modes, tensor has " + std::to_string(shape.size()));
    for (std::size_t l = 0; l < shape.size(); ++l)
        if (per_mode_[l].back() > shape[l])
            throw SelectionError("index " + std::to_string(per_mode_[l].back()) +
                                 " out of range in mode " + std::to_string(l + 1));
}

IndexSelection IndexSelection::compose(const IndexSelection& inner) const {
    inner.validate(shape());
    std::vector<std::vector<std::size_t>> sets(order());
    for (std::size_t l = 0; l < order(); ++l)
        for (auto k : inner.per_mode_[l]) sets[l].push_back(per_mode_[l][k - 1]);
    return IndexSelection(std::move(sets));
}

// ---------------------------------------------------------------------------
// ModePermutation

ModePermutation::ModePermutation(std::vector<std::size_t> one_based) : perm_(std::move(one_based)) {
    if (perm_.empty()) throw ArgumentError("permutation must be nonempty");
    std::vector<bool> seen(perm_.size(), false);
    for (auto p : perm_) {
        if (p < 1 || p > perm_.size() || seen[p - 1]) throw ArgumentError("not a permutation");
        seen[p - 1] = true;
    }
}

ModePermutation ModePermutation::identity(std::size_t order) {
    std::vector<std::size_t> p(order);
    std::iota(p.begin(), p.end(), std::size_t{1});
    return ModePermutation(std::move(p));
}

std::size_t ModePermutation::source(std::size_t result_mode) const {
    check_mode(result_mode, order());
    return perm_[result_mode - 1];
}

ModePermutation ModePermutation::inverse() const {
    std::vector<std::size_t> inv(perm_.size());
    for (std::size_t k = 0; k < perm_.size(); ++k) inv[perm_[k] - 1] = k + 1;
    return ModePermutation(std::move(inv));
}

// ---------------------------------------------------------------------------
// Operations

DenseTensor subtensor(const DenseTensor& x, const IndexSelection& sel) {
    sel.validate(x.shape());
    const Shape out_shape = sel.shape();
    const auto strides = strides_of(x.shape());
    const auto src = x.values();
    std::vector<double> out;
    out.reserve(product(out_shape));
    std::vector<std::size_t> idx(out_shape.size(), 0);
    do {
        std::size_t off = 0;
        for (std::size_t l = 0; l < idx.size(); ++l) off += (sel.per_mode()[l][idx[l]] - 1) * strides[l];
        out.push_back(src[off]);
    } while (next_index(idx, out_shape));
    return DenseTensor(out_shape, std::move(out));
}

DenseTensor p_row(const DenseTensor& x, std::size_t p, std::size_t q) {
    if (p < 1 || p > x.order()) throw SelectionError("p-row mode out of range");
    if (q < 1 || q > x.shape()[p - 1]) throw SelectionError("p-row index out of range");
    auto sets = IndexSelection::full(x.shape()).per_mode();
    sets[p - 1] = {q};
    return subtensor(x, IndexSelection(std::move(sets)));
}

DenseTensor permute_modes(const DenseTensor& x, const ModePermutation& sigma) {
    if (sigma.order() != x.order()) throw ArgumentError("permutation length differs from tensor order");
    const std::size_t m = x.order();
    Shape out_shape(m);
    for (std::size_t k = 0; k < m; ++k) out_shape[k] = x.shape()[sigma.values()[k] - 1];
    const auto src_strides = strides_of(x.shape());
    std::vector<double> out;
    out.reserve(x.size());
    std::vector<std::size_t> idx(m, 0);
    const auto src = x.values();
    do {
        std::size_t off = 0;
        for (std::size_t k = 0; k < m; ++k) off += idx[k] * src_strides[sigma.values()[k] - 1];
        out.push_back(src[off]);
    } while (next_index(idx, out_shape));
    return DenseTensor(std::move(out_shape), std::move(out));
}

DenseTensor outer_product(const std::vector<std::vector<double>>& vectors) {
    if (vectors.empty()) throw ArgumentError("outer product needs at least one vector");
    Shape shape;
    for (const auto& v : vectors) {
        if (v.empty()) throw ArgumentError("outer product vectors must be nonempty");
        if (std::all_of(v.begin(), v.end(), [](double e) { return e == 0.0; }))
            throw ArgumentError("outer product of a zero vector is not rank-one");
        shape.push_back(v.size());
    }
    std::vector<double> out;
    out.reserve(product(shape));
    std::vector<std::size_t> idx(shape.size(), 0);
    do {
        double p = 1.0;
        for (std::size_t l = 0; l < shape.size(); ++l) p *= vectors[l][idx[l]];
        out.push_back(p);
    } while (next_index(idx, shape));
    return DenseTensor(std::move(shape), std::move(out));
}

DenseTensor identity_tensor(std::size_t m, std::size_t n) {
    if (m < 2) throw ArgumentError("identity tensor needs order >= 2");
    if (n < 1) throw ArgumentError("identity tensor needs dimension >= 1");
    Shape shape(m, n);
    std::vector<double> v(product(shape), 0.0);
    const auto strides = strides_of(shape);
    const std::size_t diag = std::accumulate(strides.begin(), strides.end(), std::size_t{0});
    for (std::size_t i = 0; i < n; ++i) v[i * diag] = 1.0;
    return DenseTensor(std::move(shape), std::move(v));
}

Matrix unfold(const DenseTensor& x, std::size_t mode) {
    check_mode(mode, x.order());
    const std::size_t j0 = mode - 1;
    const auto& shape = x.shape();
    const auto cs = unfold_col_strides(shape, j0);
    Matrix out(static_cast<Eigen::Index>(shape[j0]), static_cast<Eigen::Index>(x.size() / shape[j0]));
    std::vector<std::size_t> idx(shape.size(), 0);
    const auto src = x.values();
    std::size_t off = 0;
    do {
        std::size_t col = 0;
        for (std::size_t l = 0; l < idx.size(); ++l) col += idx[l] * cs[l];
        out(static_cast<Eigen::Index>(idx[j0]), static_cast<Eigen::Index>(col)) = src[off++];
    } while (next_index(idx, shape));
    return out;
}

DenseTensor fold(const Matrix& m, std::size_t mode, const Shape& shape) {
    check_mode(mode, shape.size());
    const std::size_t j0 = mode - 1;
    const std::size_t total = product(shape);
    if (static_cast<std::size_t>(m.rows()) != shape[j0] ||
        static_cast<std::size_t>(m.rows() * m.cols()) != total)
        throw ArgumentError("matrix " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                            " does not fold into " + shape_string(shape) + " along mode " +
                            std::to_string(mode));
    const auto cs = unfold_col_strides(shape, j0);
    std::vector<double> out;
    out.reserve(total);
    std::vector<std::size_t> idx(shape.size(), 0);
    do {
        std::size_t col = 0;
        for (std::size_t l = 0; l < idx.size(); ++l) col += idx[l] * cs[l];
        out.push_back(m(static_cast<Eigen::Index>(idx[j0]), static_cast<Eigen::Index>(col)));
    } while (next_index(idx, shape));
    return DenseTensor(shape, std::move(out));
}

DenseTensor mode_product(const DenseTensor& x, const Matrix& a, std::size_t mode) {
    check_mode(mode, x.order());
    if (static_cast<std::size_t>(a.cols()) != x.shape()[mode - 1])
        throw ArgumentError("mode product: matrix has " + std::to_string(a.cols()) +
                            " columns, mode " + std::to_string(mode) + " has dimension " +
                            std::to_string(x.shape()[mode - 1]));
    if (a.rows() < 1) throw ArgumentError("mode product: matrix has no rows");
    Shape out_shape = x.shape();
    out_shape[mode - 1] = static_cast<std::size_t>(a.rows());
    Matrix prod = a * unfold(x, mode);
    return fold(prod, mode, out_shape);
}

DenseTensor scale(const DenseTensor& x, double alpha) {
    std::vector<double> v(x.values().begin(), x.values().end());
    for (auto& e : v) e *= alpha;
    return DenseTensor(x.shape(), std::move(v));
}

DenseTensor add(const DenseTensor& x, const DenseTensor& y) {
    if (x.shape() != y.shape())
        throw ArgumentError("add: shape " + shape_string(x.shape()) + " vs " + shape_string(y.shape()));
    std::vector<double> v(x.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = x.values()[i] + y.values()[i];
    return DenseTensor(x.shape(), std::move(v));
}

double frobenius_norm(const DenseTensor& x) noexcept {
    double s = 0.0;
    for (double v : x.values()) s += v * v;
    return std::sqrt(s);
}

DenseTensor as_at_least_order2(const DenseTensor& x) {
    if (x.order() >= 2) return x;
    return DenseTensor({x.shape()[0], 1}, std::vector<double>(x.values().begin(), x.values().end()));
}

DenseTensor from_matrix(const Matrix& m) {
    std::vector<double> v;
    v.reserve(static_cast<std::size_t>(m.size()));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) v.push_back(m(i, j));
    return DenseTensor({static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols())},
                       std::move(v));
}

Matrix to_matrix(const DenseTensor& x) {
    if (x.order() != 2) throw ArgumentError("to_matrix needs an order-2 tensor");
    return unfold(x, 1);
}

}  // namespace tensorrank
