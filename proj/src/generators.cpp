#include "tensorrank/generators.hpp"

#include "tensorrank/errors.hpp"
#include "tensorrank/rank_functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tensorrank::gen {

namespace {

Matrix integer_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng, int lo, int hi) {
    Matrix a(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) a(i, j) = static_cast<double>(rng.integer(lo, hi));
    return a;
}

DenseTensor tucker_product(const DenseTensor& core, const std::vector<Matrix>& factors) {
    DenseTensor x = core;
    for (std::size_t l = 0; l < factors.size(); ++l) x = mode_product(x, factors[l], l + 1);
    return x;
}

// Places `block` into `shape` with its (1,...,1) entry at `origin` (0-based).
std::vector<double> embed(const DenseTensor& block, const Shape& shape, const Shape& origin,
                          std::vector<double> into) {
    std::vector<std::size_t> idx(block.order(), 0);
    const auto& bs = block.shape();
    std::size_t src = 0;
    while (true) {
        std::size_t off = 0;
        for (std::size_t l = 0; l < idx.size(); ++l) off = off * shape[l] + origin[l] + idx[l];
        into[off] = block.values()[src++];
        std::size_t l = idx.size();
        while (l > 0) {
            --l;
            if (++idx[l] < bs[l]) break;
            idx[l] = 0;
            if (l == 0) return into;
        }
    }
}

}  // namespace

DenseTensor prop36() {
    std::vector<double> v(24, 0.0);
    auto at = [](std::size_t i, std::size_t j, std::size_t k) { return ((i - 1) * 3 + (j - 1)) * 4 + (k - 1); };
    v[at(1, 1, 1)] = 1.0;
    v[at(1, 2, 2)] = 1.0;
    v[at(1, 3, 3)] = 1.0;
    v[at(2, 1, 4)] = 1.0;
    return DenseTensor({2, 3, 4}, std::move(v));
}

DenseTensor thm34() {
    Matrix x1(3, 4);
    x1 << 1, 0, 0, 1,
          0, 1, 0, 1,
          0, 0, 1, 1;
    return fold(x1, 1, {3, 2, 2});
}

BlockPair block_thm35(std::uint64_t seed) {
    const Shape block{4, 4, 4};
    const Shape full{8, 8, 8};
    const Shape core_y{4, 3, 2};
    const Shape core_z{3, 4, 2};
    Rng rng(seed);
    for (int attempt = 0; attempt < 64; ++attempt) {
        const DenseTensor by = random_tucker_integer(block, core_y, rng);
        const DenseTensor bz = random_tucker_integer(block, core_z, rng);
        if (n_rank(by).ranks != core_y || n_rank(bz).ranks != core_z) continue;
        std::vector<double> zeros(product(full), 0.0);
        DenseTensor y(full, embed(by, full, {0, 0, 0}, zeros));
        DenseTensor z(full, embed(bz, full, {4, 4, 4}, zeros));
        DenseTensor sum = add(y, z);
        return {std::move(y), std::move(z), std::move(sum)};
    }
    throw InvariantError("could not draw block tensors with the prescribed n-rank profile");
}

DenseTensor random_integer(const Shape& shape, Rng& rng, int lo, int hi) {
    std::vector<double> v(product(shape));
    for (auto& e : v) e = static_cast<double>(rng.integer(lo, hi));
    return DenseTensor(shape, std::move(v));
}

DenseTensor random_normal(const Shape& shape, Rng& rng) {
    std::vector<double> v(product(shape));
    for (auto& e : v) e = rng.normal();
    return DenseTensor(shape, std::move(v));
}

DenseTensor random_rank_one(const Shape& shape, Rng& rng) {
    std::vector<std::vector<double>> vecs;
    for (auto n : shape) {
        std::vector<double> v(n);
        do {
            for (auto& e : v) e = static_cast<double>(rng.integer(-3, 3));
        } while (std::all_of(v.begin(), v.end(), [](double e) { return e == 0.0; }));
        vecs.push_back(std::move(v));
    }
    return outer_product(vecs);
}

DenseTensor random_tucker_integer(const Shape& shape, const Shape& core, Rng& rng) {
    if (shape.size() != core.size()) throw ArgumentError("core order differs from tensor order");
    std::vector<Matrix> factors;
    for (std::size_t l = 0; l < shape.size(); ++l)
        factors.push_back(integer_matrix(static_cast<Eigen::Index>(shape[l]),
                                         static_cast<Eigen::Index>(core[l]), rng, -2, 2));
    return tucker_product(random_integer(core, rng, -2, 2), factors);
}

DenseTensor matrix_embedded(std::size_t n1, std::size_t n2, std::size_t k, std::size_t order, Rng& rng) {
    if (order < 2) throw ArgumentError("matrix embedding needs order >= 2");
    const auto r = static_cast<Eigen::Index>(std::max<std::size_t>(k, 1));
    Matrix m = integer_matrix(static_cast<Eigen::Index>(n1), r, rng, -2, 2) *
               integer_matrix(r, static_cast<Eigen::Index>(n2), rng, -2, 2);
    if (k == 0) m.setZero();
    Shape shape(order, 1);
    shape[0] = n1;
    shape[1] = n2;
    DenseTensor t = from_matrix(m);
    return DenseTensor(shape, std::vector<double>(t.values().begin(), t.values().end()));
}

DenseTensor planted_tucker(const Shape& shape, const Shape& core, double snr_db, std::uint64_t seed) {
    if (shape.size() != core.size()) throw ArgumentError("core order differs from tensor order");
    for (std::size_t l = 0; l < shape.size(); ++l)
        if (core[l] < 1 || core[l] > shape[l]) throw ArgumentError("core entry exceeds tensor dimension");
    Rng rng(seed);
    std::vector<double> cv(product(core));
    for (auto& e : cv) e = rng.uniform(0.1, 1.0);
    std::vector<Matrix> factors;
    for (std::size_t l = 0; l < shape.size(); ++l) {
        Matrix a(static_cast<Eigen::Index>(shape[l]), static_cast<Eigen::Index>(core[l]));
        for (Eigen::Index i = 0; i < a.rows(); ++i)
            for (Eigen::Index j = 0; j < a.cols(); ++j) a(i, j) = rng.uniform();
        factors.push_back(std::move(a));
    }
    DenseTensor signal = tucker_product(DenseTensor(core, std::move(cv)), factors);
    if (std::isinf(snr_db) && snr_db > 0) return signal;
    const double rms = frobenius_norm(signal) / std::sqrt(static_cast<double>(signal.size()));
    const double sigma = rms * std::pow(10.0, -snr_db / 20.0);
    std::vector<double> v(signal.values().begin(), signal.values().end());
    for (auto& e : v) e = std::max(0.0, e + sigma * rng.normal());
    return DenseTensor(shape, std::move(v));
}

DenseTensor duplicate_slices(const DenseTensor& x, std::size_t mode, std::size_t extra, Rng& rng) {
    const Matrix u = unfold(x, mode);
    Matrix out(u.rows() + static_cast<Eigen::Index>(extra), u.cols());
    out.topRows(u.rows()) = u;
    for (std::size_t e = 0; e < extra; ++e)
        out.row(u.rows() + static_cast<Eigen::Index>(e)) = u.row(rng.integer(0, u.rows() - 1));
    Shape shape = x.shape();
    shape[mode - 1] += extra;
    return fold(out, mode, shape);
}

}  // namespace tensorrank::gen
