#include "tensorrank/rank_functions.hpp"

#include "tensorrank/errors.hpp"
#include "tensorrank/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tensorrank {

std::string to_string(RankProperty p) {
    switch (p) {
        case RankProperty::proper: return "proper";
        case RankProperty::strongly_proper: return "strongly_proper";
        case RankProperty::subadditive: return "subadditive";
    }
    return "unknown";
}

RankFunction::RankFunction(std::string name, Evaluator evaluator, std::set<RankProperty> declared)
    : name_(std::move(name)), evaluator_(std::move(evaluator)), declared_(std::move(declared)) {
    if (!evaluator_) throw ArgumentError("rank function needs an evaluator");
}

NRank n_rank(const DenseTensor& x, const RankTolerance& tol) {
    const DenseTensor y = as_at_least_order2(x);
    NRank out{{}, tol};
    out.ranks.reserve(y.order());
    for (std::size_t j = 1; j <= y.order(); ++j) out.ranks.push_back(matrix_rank(unfold(y, j), tol));
    return out;
}

std::size_t submax(std::vector<std::size_t> values) {
    if (values.empty()) throw ArgumentError("submax of an empty list");
    if (values.size() == 1) return values.front();
    std::partial_sort(values.begin(), values.begin() + 2, values.end(), std::greater<>{});
    return values[1];
}

std::size_t max_tucker_rank(const DenseTensor& x, const RankTolerance& tol) {
    const auto nr = n_rank(x, tol);
    return *std::max_element(nr.ranks.begin(), nr.ranks.end());
}

std::size_t submax_tucker_rank(const DenseTensor& x, const RankTolerance& tol) {
    return submax(n_rank(x, tol).ranks);
}

RankFunction max_tucker(const RankTolerance& tol) {
    return RankFunction(
        "max_tucker", [tol](const DenseTensor& x) { return max_tucker_rank(x, tol); },
        {RankProperty::proper, RankProperty::subadditive});
}

RankFunction submax_tucker(const RankTolerance& tol) {
    return RankFunction(
        "submax_tucker", [tol](const DenseTensor& x) { return submax_tucker_rank(x, tol); },
        {RankProperty::proper, RankProperty::strongly_proper});
}

RankFunction min_rank(const RankFunction& a, const RankFunction& b) {
    std::set<RankProperty> declared;
    for (auto p : {RankProperty::proper, RankProperty::strongly_proper})
        if (a.declares(p) || b.declares(p)) declared.insert(p);
    return RankFunction(
        "min(" + a.name() + "," + b.name() + ")",
        [a, b](const DenseTensor& x) { return std::min(a(x), b(x)); }, std::move(declared));
}

// ---------------------------------------------------------------------------
// CP

namespace {

// Khatri-Rao rows ordered like the columns of the mode-j unfolding.
Matrix khatri_rao_except(const std::vector<Matrix>& factors, std::size_t j0) {
    const auto rank = factors.front().cols();
    Eigen::Index rows = 1;
    for (std::size_t l = 0; l < factors.size(); ++l)
        if (l != j0) rows *= factors[l].rows();
    Matrix k = Matrix::Ones(rows, rank);
    Eigen::Index stride = 1;
    for (std::size_t l = 0; l < factors.size(); ++l) {
        if (l == j0) continue;
        const auto n = factors[l].rows();
        for (Eigen::Index row = 0; row < rows; ++row)
            k.row(row).array() *= factors[l].row((row / stride) % n).array();
        stride *= n;
    }
    return k;
}

double relative_residual(const DenseTensor& x, const CpDecomposition& cp) {
    const double nx = frobenius_norm(x);
    const DenseTensor r = add(x, scale(cp_reconstruct(cp), -1.0));
    return nx > 0 ? frobenius_norm(r) / nx : frobenius_norm(r);
}

}  // namespace

DenseTensor cp_reconstruct(const CpDecomposition& cp) {
    if (cp.factors.empty()) throw ArgumentError("CP decomposition has no factors");
    Shape shape;
    for (const auto& f : cp.factors) {
        if (f.cols() != cp.factors.front().cols()) throw ArgumentError("CP factors disagree on rank");
        shape.push_back(static_cast<std::size_t>(f.rows()));
    }
    if (shape.size() == 1) {
        Vector v = cp.factors[0].rowwise().sum();
        return DenseTensor(shape, std::vector<double>(v.data(), v.data() + v.size()));
    }
    // X_(1) = A_1 * KR(others)^T
    Matrix x1 = cp.factors[0] * khatri_rao_except(cp.factors, 0).transpose();
    return fold(x1, 1, shape);
}

std::pair<CpDecomposition, double> cp_als(const DenseTensor& input, std::size_t rank,
                                          const CpOptions& options) {
    if (rank == 0) throw ArgumentError("CP rank must be >= 1");
    const DenseTensor x = as_at_least_order2(input);
    const std::size_t m = x.order();
    std::vector<Matrix> unfoldings;
    for (std::size_t j = 1; j <= m; ++j) unfoldings.push_back(unfold(x, j));
    const double nx = frobenius_norm(x);
    const auto r = static_cast<Eigen::Index>(rank);

    Rng rng(options.seed ^ (0x9e3779b97f4a7c15ULL * rank));
    CpDecomposition best;
    double best_res = std::numeric_limits<double>::infinity();

    for (std::size_t attempt = 0; attempt < std::max<std::size_t>(1, options.restarts); ++attempt) {
        CpDecomposition cp;
        for (std::size_t l = 0; l < m; ++l) {
            Matrix a(static_cast<Eigen::Index>(x.shape()[l]), r);
            for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = rng.normal();
            cp.factors.push_back(std::move(a));
        }
        double res = std::numeric_limits<double>::infinity();
        for (std::size_t it = 0; it < options.max_iters; ++it) {
            for (std::size_t j = 0; j < m; ++j) {
                Matrix gram = Matrix::Ones(r, r);
                for (std::size_t l = 0; l < m; ++l)
                    if (l != j) gram.array() *= (cp.factors[l].transpose() * cp.factors[l]).array();
                const Matrix rhs = unfoldings[j] * khatri_rao_except(cp.factors, j);
                cp.factors[j] = gram.completeOrthogonalDecomposition().solve(rhs.transpose()).transpose();
            }
            // Balance column norms across modes.
            for (Eigen::Index k = 0; k < r; ++k) {
                double logsum = 0.0;
                bool zero = false;
                for (const auto& f : cp.factors) {
                    double n = f.col(k).norm();
                    if (n == 0.0) zero = true;
                    else logsum += std::log(n);
                }
                if (zero) continue;
                const double target = std::exp(logsum / static_cast<double>(m));
                for (auto& f : cp.factors) f.col(k) *= target / f.col(k).norm();
            }
            if (it % 10 == 9 || it + 1 == options.max_iters) {
                const double prev = res;
                res = relative_residual(x, cp);
                if (res < options.fit_tol || std::abs(prev - res) < 1e-15 * std::max(1.0, nx)) break;
            }
        }
        res = relative_residual(x, cp);
        if (res < best_res) {
            best_res = res;
            best = std::move(cp);
        }
        if (best_res < options.fit_tol) break;
    }
    if (input.order() == 1) {
        // Drop the implicit trailing singleton: fold its scale into mode 1.
        Matrix a = best.factors[0];
        for (Eigen::Index k = 0; k < r; ++k) a.col(k) *= best.factors[1](0, k);
        best.factors = {a};
    }
    return {std::move(best), best_res};
}

CpBounds cp_bounds(const DenseTensor& x, const RankTolerance& tol, const CpOptions& options,
                   const std::optional<CpDecomposition>& certificate) {
    CpBounds out;
    const auto nr = n_rank(x, tol);
    out.lower = *std::max_element(nr.ranks.begin(), nr.ranks.end());
    if (out.lower == 0) {
        out.upper = 0;
        return out;
    }
    if (certificate) {
        Shape cert_shape;
        for (const auto& f : certificate->factors) cert_shape.push_back(static_cast<std::size_t>(f.rows()));
        if (cert_shape == x.shape()) {
            const double res = relative_residual(x, *certificate);
            if (res < options.fit_tol) {
                out.upper = certificate->rank();
                out.upper_residual = res;
            }
        }
    }
    const std::size_t stop = out.upper ? std::min(*out.upper, options.max_rank + 1) : options.max_rank + 1;
    for (std::size_t r = out.lower; r < stop; ++r) {
        auto [cp, res] = cp_als(x, r, options);
        if (res < options.fit_tol) {
            out.upper = r;
            out.upper_residual = res;
            break;
        }
    }
    return out;
}

}  // namespace tensorrank
