#include "tensorrank/linalg.hpp"

#include "tensorrank/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <charconv>

namespace tensorrank {

RankTolerance RankTolerance::relative(double v) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw ArgumentError("tolerance must be finite and >= 0");
    return {Mode::relative, v};
}

RankTolerance RankTolerance::absolute(double v) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw ArgumentError("tolerance must be finite and >= 0");
    return {Mode::absolute, v};
}

double RankTolerance::threshold(Eigen::Index rows, Eigen::Index cols, double sigma_max) const {
    if (mode == Mode::absolute) return value.value_or(0.0);
    const double rel = value ? *value
                             : static_cast<double>(std::max(rows, cols)) *
                                   std::numeric_limits<double>::epsilon();
    return rel * sigma_max;
}

std::string RankTolerance::describe() const {
    std::string out = mode == Mode::relative ? "relative:" : "absolute:";
    if (!value) return out + "default";
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, *value);
    return out.append(buf, ptr);
}

RankTolerance RankTolerance::parse(const std::string& text) {
    if (text.empty() || text == "default" || text == "relative:default") return relative_default();
    auto colon = text.find(':');
    std::string kind = colon == std::string::npos ? "relative" : text.substr(0, colon);
    std::string num = colon == std::string::npos ? text : text.substr(colon + 1);
    double v = 0.0;
    try {
        std::size_t used = 0;
        v = std::stod(num, &used);
        if (used != num.size()) throw std::invalid_argument(num);
    } catch (const std::exception&) {
        throw ArgumentError("cannot parse tolerance '" + text + "'");
    }
    if (kind == "relative") return relative(v);
    if (kind == "absolute") return absolute(v);
    throw ArgumentError("tolerance kind must be relative or absolute, got '" + kind + "'");
}

Eigen::VectorXd singular_values(const Matrix& m) {
    if (m.size() == 0) return {};
    Eigen::BDCSVD<Matrix> svd(m);
    if (svd.info() != Eigen::Success)
        throw NumericError("SVD did not converge for " + std::to_string(m.rows()) + "x" +
                           std::to_string(m.cols()) + " matrix");
    return svd.singularValues();
}

std::size_t matrix_rank(const Matrix& m, const RankTolerance& tol) {
    if (m.size() == 0) return 0;
    const Eigen::VectorXd s = singular_values(m);
    const double smax = s.size() ? s(0) : 0.0;
    const double thr = tol.threshold(m.rows(), m.cols(), smax);
    std::size_t r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > thr) ++r;
    return r;
}

RowBasis row_basis(const Matrix& m, const RankTolerance& tol) {
    const std::size_t r = matrix_rank(m, tol);
    // Householder QR with column pivoting on a = m^T; column j of a is row j of m.
    Matrix a = m.transpose();
    const Eigen::Index n = a.cols();
    const Eigen::Index d = a.rows();
    std::vector<Eigen::Index> perm(static_cast<std::size_t>(n));
    for (Eigen::Index j = 0; j < n; ++j) perm[static_cast<std::size_t>(j)] = j;

    RowBasis basis;
    for (Eigen::Index k = 0; k < static_cast<Eigen::Index>(r) && k < d; ++k) {
        // Residual norms of the trailing block, recomputed exactly each step.
        Eigen::Index best = k;
        double best_norm = -1.0;
        for (Eigen::Index j = k; j < n; ++j) {
            double nrm = a.col(j).tail(d - k).norm();
            bool better = nrm > best_norm * (1.0 + 1e-12);
            bool tie = !better && nrm >= best_norm * (1.0 - 1e-12) && perm[static_cast<std::size_t>(j)] <
                                                                          perm[static_cast<std::size_t>(best)];
            if (better || tie) {
                best = j;
                best_norm = nrm;
            }
        }
        if (best != k) {
            a.col(k).swap(a.col(best));
            std::swap(perm[static_cast<std::size_t>(k)], perm[static_cast<std::size_t>(best)]);
        }
        basis.indices.push_back(static_cast<std::size_t>(perm[static_cast<std::size_t>(k)]) + 1);

        Eigen::VectorXd v = a.col(k).tail(d - k);
        const double alpha = v.norm();
        if (alpha == 0.0) continue;
        v(0) += v(0) >= 0.0 ? alpha : -alpha;
        const double vnorm2 = v.squaredNorm();
        if (vnorm2 == 0.0) continue;
        for (Eigen::Index j = k; j < n; ++j) {
            auto col = a.col(j).tail(d - k);
            col -= (2.0 * v.dot(col) / vnorm2) * v;
        }
    }
    std::sort(basis.indices.begin(), basis.indices.end());
    return basis;
}

Matrix select_rows(const Matrix& m, const RowBasis& basis) {
    Matrix out(static_cast<Eigen::Index>(basis.rank()), m.cols());
    for (std::size_t i = 0; i < basis.rank(); ++i) {
        const auto idx = basis.indices[i];
        if (idx < 1 || idx > static_cast<std::size_t>(m.rows()))
            throw ArgumentError("row basis index out of range");
        out.row(static_cast<Eigen::Index>(i)) = m.row(static_cast<Eigen::Index>(idx - 1));
    }
    return out;
}

bool in_row_span(const Matrix& m, const RowBasis& basis, const Eigen::VectorXd& v,
                 const RankTolerance& tol) {
    if (v.size() != m.cols())
        throw ArgumentError("vector length " + std::to_string(v.size()) + " differs from column count " +
                            std::to_string(m.cols()));
    Matrix stacked(static_cast<Eigen::Index>(basis.rank()) + 1, m.cols());
    stacked.topRows(static_cast<Eigen::Index>(basis.rank())) = select_rows(m, basis);
    stacked.bottomRows(1) = v.transpose();
    return matrix_rank(stacked, tol) <= basis.rank();
}

}  // namespace tensorrank
