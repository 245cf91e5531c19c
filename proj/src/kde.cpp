#include "kdesample/kde.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "kdesample/errors.hpp"

namespace kdesample {

namespace {

// Plain lower Cholesky; reports the failing pivot column so fit errors can
// name the degenerate direction.
bool cholesky_lower(const Eigen::MatrixXd& a, Eigen::MatrixXd& l, Eigen::Index& bad_col) {
    const Eigen::Index d = a.rows();
    l = Eigen::MatrixXd::Zero(d, d);
    for (Eigen::Index j = 0; j < d; ++j) {
        double diag = a(j, j) - l.row(j).head(j).squaredNorm();
        if (!(diag > 0.0) || !std::isfinite(diag)) {
            bad_col = j;
            return false;
        }
        l(j, j) = std::sqrt(diag);
        for (Eigen::Index i = j + 1; i < d; ++i) {
            l(i, j) = (a(i, j) - l.row(i).head(j).dot(l.row(j).head(j))) / l(j, j);
        }
    }
    bad_col = -1;
    return true;
}

double max_asymmetry(const Eigen::MatrixXd& a) {
    return (a - a.transpose()).cwiseAbs().maxCoeff();
}

}  // namespace

double scott_factor(std::size_t n, std::size_t d) {
    return std::pow(static_cast<double>(n), -1.0 / (static_cast<double>(d) + 4.0));
}

Eigen::MatrixXd sample_covariance(const Eigen::MatrixXd& points) {
    const Eigen::Index n = points.rows();
    if (n < 2) throw DataError("sample covariance requires n >= 2");
    const Eigen::RowVectorXd mean = points.colwise().mean();
    const Eigen::MatrixXd centered = points.rowwise() - mean;
    return (centered.transpose() * centered) / static_cast<double>(n - 1);
}

KdeModel KdeModel::fit(const Eigen::MatrixXd& points, const BandwidthRule& rule) {
    const Eigen::Index n = points.rows();
    const Eigen::Index d = points.cols();
    if (n < 2) throw DataError("KDE fit requires n >= 2 points");
    if (d < 1) throw ShapeError("KDE fit requires d >= 1");
    if (!points.allFinite()) throw DataError("KDE fit requires finite points");

    Eigen::MatrixXd h;
    if (rule.kind == BandwidthRule::Kind::scott) {
        const double factor = scott_factor(static_cast<std::size_t>(n),
                                           static_cast<std::size_t>(d));
        h = (factor * factor) * sample_covariance(points);
    } else {
        h = rule.fixed_matrix;
        if (h.rows() != d || h.cols() != d) {
            throw ShapeError("fixed bandwidth matrix must be d x d");
        }
        if (max_asymmetry(h) > 1e-12) {
            throw ArgumentError("fixed bandwidth matrix must be symmetric");
        }
    }
    h = 0.5 * (h + h.transpose().eval());  // keep symmetry exact

    Eigen::MatrixXd l;
    Eigen::Index bad_col = -1;
    if (!cholesky_lower(h, l, bad_col)) {
        throw FitError(
            "bandwidth covariance is not positive definite; degenerate direction at column " +
            std::to_string(bad_col));
    }

    double log_det = 0.0;
    for (Eigen::Index j = 0; j < d; ++j) log_det += std::log(l(j, j));
    log_det *= 2.0;

    KdeModel model;
    model.points_ = points;
    model.bandwidth_cov_ = std::move(h);
    model.chol_factor_ = std::move(l);
    model.log_norm_const_ =
        -0.5 * (static_cast<double>(d) * std::log(2.0 * std::numbers::pi) + log_det);
    return model;
}

double KdeModel::log_density(const Eigen::VectorXd& x) const {
    const Eigen::Index n = points_.rows();
    const Eigen::Index d = points_.cols();
    if (x.size() != d) throw ShapeError("density: query dimension mismatch");

    // Quadratic forms via the stored Cholesky factor; never invert H.
    Eigen::VectorXd exponents(n);
    const auto lower = chol_factor_.triangularView<Eigen::Lower>();
    for (Eigen::Index i = 0; i < n; ++i) {
        const Eigen::VectorXd u = lower.solve(x - points_.row(i).transpose());
        exponents(i) = -0.5 * u.squaredNorm();
    }
    const double shift = exponents.maxCoeff();
    if (!std::isfinite(shift)) {
        return -std::numeric_limits<double>::infinity();
    }
    const double sum = (exponents.array() - shift).exp().sum();
    return shift + std::log(sum) + log_norm_const_ -
           std::log(static_cast<double>(n));
}

double KdeModel::density(const Eigen::VectorXd& x) const {
    return std::exp(log_density(x));
}

std::pair<Eigen::MatrixXd, std::vector<Eigen::Index>> KdeModel::sample_with_centers(
    std::size_t m, RngStream& rng) const {
    if (m < 1) throw ArgumentError("sample: m must be >= 1");
    const Eigen::Index n = points_.rows();
    const Eigen::Index d = points_.cols();
    Eigen::MatrixXd out(static_cast<Eigen::Index>(m), d);
    std::vector<Eigen::Index> centers(m);
    Eigen::VectorXd z(d);
    for (std::size_t i = 0; i < m; ++i) {
        // Center index first, then the noise vector.
        const auto center = static_cast<Eigen::Index>(
            rng.uniform_index(static_cast<std::size_t>(n)));
        for (Eigen::Index j = 0; j < d; ++j) z(j) = rng.normal();
        centers[i] = center;
        out.row(static_cast<Eigen::Index>(i)) =
            points_.row(center) + (chol_factor_ * z).transpose();
    }
    return {std::move(out), std::move(centers)};
}

Eigen::MatrixXd KdeModel::sample(std::size_t m, RngStream& rng) const {
    return sample_with_centers(m, rng).first;
}

BandwidthRule loo_loglik_bandwidth_search(const Eigen::MatrixXd& points,
                                          const std::vector<double>& grid) {
    const Eigen::Index n = points.rows();
    const Eigen::Index d = points.cols();
    if (grid.empty()) throw ArgumentError("bandwidth search: empty grid");
    for (double c : grid) {
        if (!(c > 0.0)) throw ArgumentError("bandwidth search: multipliers must be > 0");
    }
    if (n < 3) throw DataError("bandwidth search requires n >= 3");

    const double factor = scott_factor(static_cast<std::size_t>(n),
                                       static_cast<std::size_t>(d));
    const Eigen::MatrixXd s = sample_covariance(points);

    std::vector<double> candidates = grid;
    std::sort(candidates.begin(), candidates.end());

    const double neg_inf = -std::numeric_limits<double>::infinity();
    double best_score = neg_inf;
    double best_c = 0.0;

    for (double c : candidates) {
        const Eigen::MatrixXd h = (c * c * factor * factor) * s;
        Eigen::MatrixXd l;
        Eigen::Index bad = -1;
        if (!cholesky_lower(h, l, bad)) {
            throw FitError("bandwidth search: candidate covariance not positive definite");
        }
        double log_det = 0.0;
        for (Eigen::Index j = 0; j < d; ++j) log_det += std::log(l(j, j));
        const double log_norm =
            -0.5 * (static_cast<double>(d) * std::log(2.0 * std::numbers::pi)) - log_det;

        // Pairwise exponents once per candidate.
        Eigen::MatrixXd expo(n, n);
        const auto lower = l.triangularView<Eigen::Lower>();
        for (Eigen::Index i = 0; i < n; ++i) {
            expo(i, i) = neg_inf;
            for (Eigen::Index j = i + 1; j < n; ++j) {
                const Eigen::VectorXd u =
                    lower.solve((points.row(i) - points.row(j)).transpose());
                const double e = -0.5 * u.squaredNorm();
                expo(i, j) = e;
                expo(j, i) = e;
            }
        }

        double score = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            const double shift = expo.row(i).maxCoeff();
            double li = neg_inf;
            if (std::isfinite(shift)) {
                double sum = 0.0;
                for (Eigen::Index j = 0; j < n; ++j) {
                    if (j != i) sum += std::exp(expo(i, j) - shift);
                }
                li = shift + std::log(sum) + log_norm -
                     std::log(static_cast<double>(n - 1));
            }
            // The criterion is sum_i log of the held-out density value; a
            // density that underflows to zero contributes -inf.
            if (std::exp(li) == 0.0) {
                score = neg_inf;
                break;
            }
            score += li;
        }
        if (score > best_score) {  // strict: ascending grid keeps the smallest tie
            best_score = score;
            best_c = c;
        }
    }
    if (best_score == neg_inf) {
        throw SearchError("bandwidth search: all candidates have -inf leave-one-out log-likelihood");
    }
    return BandwidthRule::fixed((best_c * best_c * factor * factor) * s);
}

}  // namespace kdesample
