#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <utility>
#include <vector>

#include "kdesample/rng.hpp"

namespace kdesample {

// Bandwidth choice for KdeModel::fit. Scott scales the sample covariance by
// the squared Scott factor; fixed uses the given SPD matrix as-is.
struct BandwidthRule {
    enum class Kind { scott, fixed };
    Kind kind = Kind::scott;
    Eigen::MatrixXd fixed_matrix;

    static BandwidthRule scott() { return BandwidthRule{}; }
    static BandwidthRule fixed(Eigen::MatrixXd h) {
        return BandwidthRule{Kind::fixed, std::move(h)};
    }
};

// n^(-1/(d+4)).
double scott_factor(std::size_t n, std::size_t d);

// Multivariate Gaussian kernel density estimate over a fitted sample.
// Immutable after fit; density is pure, sample only mutates its rng stream.
class KdeModel {
public:
    // Under the scott rule the bandwidth is scott_factor(n,d)^2 * S with S
    // the unbiased sample covariance. Requires n >= 2 and, for scott, a
    // positive-definite S.
    static KdeModel fit(const Eigen::MatrixXd& points, const BandwidthRule& rule);

    // (1/n) sum_i K_H(x - x_i), evaluated in log space with a max shift so
    // distant queries underflow to 0 instead of producing NaN.
    double density(const Eigen::VectorXd& x) const;
    double log_density(const Eigen::VectorXd& x) const;

    // Each row is points[i] + L*z with i uniform over the fitted sample and
    // z i.i.d. standard normal; the center index is drawn before the noise
    // vector, from the same stream.
    Eigen::MatrixXd sample(std::size_t m, RngStream& rng) const;
    std::pair<Eigen::MatrixXd, std::vector<Eigen::Index>> sample_with_centers(
        std::size_t m, RngStream& rng) const;

    const Eigen::MatrixXd& points() const { return points_; }
    const Eigen::MatrixXd& bandwidth_cov() const { return bandwidth_cov_; }
    const Eigen::MatrixXd& chol_factor() const { return chol_factor_; }
    double log_norm_const() const { return log_norm_const_; }

private:
    KdeModel() = default;

    Eigen::MatrixXd points_;         // n x d fitted sample
    Eigen::MatrixXd bandwidth_cov_;  // d x d SPD bandwidth matrix
    Eigen::MatrixXd chol_factor_;    // lower triangular, L*L^T = bandwidth_cov
    double log_norm_const_ = 0.0;    // log 1/sqrt((2*pi)^d |H|)
};

// Unbiased (n-1) sample covariance of the rows.
Eigen::MatrixXd sample_covariance(const Eigen::MatrixXd& points);

// Leave-one-out log-likelihood grid search over scalar multipliers of the
// Scott bandwidth. Returns fixed(c*^2 * factor^2 * S) for the best c*, ties
// broken toward the smallest multiplier. Requires n >= 3 and a nonempty
// grid of positive multipliers.
BandwidthRule loo_loglik_bandwidth_search(const Eigen::MatrixXd& points,
                                          const std::vector<double>& grid);

}  // namespace kdesample
