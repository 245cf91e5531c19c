#pragma once

#include <Eigen/Dense>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "kdesample/dataset.hpp"
#include "kdesample/rng.hpp"

namespace kdesample {

enum class Strategy { ros, smote, adasyn, nearmiss, kde };

Strategy strategy_from_name(const std::string& name);
std::string strategy_name(Strategy s);

struct ResampleRequest {
    Strategy strategy = Strategy::kde;
    // Desired majority:minority ratio after resampling; 1.0 = fully balanced.
    double target_ratio = 1.0;
    // 0 = strategy default (smote/adasyn 5, nearmiss 3).
    std::size_t k_neighbors = 0;
    Seed seed;
};

// Where a synthetic (or, for nearmiss, retained) row came from. Row indices
// refer to the input dataset passed to resample().
struct Provenance {
    Eigen::Index output_row = -1;
    Eigen::Index source_row = -1;
    Eigen::Index neighbor_row = -1;                                // -1 if unused
    double t = std::numeric_limits<double>::quiet_NaN();           // NaN if unused
};

struct ResampleResult {
    Dataset dataset;
    // Oversamplers: true on appended synthetic rows. NearMiss: true on the
    // retained majority rows.
    std::vector<bool> synthetic_mask;
    std::vector<Provenance> provenance;
    std::vector<std::string> warnings;
};

// ---- strategy-level operations (indices refer to rows of the input matrix)

// Random oversampling: exact copies, uniform with replacement.
Eigen::MatrixXd ros(const Eigen::MatrixXd& minority, std::size_t n_new, RngStream& rng);
std::pair<Eigen::MatrixXd, std::vector<Eigen::Index>> ros_with_sources(
    const Eigen::MatrixXd& minority, std::size_t n_new, RngStream& rng);

struct Interpolation {
    Eigen::Index source;
    Eigen::Index neighbor;
    double t;
};

// p + t*(p_k - p): the synthetic point slides from the source toward the
// neighbor as t goes 0 -> 1.
Eigen::RowVectorXd interpolate(const Eigen::RowVectorXd& p, const Eigen::RowVectorXd& p_k,
                               double t);

// Linear interpolation between a uniformly chosen minority row and one of
// its k nearest minority neighbors, t uniform on [0,1].
std::pair<Eigen::MatrixXd, std::vector<Interpolation>> smote(
    const Eigen::MatrixXd& minority, std::size_t n_new, std::size_t k, RngStream& rng);

// Difficulty of each minority point: fraction of majority members among its
// k nearest neighbors in the combined minority+majority set.
std::vector<double> adasyn_difficulty(const Eigen::MatrixXd& minority,
                                      const Eigen::MatrixXd& majority, std::size_t k);

// Largest-remainder allocation of n_new across weights (nonnegative, not
// all zero); remainder ties go to the lower index. Sums exactly to n_new.
std::vector<std::size_t> largest_remainder_allocation(const std::vector<double>& weights,
                                                      std::size_t n_new);

// SMOTE-style generation with per-seed counts proportional to difficulty.
// Falls back to uniform allocation (with a warning) when no minority point
// has a majority neighbor.
std::pair<Eigen::MatrixXd, std::vector<Interpolation>> adasyn(
    const Eigen::MatrixXd& minority, const Eigen::MatrixXd& majority, std::size_t n_new,
    std::size_t k, RngStream& rng, std::vector<std::string>* warnings = nullptr);

// Indices (ascending) of the n_keep majority rows with the smallest average
// distance to their k nearest minority points. Deterministic, no rng.
std::vector<Eigen::Index> nearmiss(const Eigen::MatrixXd& majority,
                                   const Eigen::MatrixXd& minority, std::size_t n_keep,
                                   std::size_t k);

// Fit a Scott-rule KDE on the minority rows and draw n_new samples. On a
// singular covariance, retries once with a jittered covariance
// (1e-9 * trace(S)/d on the diagonal, logged as a warning), then propagates.
// Second member: center index per sample.
std::pair<Eigen::MatrixXd, std::vector<Eigen::Index>> kde_oversample(
    const Eigen::MatrixXd& minority, std::size_t n_new, RngStream& rng,
    std::vector<std::string>* warnings = nullptr);

// Rebalances ds to the requested majority:minority ratio. Oversamplers
// append synthetic minority rows after all original rows; nearmiss keeps
// round(minority * ratio) majority rows instead.
ResampleResult resample(const Dataset& ds, const ResampleRequest& req);

}  // namespace kdesample
