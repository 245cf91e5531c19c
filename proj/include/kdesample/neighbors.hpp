#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

namespace kdesample {

struct Neighbor {
    Eigen::Index row;
    double distance;
};

// Exact brute-force Euclidean nearest neighbors. No spatial index: the
// datasets here are small enough that O(n*d) per query is fine and there is
// no index implementation to get wrong.
class NeighborIndex {
public:
    explicit NeighborIndex(Eigen::MatrixXd data);

    // k nearest rows to the query, distances nondecreasing, ties broken by
    // ascending row index. exclude_self_at removes one row from the
    // candidate set (for queries that are themselves index members).
    std::vector<Neighbor> knn(const Eigen::VectorXd& query, std::size_t k,
                              std::optional<Eigen::Index> exclude_self_at = {}) const;

    const Eigen::MatrixXd& data() const { return data_; }
    Eigen::Index size() const { return data_.rows(); }

private:
    Eigen::MatrixXd data_;
};

// Mean of the k smallest Euclidean distances from point to rows of targets.
double avg_distance_to_k_nearest(const Eigen::VectorXd& point,
                                 const Eigen::MatrixXd& targets, std::size_t k);

}  // namespace kdesample
