#include "kdesample/neighbors.hpp"

#include <algorithm>
#include <cmath>

#include "kdesample/errors.hpp"

namespace kdesample {

NeighborIndex::NeighborIndex(Eigen::MatrixXd data) : data_(std::move(data)) {
    if (data_.rows() < 1) throw DataError("neighbor index needs at least one row");
    if (!data_.allFinite()) throw DataError("neighbor index requires finite data");
}

std::vector<Neighbor> NeighborIndex::knn(const Eigen::VectorXd& query, std::size_t k,
                                         std::optional<Eigen::Index> exclude_self_at) const {
    if (query.size() != data_.cols()) throw ShapeError("knn: query dimension mismatch");
    const Eigen::Index n = data_.rows();
    const std::size_t candidates =
        static_cast<std::size_t>(n) - (exclude_self_at.has_value() ? 1 : 0);
    if (k < 1 || k > candidates) {
        throw ArgumentError("knn: k must be in [1, " + std::to_string(candidates) + "]");
    }

    std::vector<Neighbor> all;
    all.reserve(candidates);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (exclude_self_at && *exclude_self_at == i) continue;
        all.push_back({i, (data_.row(i).transpose() - query).norm()});
    }
    const auto by_distance_then_row = [](const Neighbor& a, const Neighbor& b) {
        return a.distance < b.distance || (a.distance == b.distance && a.row < b.row);
    };
    std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k), all.end(),
                      by_distance_then_row);
    all.resize(k);
    return all;
}

double avg_distance_to_k_nearest(const Eigen::VectorXd& point,
                                 const Eigen::MatrixXd& targets, std::size_t k) {
    const auto m = static_cast<std::size_t>(targets.rows());
    if (k < 1 || k > m) throw ArgumentError("avg_distance_to_k_nearest: k must be in [1, m]");
    if (point.size() != targets.cols()) {
        throw ShapeError("avg_distance_to_k_nearest: dimension mismatch");
    }
    std::vector<double> dist(m);
    for (std::size_t i = 0; i < m; ++i) {
        dist[i] = (targets.row(static_cast<Eigen::Index>(i)).transpose() - point).norm();
    }
    std::nth_element(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k - 1),
                     dist.end());
    double sum = 0.0;
    for (std::size_t i = 0; i < k; ++i) sum += dist[i];
    return sum / static_cast<double>(k);
}

}  // namespace kdesample
