#include "kdesample/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "kdesample/errors.hpp"
#include "kdesample/kde.hpp"
#include "kdesample/neighbors.hpp"

namespace kdesample {

namespace {

constexpr std::size_t kDefaultSmoteK = 5;
constexpr std::size_t kDefaultNearMissK = 3;

// k nearest minority neighbors of every minority row, self excluded.
std::vector<std::vector<Eigen::Index>> minority_neighbor_lists(
    const Eigen::MatrixXd& minority, std::size_t k) {
    const NeighborIndex index(minority);
    std::vector<std::vector<Eigen::Index>> lists(static_cast<std::size_t>(minority.rows()));
    for (Eigen::Index i = 0; i < minority.rows(); ++i) {
        const auto neighbors = index.knn(minority.row(i).transpose(), k, i);
        auto& list = lists[static_cast<std::size_t>(i)];
        list.reserve(k);
        for (const auto& nb : neighbors) list.push_back(nb.row);
    }
    return lists;
}

}  // namespace

Strategy strategy_from_name(const std::string& name) {
    if (name == "ros") return Strategy::ros;
    if (name == "smote") return Strategy::smote;
    if (name == "adasyn") return Strategy::adasyn;
    if (name == "nearmiss") return Strategy::nearmiss;
    if (name == "kde") return Strategy::kde;
    throw ConfigError("unknown resampling strategy: " + name);
}

std::string strategy_name(Strategy s) {
    switch (s) {
        case Strategy::ros: return "ros";
        case Strategy::smote: return "smote";
        case Strategy::adasyn: return "adasyn";
        case Strategy::nearmiss: return "nearmiss";
        case Strategy::kde: return "kde";
    }
    return "?";
}

std::pair<Eigen::MatrixXd, std::vector<Eigen::Index>> ros_with_sources(
    const Eigen::MatrixXd& minority, std::size_t n_new, RngStream& rng) {
    const auto m = static_cast<std::size_t>(minority.rows());
    if (m < 1) throw DataError("ros: minority set is empty");
    Eigen::MatrixXd out(static_cast<Eigen::Index>(n_new), minority.cols());
    std::vector<Eigen::Index> sources(n_new);
    for (std::size_t i = 0; i < n_new; ++i) {
        const auto src = static_cast<Eigen::Index>(rng.uniform_index(m));
        sources[i] = src;
        out.row(static_cast<Eigen::Index>(i)) = minority.row(src);
    }
    return {std::move(out), std::move(sources)};
}

Eigen::MatrixXd ros(const Eigen::MatrixXd& minority, std::size_t n_new, RngStream& rng) {
    return ros_with_sources(minority, n_new, rng).first;
}

Eigen::RowVectorXd interpolate(const Eigen::RowVectorXd& p, const Eigen::RowVectorXd& p_k,
                               double t) {
    return p + t * (p_k - p);
}

std::pair<Eigen::MatrixXd, std::vector<Interpolation>> smote(
    const Eigen::MatrixXd& minority, std::size_t n_new, std::size_t k, RngStream& rng) {
    const auto m = static_cast<std::size_t>(minority.rows());
    if (m < 2) throw DataError("smote: needs at least 2 minority points");
    if (k < 1 || k > m - 1) {
        throw ArgumentError("smote: k must be in [1, m-1]");
    }
    const auto lists = minority_neighbor_lists(minority, k);

    Eigen::MatrixXd out(static_cast<Eigen::Index>(n_new), minority.cols());
    std::vector<Interpolation> provenance;
    provenance.reserve(n_new);
    for (std::size_t i = 0; i < n_new; ++i) {
        const auto src = static_cast<Eigen::Index>(rng.uniform_index(m));
        const Eigen::Index nb = lists[static_cast<std::size_t>(src)][rng.uniform_index(k)];
        const double t = rng.uniform01();
        out.row(static_cast<Eigen::Index>(i)) =
            interpolate(minority.row(src), minority.row(nb), t);
        provenance.push_back({src, nb, t});
    }
    return {std::move(out), std::move(provenance)};
}

std::vector<double> adasyn_difficulty(const Eigen::MatrixXd& minority,
                                      const Eigen::MatrixXd& majority, std::size_t k) {
    const auto m = static_cast<std::size_t>(minority.rows());
    const auto big_m = static_cast<std::size_t>(majority.rows());
    if (k < 1 || k > m + big_m - 1) {
        throw ArgumentError("adasyn: k must be in [1, m + M - 1]");
    }
    // Combined set with minority rows first, so row i excludes itself.
    Eigen::MatrixXd combined(minority.rows() + majority.rows(), minority.cols());
    combined.topRows(minority.rows()) = minority;
    combined.bottomRows(majority.rows()) = majority;
    const NeighborIndex index(combined);

    std::vector<double> r(m);
    for (std::size_t i = 0; i < m; ++i) {
        const auto neighbors =
            index.knn(minority.row(static_cast<Eigen::Index>(i)).transpose(), k,
                      static_cast<Eigen::Index>(i));
        std::size_t majority_count = 0;
        for (const auto& nb : neighbors) {
            if (nb.row >= minority.rows()) ++majority_count;
        }
        r[i] = static_cast<double>(majority_count) / static_cast<double>(k);
    }
    return r;
}

std::vector<std::size_t> largest_remainder_allocation(const std::vector<double>& weights,
                                                      std::size_t n_new) {
    const std::size_t m = weights.size();
    double total = 0.0;
    for (double w : weights) {
        if (w < 0.0) throw ArgumentError("allocation weights must be nonnegative");
        total += w;
    }
    if (!(total > 0.0)) throw ArgumentError("allocation weights must not all be zero");

    std::vector<std::size_t> alloc(m, 0);
    std::vector<std::pair<double, std::size_t>> remainders(m);
    std::size_t assigned = 0;
    for (std::size_t i = 0; i < m; ++i) {
        const double quota = static_cast<double>(n_new) * weights[i] / total;
        alloc[i] = static_cast<std::size_t>(std::floor(quota));
        remainders[i] = {quota - std::floor(quota), i};
        assigned += alloc[i];
    }
    std::sort(remainders.begin(), remainders.end(),
              [](const auto& a, const auto& b) {
                  return a.first > b.first ||
                         (a.first == b.first && a.second < b.second);
              });
    for (std::size_t i = 0; assigned < n_new; ++i, ++assigned) {
        ++alloc[remainders[i % m].second];
    }
    return alloc;
}

std::pair<Eigen::MatrixXd, std::vector<Interpolation>> adasyn(
    const Eigen::MatrixXd& minority, const Eigen::MatrixXd& majority, std::size_t n_new,
    std::size_t k, RngStream& rng, std::vector<std::string>* warnings) {
    const auto m = static_cast<std::size_t>(minority.rows());
    if (m < 2) throw DataError("adasyn: needs at least 2 minority points");

    std::vector<double> r = adasyn_difficulty(minority, majority, k);
    const double total = std::accumulate(r.begin(), r.end(), 0.0);
    if (total == 0.0) {
        // Every minority point is interior to its own class.
        if (warnings) {
            warnings->push_back(
                "adasyn: no minority point has a majority neighbor; using uniform allocation");
        }
        std::fill(r.begin(), r.end(), 1.0);
    }
    const std::vector<std::size_t> alloc = largest_remainder_allocation(r, n_new);

    // Generation interpolates toward minority-only neighbors.
    const std::size_t gen_k = std::min(k, m - 1);
    const auto lists = minority_neighbor_lists(minority, gen_k);

    Eigen::MatrixXd out(static_cast<Eigen::Index>(n_new), minority.cols());
    std::vector<Interpolation> provenance;
    provenance.reserve(n_new);
    Eigen::Index row = 0;
    for (std::size_t seed = 0; seed < m; ++seed) {
        for (std::size_t c = 0; c < alloc[seed]; ++c) {
            const Eigen::Index nb = lists[seed][rng.uniform_index(gen_k)];
            const double t = rng.uniform01();
            out.row(row++) = interpolate(minority.row(static_cast<Eigen::Index>(seed)),
                                         minority.row(nb), t);
            provenance.push_back({static_cast<Eigen::Index>(seed), nb, t});
        }
    }
    return {std::move(out), std::move(provenance)};
}

std::vector<Eigen::Index> nearmiss(const Eigen::MatrixXd& majority,
                                   const Eigen::MatrixXd& minority, std::size_t n_keep,
                                   std::size_t k) {
    const auto big_m = static_cast<std::size_t>(majority.rows());
    const auto m = static_cast<std::size_t>(minority.rows());
    if (n_keep > big_m) throw ArgumentError("nearmiss: n_keep exceeds majority size");
    if (k < 1 || k > m) throw ArgumentError("nearmiss: k must be in [1, m]");

    std::vector<std::pair<double, Eigen::Index>> scored(big_m);
    for (std::size_t i = 0; i < big_m; ++i) {
        scored[i] = {avg_distance_to_k_nearest(
                         majority.row(static_cast<Eigen::Index>(i)).transpose(), minority, k),
                     static_cast<Eigen::Index>(i)};
    }
    std::sort(scored.begin(), scored.end());  // (distance, row): ties by ascending row
    std::vector<Eigen::Index> keep(n_keep);
    for (std::size_t i = 0; i < n_keep; ++i) keep[i] = scored[i].second;
    std::sort(keep.begin(), keep.end());
    return keep;
}

std::pair<Eigen::MatrixXd, std::vector<Eigen::Index>> kde_oversample(
    const Eigen::MatrixXd& minority, std::size_t n_new, RngStream& rng,
    std::vector<std::string>* warnings) {
    const auto m = static_cast<std::size_t>(minority.rows());
    if (m < 2) throw DataError("kde oversampling: needs at least 2 minority points");

    KdeModel model = [&] {
        try {
            return KdeModel::fit(minority, BandwidthRule::scott());
        } catch (const FitError&) {
            // One retry with a jittered covariance, then propagate.
            const Eigen::Index d = minority.cols();
            const Eigen::MatrixXd s = sample_covariance(minority);
            const double eps = 1e-9 * s.trace() / static_cast<double>(d);
            const double factor =
                scott_factor(m, static_cast<std::size_t>(d));
            const Eigen::MatrixXd jittered =
                (factor * factor) *
                (s + eps * Eigen::MatrixXd::Identity(d, d));
            KdeModel retried = KdeModel::fit(minority, BandwidthRule::fixed(jittered));
            if (warnings) {
                warnings->push_back(
                    "kde: minority covariance singular; added diagonal jitter " +
                    std::to_string(eps));
            }
            return retried;
        }
    }();
    return model.sample_with_centers(n_new, rng);
}

ResampleResult resample(const Dataset& ds, const ResampleRequest& req) {
    if (req.target_ratio < 1.0) {
        throw ArgumentError("resample: target_ratio must be >= 1");
    }
    const auto counts = class_counts(ds);
    const auto minority_idx = ds.indices_of(Label::positive);
    const auto majority_idx = ds.indices_of(Label::negative);
    const Eigen::MatrixXd minority = ds.rows_of(Label::positive);
    const Eigen::MatrixXd majority = ds.rows_of(Label::negative);
    const auto m = static_cast<std::size_t>(counts.n_minority);

    std::vector<std::string> warnings;
    RngStream rng(req.seed, "resample/" + strategy_name(req.strategy));

    if (req.strategy == Strategy::nearmiss) {
        const auto n_keep = static_cast<std::size_t>(std::llround(
            static_cast<double>(counts.n_minority) * req.target_ratio));
        std::size_t k = req.k_neighbors == 0 ? kDefaultNearMissK : req.k_neighbors;
        if (k > m) {
            warnings.push_back("nearmiss: k clamped from " + std::to_string(k) + " to " +
                               std::to_string(m));
            k = m;
        }
        const std::vector<Eigen::Index> keep = nearmiss(majority, minority, n_keep, k);

        std::vector<bool> keep_flag(static_cast<std::size_t>(ds.n()), false);
        for (Eigen::Index i : ds.indices_of(Label::positive)) {
            keep_flag[static_cast<std::size_t>(i)] = true;
        }
        std::vector<bool> retained_flag(static_cast<std::size_t>(ds.n()), false);
        for (Eigen::Index local : keep) {
            const Eigen::Index orig = majority_idx[static_cast<std::size_t>(local)];
            keep_flag[static_cast<std::size_t>(orig)] = true;
            retained_flag[static_cast<std::size_t>(orig)] = true;
        }
        std::vector<Eigen::Index> rows;
        for (Eigen::Index i = 0; i < ds.n(); ++i) {
            if (keep_flag[static_cast<std::size_t>(i)]) rows.push_back(i);
        }
        Eigen::MatrixXd feat(static_cast<Eigen::Index>(rows.size()), ds.dim());
        std::vector<Label> labels(rows.size());
        std::vector<bool> mask(rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            feat.row(static_cast<Eigen::Index>(i)) = ds.features().row(rows[i]);
            labels[i] = ds.labels()[static_cast<std::size_t>(rows[i])];
            mask[i] = retained_flag[static_cast<std::size_t>(rows[i])];
        }
        Dataset out(std::move(feat), std::move(labels), ds.feature_names(),
                    ds.positive_name(), ds.negative_name(), ds.label_column_name());
        return {std::move(out), std::move(mask), {}, std::move(warnings)};
    }

    // Oversampling strategies: grow the minority to round(majority / ratio).
    const auto target_minority = static_cast<Eigen::Index>(std::llround(
        static_cast<double>(counts.n_majority) / req.target_ratio));
    const Eigen::Index n_new_signed = target_minority - counts.n_minority;
    const std::size_t n_new = n_new_signed > 0 ? static_cast<std::size_t>(n_new_signed) : 0;

    Eigen::MatrixXd synthetic(0, ds.dim());
    std::vector<Provenance> provenance;
    if (n_new > 0) {
        switch (req.strategy) {
            case Strategy::ros: {
                auto [rows, sources] = ros_with_sources(minority, n_new, rng);
                synthetic = std::move(rows);
                provenance.reserve(sources.size());
                for (std::size_t i = 0; i < sources.size(); ++i) {
                    provenance.push_back(
                        {ds.n() + static_cast<Eigen::Index>(i),
                         minority_idx[static_cast<std::size_t>(sources[i])], -1,
                         std::numeric_limits<double>::quiet_NaN()});
                }
                break;
            }
            case Strategy::smote:
            case Strategy::adasyn: {
                std::size_t k = req.k_neighbors == 0 ? kDefaultSmoteK : req.k_neighbors;
                if (m < 2) throw DataError("resample: oversampling needs >= 2 minority rows");
                if (req.strategy == Strategy::smote && k > m - 1) {
                    warnings.push_back("smote: k clamped from " + std::to_string(k) +
                                       " to " + std::to_string(m - 1));
                    k = m - 1;
                }
                if (req.strategy == Strategy::adasyn) {
                    const std::size_t cap =
                        m + static_cast<std::size_t>(counts.n_majority) - 1;
                    if (k > cap) {
                        warnings.push_back("adasyn: k clamped from " + std::to_string(k) +
                                           " to " + std::to_string(cap));
                        k = cap;
                    }
                }
                auto [rows, interp] =
                    req.strategy == Strategy::smote
                        ? smote(minority, n_new, k, rng)
                        : adasyn(minority, majority, n_new, k, rng, &warnings);
                synthetic = std::move(rows);
                provenance.reserve(interp.size());
                for (std::size_t i = 0; i < interp.size(); ++i) {
                    provenance.push_back(
                        {ds.n() + static_cast<Eigen::Index>(i),
                         minority_idx[static_cast<std::size_t>(interp[i].source)],
                         minority_idx[static_cast<std::size_t>(interp[i].neighbor)],
                         interp[i].t});
                }
                break;
            }
            case Strategy::kde: {
                auto [rows, centers] = kde_oversample(minority, n_new, rng, &warnings);
                synthetic = std::move(rows);
                provenance.reserve(centers.size());
                for (std::size_t i = 0; i < centers.size(); ++i) {
                    provenance.push_back(
                        {ds.n() + static_cast<Eigen::Index>(i),
                         minority_idx[static_cast<std::size_t>(centers[i])], -1,
                         std::numeric_limits<double>::quiet_NaN()});
                }
                break;
            }
            case Strategy::nearmiss:
                break;  // handled above
        }
    }

    Eigen::MatrixXd feat(ds.n() + synthetic.rows(), ds.dim());
    feat.topRows(ds.n()) = ds.features();
    feat.bottomRows(synthetic.rows()) = synthetic;
    std::vector<Label> labels = ds.labels();
    labels.insert(labels.end(), static_cast<std::size_t>(synthetic.rows()),
                  Label::positive);
    std::vector<bool> mask(static_cast<std::size_t>(ds.n()), false);
    mask.insert(mask.end(), static_cast<std::size_t>(synthetic.rows()), true);

    Dataset out(std::move(feat), std::move(labels), ds.feature_names(),
                ds.positive_name(), ds.negative_name(), ds.label_column_name());
    return {std::move(out), std::move(mask), std::move(provenance), std::move(warnings)};
}

}  // namespace kdesample
