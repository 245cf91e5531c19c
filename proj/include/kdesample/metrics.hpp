#pragma once

#include <cstdint>
#include <vector>

#include "kdesample/dataset.hpp"

namespace kdesample {

struct ConfusionMatrix {
    std::int64_t tp = 0;
    std::int64_t fp = 0;
    std::int64_t tn = 0;
    std::int64_t fn = 0;
};

ConfusionMatrix confusion(const std::vector<Label>& y_true,
                          const std::vector<Label>& y_pred);

// sqrt(TPR * TNR). Requires at least one true positive-class and one true
// negative-class instance.
double g_mean(const ConfusionMatrix& cm);

struct F1Score {
    double value = 0.0;
    bool degenerate = false;  // tp == 0: value pinned to 0 instead of NaN
};

F1Score f1_detail(const ConfusionMatrix& cm);
double f1(const ConfusionMatrix& cm);

// Probability that a random positive outranks a random negative, ties worth
// one half (Mann-Whitney with midranks). Exact for tied scores.
double auc(const std::vector<Label>& y_true, const std::vector<double>& scores);

}  // namespace kdesample
