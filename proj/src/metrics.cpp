#include "kdesample/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "kdesample/errors.hpp"

namespace kdesample {

ConfusionMatrix confusion(const std::vector<Label>& y_true,
                          const std::vector<Label>& y_pred) {
    if (y_true.size() != y_pred.size()) {
        throw ShapeError("confusion: label vectors have different lengths");
    }
    if (y_true.empty()) throw ArgumentError("confusion: empty label vectors");
    ConfusionMatrix cm;
    for (std::size_t i = 0; i < y_true.size(); ++i) {
        const bool truth = y_true[i] == Label::positive;
        const bool pred = y_pred[i] == Label::positive;
        if (truth && pred) ++cm.tp;
        else if (!truth && pred) ++cm.fp;
        else if (!truth && !pred) ++cm.tn;
        else ++cm.fn;
    }
    return cm;
}

double g_mean(const ConfusionMatrix& cm) {
    const std::int64_t pos = cm.tp + cm.fn;
    const std::int64_t neg = cm.tn + cm.fp;
    if (pos < 1 || neg < 1) {
        throw MetricError("g_mean: needs at least one instance of each class");
    }
    const double tpr = static_cast<double>(cm.tp) / static_cast<double>(pos);
    const double tnr = static_cast<double>(cm.tn) / static_cast<double>(neg);
    return std::sqrt(tpr * tnr);
}

F1Score f1_detail(const ConfusionMatrix& cm) {
    if (cm.tp == 0) return {0.0, true};
    const double precision =
        static_cast<double>(cm.tp) / static_cast<double>(cm.tp + cm.fp);
    const double recall =
        static_cast<double>(cm.tp) / static_cast<double>(cm.tp + cm.fn);
    return {2.0 * precision * recall / (precision + recall), false};
}

double f1(const ConfusionMatrix& cm) {
    return f1_detail(cm).value;
}

double auc(const std::vector<Label>& y_true, const std::vector<double>& scores) {
    if (y_true.size() != scores.size()) {
        throw ShapeError("auc: label and score vectors have different lengths");
    }
    const std::size_t n = y_true.size();
    std::size_t n_pos = 0;
    for (Label l : y_true) {
        if (l == Label::positive) ++n_pos;
    }
    const std::size_t n_neg = n - n_pos;
    if (n_pos == 0 || n_neg == 0) {
        throw MetricError("auc: both classes must be present");
    }
    for (double s : scores) {
        if (!std::isfinite(s)) throw ArgumentError("auc: scores must be finite");
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

    // Midranks over tie groups, 1-based.
    double positive_rank_sum = 0.0;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j < n && scores[order[j]] == scores[order[i]]) ++j;
        const double midrank = 0.5 * static_cast<double>(i + j + 1);  // ranks i+1..j
        for (std::size_t t = i; t < j; ++t) {
            if (y_true[order[t]] == Label::positive) positive_rank_sum += midrank;
        }
        i = j;
    }
    const double u = positive_rank_sum -
                     0.5 * static_cast<double>(n_pos) * static_cast<double>(n_pos + 1);
    return u / (static_cast<double>(n_pos) * static_cast<double>(n_neg));
}

}  // namespace kdesample
