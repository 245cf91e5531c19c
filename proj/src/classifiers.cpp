#include "kdesample/classifiers.hpp"

#include <algorithm>
#include <cmath>

#include "kdesample/errors.hpp"

namespace kdesample {

namespace {

double sigmoid(double z) {
    if (z >= 0.0) {
        return 1.0 / (1.0 + std::exp(-z));
    }
    const double e = std::exp(z);
    return e / (1.0 + e);
}

// log(1 + exp(-|z|)) + max(z,0) - z*y, the stable BCE of a logit.
double bce_from_logit(double z, double y) {
    return std::max(z, 0.0) - z * y + std::log1p(std::exp(-std::abs(z)));
}

struct Forward {
    Eigen::VectorXd pre;     // hidden pre-activation
    Eigen::VectorXd hidden;  // relu(pre)
    double logit = 0.0;
};

Forward forward_pass(const MlpParams& p, const Eigen::VectorXd& x) {
    Forward f;
    f.pre = p.w1 * x + p.b1;
    f.hidden = f.pre.cwiseMax(0.0);
    f.logit = p.w2.dot(f.hidden) + p.b2;
    return f;
}

}  // namespace

KnnClassifier::KnnClassifier(const Dataset& train, std::size_t k)
    : index_(train.features()), labels_(train.labels()), k_(k) {
    if (k_ < 1 || k_ > static_cast<std::size_t>(train.n())) {
        throw ArgumentError("knn classifier: k must be in [1, n_train]");
    }
}

double KnnClassifier::predict_score(const Eigen::VectorXd& x) const {
    const auto neighbors = index_.knn(x, k_);
    std::size_t positive = 0;
    for (const auto& nb : neighbors) {
        if (labels_[static_cast<std::size_t>(nb.row)] == Label::positive) ++positive;
    }
    return static_cast<double>(positive) / static_cast<double>(k_);
}

Label KnnClassifier::predict(const Eigen::VectorXd& x) const {
    // Ties at 0.5 go to the minority class.
    return predict_score(x) >= 0.5 ? Label::positive : Label::negative;
}

double mlp_loss(const MlpParams& params, const Eigen::MatrixXd& x,
                const std::vector<Label>& y) {
    if (static_cast<std::size_t>(x.rows()) != y.size()) {
        throw ShapeError("mlp_loss: feature/label size mismatch");
    }
    double total = 0.0;
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        const Forward f = forward_pass(params, x.row(i).transpose());
        const double target = y[static_cast<std::size_t>(i)] == Label::positive ? 1.0 : 0.0;
        total += bce_from_logit(f.logit, target);
    }
    return total / static_cast<double>(x.rows());
}

MlpParams mlp_gradient(const MlpParams& params, const Eigen::MatrixXd& x,
                       const std::vector<Label>& y) {
    if (static_cast<std::size_t>(x.rows()) != y.size()) {
        throw ShapeError("mlp_gradient: feature/label size mismatch");
    }
    MlpParams g;
    g.w1 = Eigen::MatrixXd::Zero(params.w1.rows(), params.w1.cols());
    g.b1 = Eigen::VectorXd::Zero(params.b1.size());
    g.w2 = Eigen::VectorXd::Zero(params.w2.size());
    g.b2 = 0.0;

    const double inv_n = 1.0 / static_cast<double>(x.rows());
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        const Eigen::VectorXd xi = x.row(i).transpose();
        const Forward f = forward_pass(params, xi);
        const double target = y[static_cast<std::size_t>(i)] == Label::positive ? 1.0 : 0.0;
        const double dlogit = sigmoid(f.logit) - target;

        g.w2 += dlogit * f.hidden;
        g.b2 += dlogit;
        Eigen::VectorXd dpre(params.b1.size());
        for (Eigen::Index r = 0; r < dpre.size(); ++r) {
            dpre(r) = f.pre(r) > 0.0 ? dlogit * params.w2(r) : 0.0;
        }
        g.w1 += dpre * xi.transpose();
        g.b1 += dpre;
    }
    g.w1 *= inv_n;
    g.b1 *= inv_n;
    g.w2 *= inv_n;
    g.b2 *= inv_n;
    return g;
}

MlpModel::MlpModel(MlpParams params) : params_(std::move(params)) {}

MlpModel MlpModel::train(const Dataset& train_data, const MlpConfig& config) {
    if (config.hidden_units < 1) throw ArgumentError("mlp: hidden_units must be >= 1");
    if (config.epochs < 1) throw ArgumentError("mlp: epochs must be >= 1");
    if (!(config.learning_rate > 0.0)) throw ArgumentError("mlp: learning_rate must be > 0");
    if (config.batch_size < 1) throw ArgumentError("mlp: batch_size must be >= 1");
    const auto counts = class_counts(train_data);
    if (counts.n_minority == 0 || counts.n_majority == 0) {
        throw DataError("mlp: training data must contain both classes");
    }

    const Eigen::Index d = train_data.dim();
    const auto h = static_cast<Eigen::Index>(config.hidden_units);
    const Eigen::MatrixXd& x = train_data.features();
    const std::vector<Label>& y = train_data.labels();
    const auto n = static_cast<std::size_t>(x.rows());

    RngStream rng(config.seed, "mlp");

    // Glorot-uniform initialization.
    MlpParams p;
    const double a1 = std::sqrt(6.0 / static_cast<double>(d + h));
    const double a2 = std::sqrt(6.0 / static_cast<double>(h + 1));
    p.w1 = Eigen::MatrixXd::Zero(h, d);
    for (Eigen::Index r = 0; r < h; ++r) {
        for (Eigen::Index c = 0; c < d; ++c) {
            p.w1(r, c) = a1 * (2.0 * rng.uniform01() - 1.0);
        }
    }
    p.b1 = Eigen::VectorXd::Zero(h);
    p.w2 = Eigen::VectorXd::Zero(h);
    for (Eigen::Index r = 0; r < h; ++r) p.w2(r) = a2 * (2.0 * rng.uniform01() - 1.0);
    p.b2 = 0.0;

    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;

    MlpModel model(std::move(p));
    model.loss_history_.reserve(config.epochs);

    for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
        for (std::size_t i = n - 1; i > 0; --i) {
            std::swap(order[i], order[rng.uniform_index(i + 1)]);
        }
        for (std::size_t start = 0; start < n; start += config.batch_size) {
            const std::size_t stop = std::min(n, start + config.batch_size);
            Eigen::MatrixXd bx(static_cast<Eigen::Index>(stop - start), d);
            std::vector<Label> by(stop - start);
            for (std::size_t i = start; i < stop; ++i) {
                bx.row(static_cast<Eigen::Index>(i - start)) =
                    x.row(static_cast<Eigen::Index>(order[i]));
                by[i - start] = y[order[i]];
            }
            const MlpParams g = mlp_gradient(model.params_, bx, by);
            model.params_.w1 -= config.learning_rate * g.w1;
            model.params_.b1 -= config.learning_rate * g.b1;
            model.params_.w2 -= config.learning_rate * g.w2;
            model.params_.b2 -= config.learning_rate * g.b2;
        }
        const double loss = mlp_loss(model.params_, x, y);
        model.loss_history_.push_back(loss);
        if (!std::isfinite(loss) || !model.params_.w1.allFinite() ||
            !model.params_.b1.allFinite() || !model.params_.w2.allFinite() ||
            !std::isfinite(model.params_.b2)) {
            throw TrainError("mlp: training diverged at epoch " + std::to_string(epoch + 1));
        }
    }
    return model;
}

double MlpModel::predict_score(const Eigen::VectorXd& x) const {
    if (x.size() != params_.w1.cols()) throw ShapeError("mlp: query dimension mismatch");
    const Forward f = forward_pass(params_, x);
    const double s = sigmoid(f.logit);
    // Scores stay strictly inside (0, 1) even when the logit saturates.
    return std::clamp(s, 1e-12, 1.0 - 1e-12);
}

Label MlpModel::predict(const Eigen::VectorXd& x) const {
    return predict_score(x) > 0.5 ? Label::positive : Label::negative;
}

}  // namespace kdesample
