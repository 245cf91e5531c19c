#pragma once

#include <Eigen/Dense>
#include <vector>

#include "kdesample/dataset.hpp"
#include "kdesample/neighbors.hpp"
#include "kdesample/rng.hpp"

namespace kdesample {

// k-nearest-neighbor classifier. The score is the positive fraction among
// the k nearest training rows, which stands in for a probability when
// computing AUC. A score of exactly 0.5 predicts positive.
class KnnClassifier {
public:
    KnnClassifier(const Dataset& train, std::size_t k);

    double predict_score(const Eigen::VectorXd& x) const;
    Label predict(const Eigen::VectorXd& x) const;

    std::size_t k() const { return k_; }

private:
    NeighborIndex index_;
    std::vector<Label> labels_;
    std::size_t k_;
};

struct MlpConfig {
    std::size_t hidden_units = 32;
    std::size_t epochs = 200;
    double learning_rate = 0.01;
    std::size_t batch_size = 32;
    Seed seed;
};

// All parameters of the d -> hidden (ReLU) -> 1 (logistic) network, exposed
// as a value type so tests can perturb single weights.
struct MlpParams {
    Eigen::MatrixXd w1;  // hidden x d
    Eigen::VectorXd b1;  // hidden
    Eigen::VectorXd w2;  // hidden
    double b2 = 0.0;
};

// Mean binary cross-entropy of the network on (X, y), computed from logits
// for numerical stability.
double mlp_loss(const MlpParams& params, const Eigen::MatrixXd& x,
                const std::vector<Label>& y);

// Analytic gradient of mlp_loss with respect to every parameter.
MlpParams mlp_gradient(const MlpParams& params, const Eigen::MatrixXd& x,
                       const std::vector<Label>& y);

// Single-hidden-layer perceptron trained with mini-batch SGD. Deterministic
// given the config seed (initialization and batch shuffling come from one
// derived stream).
class MlpModel {
public:
    static MlpModel train(const Dataset& train_data, const MlpConfig& config);

    // Wraps existing parameters without training (for tests).
    explicit MlpModel(MlpParams params);

    double predict_score(const Eigen::VectorXd& x) const;
    Label predict(const Eigen::VectorXd& x) const;

    const MlpParams& params() const { return params_; }
    // Full-training-set loss recorded after every epoch.
    const std::vector<double>& loss_history() const { return loss_history_; }

private:
    MlpParams params_;
    std::vector<double> loss_history_;
};

}  // namespace kdesample
