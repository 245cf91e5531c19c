#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "kdesample/rng.hpp"

namespace kdesample {

// Internal label convention: the minority class is "positive" and the
// majority class is "negative", regardless of the raw encoding in the file.
enum class Label : std::uint8_t { negative = 0, positive = 1 };

// Selects the label column of a CSV file and the raw value mapped to the
// positive (minority) class. `column` is a header name, or a zero-based
// column index when it parses as a nonnegative integer that matches no
// header name.
struct LabelSpec {
    std::string column;
    std::string positive_value;
};

// Immutable feature matrix with binary labels. Safe to share across threads.
class Dataset {
public:
    Dataset(Eigen::MatrixXd features, std::vector<Label> labels,
            std::vector<std::string> feature_names = {},
            std::string positive_name = "positive",
            std::string negative_name = "negative",
            std::string label_column_name = "class");

    Eigen::Index n() const { return features_.rows(); }
    Eigen::Index dim() const { return features_.cols(); }

    const Eigen::MatrixXd& features() const { return features_; }
    const std::vector<Label>& labels() const { return labels_; }
    const std::vector<std::string>& feature_names() const { return feature_names_; }
    const std::string& positive_name() const { return positive_name_; }
    const std::string& negative_name() const { return negative_name_; }
    const std::string& label_column_name() const { return label_column_name_; }

    std::vector<Eigen::Index> indices_of(Label which) const;
    Eigen::MatrixXd rows_of(Label which) const;

private:
    Eigen::MatrixXd features_;
    std::vector<Label> labels_;
    std::vector<std::string> feature_names_;
    std::string positive_name_;
    std::string negative_name_;
    std::string label_column_name_;
};

struct ClassCounts {
    Eigen::Index n_majority = 0;
    Eigen::Index n_minority = 0;
};

ClassCounts class_counts(const Dataset& ds);

// Loads a comma-delimited file with one header row. Every non-label column
// must be numeric and finite; the label column must contain exactly two
// distinct values, one of which is spec.positive_value. If positive_value
// turns out to be the majority class, polarity is flipped so the minority
// stays positive and a warning is written to `warn`.
Dataset load_csv(const std::string& path, const LabelSpec& spec,
                 std::ostream* warn = nullptr);

// Same contract, reading from an already-open stream (`origin` is used in
// error messages only).
Dataset load_csv(std::istream& in, const LabelSpec& spec,
                 std::ostream* warn = nullptr,
                 const std::string& origin = "<stream>");

// Writes header + rows. Feature values use shortest round-trip formatting,
// so load_csv(save_csv(ds)) is value-identical.
void save_csv(const Dataset& ds, const std::string& path);
void save_csv(const Dataset& ds, std::ostream& out);

// Per-class split: each class contributes round(count * test_fraction) rows
// to the test part (half away from zero). Deterministic given the seed.
std::pair<Dataset, Dataset> stratified_split(const Dataset& ds,
                                             double test_fraction, Seed seed);

}  // namespace kdesample
