#include "kdesample/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "kdesample/errors.hpp"
#include "kdesample/format.hpp"

namespace kdesample {

namespace {

std::string trim(std::string s) {
    const auto notspace = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), notspace));
    s.erase(std::find_if(s.rbegin(), s.rend(), notspace).base(), s.end());
    return s;
}

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            cells.push_back(trim(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    cells.push_back(trim(cur));
    return cells;
}

double parse_double(const std::string& cell, std::size_t row, std::size_t col,
                    const std::string& origin) {
    double value = 0.0;
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || cell.empty()) {
        throw ParseError(origin + ": non-numeric value '" + cell + "' at row " +
                         std::to_string(row) + ", column " + std::to_string(col));
    }
    if (!std::isfinite(value)) {
        throw ParseError(origin + ": non-finite value at row " + std::to_string(row) +
                         ", column " + std::to_string(col));
    }
    return value;
}

}  // namespace

Dataset::Dataset(Eigen::MatrixXd features, std::vector<Label> labels,
                 std::vector<std::string> feature_names, std::string positive_name,
                 std::string negative_name, std::string label_column_name)
    : features_(std::move(features)),
      labels_(std::move(labels)),
      feature_names_(std::move(feature_names)),
      positive_name_(std::move(positive_name)),
      negative_name_(std::move(negative_name)),
      label_column_name_(std::move(label_column_name)) {
    if (features_.rows() < 1 || features_.cols() < 1) {
        throw DataError("dataset must have n >= 1 rows and d >= 1 features");
    }
    if (static_cast<Eigen::Index>(labels_.size()) != features_.rows()) {
        throw ShapeError("label count does not match row count");
    }
    if (!features_.allFinite()) {
        throw DataError("dataset contains non-finite feature values");
    }
    if (feature_names_.empty()) {
        for (Eigen::Index j = 0; j < features_.cols(); ++j) {
            feature_names_.push_back("x" + std::to_string(j + 1));
        }
    }
    if (static_cast<Eigen::Index>(feature_names_.size()) != features_.cols()) {
        throw ShapeError("feature name count does not match column count");
    }
}

std::vector<Eigen::Index> Dataset::indices_of(Label which) const {
    std::vector<Eigen::Index> out;
    for (Eigen::Index i = 0; i < n(); ++i) {
        if (labels_[static_cast<std::size_t>(i)] == which) out.push_back(i);
    }
    return out;
}

Eigen::MatrixXd Dataset::rows_of(Label which) const {
    const auto idx = indices_of(which);
    Eigen::MatrixXd out(static_cast<Eigen::Index>(idx.size()), dim());
    for (std::size_t i = 0; i < idx.size(); ++i) {
        out.row(static_cast<Eigen::Index>(i)) = features_.row(idx[i]);
    }
    return out;
}

ClassCounts class_counts(const Dataset& ds) {
    ClassCounts counts;
    for (Label l : ds.labels()) {
        if (l == Label::positive) {
            ++counts.n_minority;
        } else {
            ++counts.n_majority;
        }
    }
    return counts;
}

Dataset load_csv(const std::string& path, const LabelSpec& spec, std::ostream* warn) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open file: " + path);
    return load_csv(in, spec, warn, path);
}

Dataset load_csv(std::istream& in, const LabelSpec& spec, std::ostream* warn,
                 const std::string& origin) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError(origin + ": empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::vector<std::string> header = split_line(line);
    const std::size_t n_cols = header.size();
    if (n_cols < 2) throw DataError(origin + ": need at least one feature column and a label column");

    // Resolve the label column: exact header name first, then zero-based index.
    std::size_t label_col = n_cols;
    for (std::size_t j = 0; j < n_cols; ++j) {
        if (header[j] == spec.column) {
            label_col = j;
            break;
        }
    }
    if (label_col == n_cols && !spec.column.empty() &&
        spec.column.find_first_not_of("0123456789") == std::string::npos) {
        const std::size_t idx = std::stoul(spec.column);
        if (idx < n_cols) label_col = idx;
    }
    if (label_col == n_cols) {
        throw ConfigError(origin + ": label column '" + spec.column + "' not found");
    }

    std::vector<std::string> feature_names;
    for (std::size_t j = 0; j < n_cols; ++j) {
        if (j != label_col) feature_names.push_back(header[j]);
    }

    std::vector<double> values;
    std::vector<std::string> raw_labels;
    std::size_t row = 1;  // header was row 0
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) {
            ++row;
            continue;
        }
        const std::vector<std::string> cells = split_line(line);
        if (cells.size() != n_cols) {
            throw ParseError(origin + ": row " + std::to_string(row) + " has " +
                             std::to_string(cells.size()) + " cells, expected " +
                             std::to_string(n_cols));
        }
        for (std::size_t j = 0; j < n_cols; ++j) {
            if (j == label_col) {
                raw_labels.push_back(cells[j]);
            } else {
                values.push_back(parse_double(cells[j], row, j, origin));
            }
        }
        ++row;
    }
    const std::size_t n = raw_labels.size();
    if (n == 0) throw DataError(origin + ": no data rows");
    const std::size_t d = n_cols - 1;

    // Binary-label contract: exactly two distinct raw values.
    std::vector<std::string> distinct;
    for (const auto& v : raw_labels) {
        if (std::find(distinct.begin(), distinct.end(), v) == distinct.end()) {
            distinct.push_back(v);
        }
        if (distinct.size() > 2) {
            throw DataError(origin + ": label column has more than two distinct values");
        }
    }
    if (distinct.size() < 2) {
        throw DataError(origin + ": only one class present in label column");
    }
    if (distinct[0] != spec.positive_value && distinct[1] != spec.positive_value) {
        throw DataError(origin + ": positive value '" + spec.positive_value +
                        "' never occurs in the label column");
    }

    std::string positive_name = spec.positive_value;
    std::string negative_name = distinct[0] == positive_name ? distinct[1] : distinct[0];
    std::size_t n_pos = 0;
    for (const auto& v : raw_labels) {
        if (v == positive_name) ++n_pos;
    }
    // Minority stays positive internally; flip polarity if the caller's
    // positive value is actually the majority class.
    if (n_pos > n - n_pos) {
        std::swap(positive_name, negative_name);
        n_pos = n - n_pos;
        if (warn) {
            *warn << "warning: positive value '" << spec.positive_value
                  << "' is the majority class; remapping minority '" << positive_name
                  << "' to positive\n";
        }
    }

    Eigen::MatrixXd features(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            features(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                values[i * d + j];
        }
    }
    std::vector<Label> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
        labels[i] = raw_labels[i] == positive_name ? Label::positive : Label::negative;
    }
    return Dataset(std::move(features), std::move(labels), std::move(feature_names),
                   std::move(positive_name), std::move(negative_name), header[label_col]);
}

void save_csv(const Dataset& ds, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open file for writing: " + path);
    save_csv(ds, out);
}

void save_csv(const Dataset& ds, std::ostream& out) {
    for (const auto& name : ds.feature_names()) out << name << ',';
    out << ds.label_column_name() << '\n';
    for (Eigen::Index i = 0; i < ds.n(); ++i) {
        for (Eigen::Index j = 0; j < ds.dim(); ++j) {
            out << format_double(ds.features()(i, j)) << ',';
        }
        out << (ds.labels()[static_cast<std::size_t>(i)] == Label::positive
                    ? ds.positive_name()
                    : ds.negative_name())
            << '\n';
    }
}

std::pair<Dataset, Dataset> stratified_split(const Dataset& ds, double test_fraction,
                                             Seed seed) {
    if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
        throw ArgumentError("test_fraction must be in (0, 1)");
    }
    RngStream rng(seed, "stratified_split");

    std::vector<Eigen::Index> test_idx;
    std::vector<Eigen::Index> train_idx;
    for (Label which : {Label::negative, Label::positive}) {
        std::vector<Eigen::Index> members = ds.indices_of(which);
        if (members.size() < 2) {
            throw DataError("stratified_split: each class needs at least 2 members");
        }
        // Fisher-Yates, then the first n_test go to the test part.
        for (std::size_t i = members.size() - 1; i > 0; --i) {
            std::swap(members[i], members[rng.uniform_index(i + 1)]);
        }
        const auto n_test = static_cast<std::size_t>(
            std::llround(static_cast<double>(members.size()) * test_fraction));
        test_idx.insert(test_idx.end(), members.begin(), members.begin() + n_test);
        train_idx.insert(train_idx.end(), members.begin() + n_test, members.end());
    }
    std::sort(test_idx.begin(), test_idx.end());
    std::sort(train_idx.begin(), train_idx.end());

    const auto take = [&](const std::vector<Eigen::Index>& idx) {
        Eigen::MatrixXd feat(static_cast<Eigen::Index>(idx.size()), ds.dim());
        std::vector<Label> labels(idx.size());
        for (std::size_t i = 0; i < idx.size(); ++i) {
            feat.row(static_cast<Eigen::Index>(i)) = ds.features().row(idx[i]);
            labels[i] = ds.labels()[static_cast<std::size_t>(idx[i])];
        }
        return Dataset(std::move(feat), std::move(labels), ds.feature_names(),
                       ds.positive_name(), ds.negative_name(), ds.label_column_name());
    };
    return {take(train_idx), take(test_idx)};
}

}  // namespace kdesample
