#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "kdesample/classifiers.hpp"
#include "kdesample/dataset.hpp"
#include "kdesample/samplers.hpp"

namespace kdesample {

// z-score transform fitted on training statistics and applied to both
// partitions; constant columns are left centered but unscaled.
class Standardizer {
public:
    static Standardizer fit(const Dataset& train);
    Dataset apply(const Dataset& ds) const;

private:
    Eigen::RowVectorXd mean_;
    Eigen::RowVectorXd scale_;
};

struct GeneratorSpec {
    std::string kind;  // donut | cube | separable
    std::map<std::string, double> params;
};

struct CsvSource {
    std::string path;
    LabelSpec label;
};

struct DatasetSource {
    std::string name;
    bool is_csv = true;
    CsvSource csv;
    GeneratorSpec gen;
};

// A named sampler column of the report. "raw" runs no resampling and is
// always present.
struct SamplerChoice {
    std::string name;
    bool is_raw = false;
    ResampleRequest request;
};

struct ClassifierConfig {
    std::string kind;  // knn | mlp
    std::size_t knn_k = 5;
    MlpConfig mlp;
};

struct ExperimentConfig {
    std::vector<DatasetSource> datasets;
    std::vector<SamplerChoice> samplers;
    std::vector<ClassifierConfig> classifiers;
    std::size_t replications = 2;
    double test_fraction = 0.3;
    Seed master;
    std::vector<std::string> metrics{"gmean", "f1", "auc"};
    bool standardize = true;
    std::size_t threads = 1;
};

// Flat key=value text, '#' comments, lists comma-separated. Later entries
// override earlier ones for scalar keys.
using ConfigMap = std::vector<std::pair<std::string, std::string>>;

ConfigMap parse_config_text(std::istream& in);
ConfigMap parse_config_file(const std::string& path);
void apply_override(ConfigMap& map, const std::string& key, const std::string& value);
ExperimentConfig build_config(const ConfigMap& map);

// Loads a CSV source or runs the generator with a child seed of `master`.
Dataset materialize(const DatasetSource& source, Seed master);

struct CellResult {
    std::string dataset;
    std::string sampler;
    std::string classifier;
    bool failed = false;
    std::string failure_reason;
    std::map<std::string, std::vector<double>> per_rep;  // metric -> values
    std::map<std::string, double> mean;                  // metric -> mean
};

struct BestMarker {
    std::string dataset;
    std::string classifier;
    std::string metric;
    std::vector<std::string> samplers;  // all samplers tied at the maximum
};

struct Report {
    ExperimentConfig config;
    std::vector<CellResult> cells;
    std::vector<BestMarker> best;
};

// One (dataset, sampler, classifier, replication) evaluation: stratified
// split -> standardize on train -> resample the training part only -> train
// -> score the untouched test part. The test partition is hashed before
// resampling and re-verified before scoring.
std::map<std::string, double> run_single_cell(
    const Dataset& ds, const std::string& ds_name, const SamplerChoice& sampler,
    const ClassifierConfig& classifier, double test_fraction, bool standardize,
    Seed master, std::size_t rep, const std::vector<std::string>& metrics);

// Runs every cell (possibly across config.threads workers); failures are
// recorded per cell and the run continues. Deterministic given the master
// seed, independent of scheduling.
Report run_experiment(const ExperimentConfig& config);

std::string emit_report_json(const Report& report);
std::string emit_report_csv(const Report& report);      // one row per observation
std::string emit_summary_csv(const Report& report);     // means + best markers
std::string emit_report_markdown(const Report& report);

}  // namespace kdesample
