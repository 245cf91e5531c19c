#include "kdesample/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "kdesample/errors.hpp"
#include "kdesample/format.hpp"
#include "kdesample/metrics.hpp"
#include "kdesample/synthgen.hpp"

namespace kdesample {

namespace {

std::string trim(std::string s) {
    const auto notspace = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), notspace));
    s.erase(std::find_if(s.rbegin(), s.rend(), notspace).base(), s.end());
    return s;
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> items;
    std::string cur;
    for (char c : value) {
        if (c == ',') {
            if (!trim(cur).empty()) items.push_back(trim(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!trim(cur).empty()) items.push_back(trim(cur));
    return items;
}

const std::string* find_key(const ConfigMap& map, const std::string& key) {
    const std::string* found = nullptr;
    for (const auto& [k, v] : map) {
        if (k == key) found = &v;  // last occurrence wins
    }
    return found;
}

double to_double(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: key '" + key + "' has non-numeric value '" + value + "'");
    }
}

std::size_t to_count(const std::string& key, const std::string& value) {
    const double v = to_double(key, value);
    if (v < 0 || v != std::floor(v)) {
        throw ConfigError("config: key '" + key + "' must be a nonnegative integer");
    }
    return static_cast<std::size_t>(v);
}

bool to_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw ConfigError("config: key '" + key + "' must be a boolean");
}

std::uint64_t hash_bytes(std::uint64_t h, const void* data, std::size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t hash_dataset(const Dataset& ds) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    const std::int64_t n = ds.n();
    const std::int64_t d = ds.dim();
    h = hash_bytes(h, &n, sizeof n);
    h = hash_bytes(h, &d, sizeof d);
    for (Eigen::Index i = 0; i < ds.n(); ++i) {
        for (Eigen::Index j = 0; j < ds.dim(); ++j) {
            const double v = ds.features()(i, j);
            h = hash_bytes(h, &v, sizeof v);
        }
        h = hash_bytes(h, &ds.labels()[static_cast<std::size_t>(i)], 1);
    }
    return h;
}

double generator_param(const GeneratorSpec& gen, const std::string& key, double fallback) {
    const auto it = gen.params.find(key);
    return it == gen.params.end() ? fallback : it->second;
}

}  // namespace

Standardizer Standardizer::fit(const Dataset& train) {
    Standardizer z;
    const Eigen::MatrixXd& x = train.features();
    z.mean_ = x.colwise().mean();
    Eigen::RowVectorXd var =
        (x.rowwise() - z.mean_).array().square().colwise().sum() /
        std::max<double>(1.0, static_cast<double>(x.rows() - 1));
    z.scale_ = var.array().sqrt();
    for (Eigen::Index j = 0; j < z.scale_.size(); ++j) {
        if (z.scale_(j) < 1e-12) z.scale_(j) = 1.0;
    }
    return z;
}

Dataset Standardizer::apply(const Dataset& ds) const {
    if (ds.dim() != mean_.size()) throw ShapeError("standardizer: dimension mismatch");
    Eigen::MatrixXd x = ds.features();
    x.rowwise() -= mean_;
    x.array().rowwise() /= scale_.array();
    return Dataset(std::move(x), ds.labels(), ds.feature_names(), ds.positive_name(),
                   ds.negative_name(), ds.label_column_name());
}

ConfigMap parse_config_text(std::istream& in) {
    ConfigMap map;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": expected key = value");
        }
        map.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return map;
}

ConfigMap parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    return parse_config_text(in);
}

void apply_override(ConfigMap& map, const std::string& key, const std::string& value) {
    map.emplace_back(key, value);  // last occurrence wins during build
}

ExperimentConfig build_config(const ConfigMap& map) {
    static const std::vector<std::string> known_scalar = {
        "seed",        "replications", "test_fraction", "standardize",
        "threads",     "metrics",      "samplers",      "classifiers",
        "datasets"};
    for (const auto& [key, value] : map) {
        if (std::find(known_scalar.begin(), known_scalar.end(), key) != known_scalar.end()) {
            continue;
        }
        if (key.rfind("dataset.", 0) == 0 || key.rfind("sampler.", 0) == 0 ||
            key.rfind("classifier.", 0) == 0) {
            continue;
        }
        throw ConfigError("config: unknown key '" + key + "'");
    }

    ExperimentConfig config;
    if (const auto* v = find_key(map, "seed")) config.master.master = to_count("seed", *v);
    if (const auto* v = find_key(map, "replications")) {
        config.replications = to_count("replications", *v);
        if (config.replications < 1) throw ConfigError("config: replications must be >= 1");
    }
    if (const auto* v = find_key(map, "test_fraction")) {
        config.test_fraction = to_double("test_fraction", *v);
        if (!(config.test_fraction > 0.0 && config.test_fraction < 1.0)) {
            throw ConfigError("config: test_fraction must be in (0, 1)");
        }
    }
    if (const auto* v = find_key(map, "standardize")) {
        config.standardize = to_bool("standardize", *v);
    }
    if (const auto* v = find_key(map, "threads")) {
        config.threads = std::max<std::size_t>(1, to_count("threads", *v));
    }
    if (const auto* v = find_key(map, "metrics")) {
        config.metrics = split_list(*v);
    }
    for (const auto& metric : config.metrics) {
        if (metric != "gmean" && metric != "f1" && metric != "auc") {
            throw ConfigError("config: unknown metric '" + metric + "'");
        }
    }
    if (config.metrics.empty()) throw ConfigError("config: metrics must be nonempty");

    // Datasets.
    const auto* ds_list = find_key(map, "datasets");
    if (!ds_list) throw ConfigError("config: 'datasets' is required");
    for (const std::string& name : split_list(*ds_list)) {
        DatasetSource source;
        source.name = name;
        const std::string prefix = "dataset." + name + ".";
        const auto* csv = find_key(map, prefix + "csv");
        const auto* gen = find_key(map, prefix + "gen");
        if ((csv == nullptr) == (gen == nullptr)) {
            throw ConfigError("config: dataset '" + name +
                              "' needs exactly one of ." + "csv or .gen");
        }
        if (csv) {
            source.is_csv = true;
            source.csv.path = *csv;
            if (const auto* v = find_key(map, prefix + "label")) source.csv.label.column = *v;
            if (const auto* v = find_key(map, prefix + "positive")) {
                source.csv.label.positive_value = *v;
            }
            if (source.csv.label.column.empty()) {
                throw ConfigError("config: dataset '" + name + "' needs .label");
            }
        } else {
            source.is_csv = false;
            source.gen.kind = *gen;
            if (source.gen.kind != "donut" && source.gen.kind != "cube" &&
                source.gen.kind != "separable") {
                throw ConfigError("config: dataset '" + name + "' has unknown generator '" +
                                  source.gen.kind + "'");
            }
            for (const char* key :
                 {"n_total", "minority_fraction", "n_majority", "n_minority", "side",
                  "hole_radius", "void_radius", "sigma", "margin"}) {
                if (const auto* v = find_key(map, prefix + key)) {
                    source.gen.params[key] = to_double(prefix + key, *v);
                }
            }
        }
        config.datasets.push_back(std::move(source));
    }

    // Samplers; the raw baseline is always present.
    std::vector<std::string> sampler_names{"raw", "ros", "smote", "adasyn", "nearmiss", "kde"};
    if (const auto* v = find_key(map, "samplers")) sampler_names = split_list(*v);
    if (std::find(sampler_names.begin(), sampler_names.end(), "raw") == sampler_names.end()) {
        sampler_names.insert(sampler_names.begin(), "raw");
    }
    for (const std::string& name : sampler_names) {
        SamplerChoice choice;
        choice.name = name;
        if (name == "raw") {
            choice.is_raw = true;
        } else {
            choice.request.strategy = strategy_from_name(name);
            const std::string prefix = "sampler." + name + ".";
            if (const auto* v = find_key(map, prefix + "ratio")) {
                choice.request.target_ratio = to_double(prefix + "ratio", *v);
            }
            if (const auto* v = find_key(map, prefix + "k")) {
                choice.request.k_neighbors = to_count(prefix + "k", *v);
            }
        }
        config.samplers.push_back(std::move(choice));
    }

    // Classifiers.
    std::vector<std::string> clf_names{"knn"};
    if (const auto* v = find_key(map, "classifiers")) clf_names = split_list(*v);
    for (const std::string& name : clf_names) {
        ClassifierConfig clf;
        clf.kind = name;
        if (name == "knn") {
            if (const auto* v = find_key(map, "classifier.knn.k")) {
                clf.knn_k = to_count("classifier.knn.k", *v);
            }
        } else if (name == "mlp") {
            if (const auto* v = find_key(map, "classifier.mlp.hidden")) {
                clf.mlp.hidden_units = to_count("classifier.mlp.hidden", *v);
            }
            if (const auto* v = find_key(map, "classifier.mlp.epochs")) {
                clf.mlp.epochs = to_count("classifier.mlp.epochs", *v);
            }
            if (const auto* v = find_key(map, "classifier.mlp.lr")) {
                clf.mlp.learning_rate = to_double("classifier.mlp.lr", *v);
            }
            if (const auto* v = find_key(map, "classifier.mlp.batch")) {
                clf.mlp.batch_size = to_count("classifier.mlp.batch", *v);
            }
        } else {
            throw ConfigError("config: unknown classifier '" + name + "'");
        }
        config.classifiers.push_back(std::move(clf));
    }

    if (config.datasets.empty() || config.samplers.empty() || config.classifiers.empty()) {
        throw ConfigError("config: datasets, samplers and classifiers must be nonempty");
    }
    return config;
}

Dataset materialize(const DatasetSource& source, Seed master) {
    if (source.is_csv) {
        return load_csv(source.csv.path, source.csv.label);
    }
    const Seed seed = derive_seed(master, "gen/" + source.name);
    const GeneratorSpec& g = source.gen;
    if (g.kind == "donut") {
        DonutSpec spec;
        spec.n_total = static_cast<std::size_t>(generator_param(g, "n_total", 1000));
        spec.minority_fraction = generator_param(g, "minority_fraction", 0.1);
        spec.side = generator_param(g, "side", 15.0);
        spec.hole_radius = generator_param(g, "hole_radius", 2.0);
        spec.minority_sigma = generator_param(g, "sigma", 2.0);
        spec.seed = seed;
        return gen_donut(spec);
    }
    if (g.kind == "cube") {
        CubeSpec spec;
        spec.n_majority = static_cast<std::size_t>(generator_param(g, "n_majority", 500));
        spec.n_minority = static_cast<std::size_t>(generator_param(g, "n_minority", 100));
        spec.side = generator_param(g, "side", 15.0);
        spec.void_radius = generator_param(g, "void_radius", 1.5);
        spec.sigma = generator_param(g, "sigma", 2.0);
        spec.seed = seed;
        return gen_cube(spec);
    }
    if (g.kind == "separable") {
        SeparableSpec spec;
        spec.n_majority = static_cast<std::size_t>(generator_param(g, "n_majority", 500));
        spec.n_minority = static_cast<std::size_t>(generator_param(g, "n_minority", 100));
        spec.overlap_margin = generator_param(g, "margin", kDefaultSeparableMargin);
        spec.seed = seed;
        return gen_separable(spec);
    }
    throw ConfigError("unknown generator kind: " + g.kind);
}

std::map<std::string, double> run_single_cell(
    const Dataset& ds, const std::string& ds_name, const SamplerChoice& sampler,
    const ClassifierConfig& classifier, double test_fraction, bool standardize,
    Seed master, std::size_t rep, const std::vector<std::string>& metrics) {
    const std::string rep_tag = std::to_string(rep);
    const Seed split_seed = derive_seed(master, "split/" + ds_name + "/" + rep_tag);
    auto [train, test] = stratified_split(ds, test_fraction, split_seed);

    if (standardize) {
        const Standardizer z = Standardizer::fit(train);
        train = z.apply(train);
        test = z.apply(test);
    }

    // Leakage guard: the test partition must be byte-identical after the
    // training side has been resampled.
    const std::uint64_t test_guard = hash_dataset(test);

    Dataset final_train = train;
    if (!sampler.is_raw) {
        ResampleRequest req = sampler.request;
        req.seed = derive_seed(master,
                               "resample/" + ds_name + "/" + sampler.name + "/" + rep_tag);
        final_train = resample(train, req).dataset;
    }
    if (hash_dataset(test) != test_guard) {
        throw Error("internal: test partition changed during resampling");
    }

    std::vector<double> scores(static_cast<std::size_t>(test.n()));
    std::vector<Label> preds(static_cast<std::size_t>(test.n()));
    if (classifier.kind == "knn") {
        const KnnClassifier model(final_train, classifier.knn_k);
        for (Eigen::Index i = 0; i < test.n(); ++i) {
            const Eigen::VectorXd xi = test.features().row(i).transpose();
            scores[static_cast<std::size_t>(i)] = model.predict_score(xi);
            preds[static_cast<std::size_t>(i)] = model.predict(xi);
        }
    } else if (classifier.kind == "mlp") {
        MlpConfig cfg = classifier.mlp;
        cfg.seed = derive_seed(master, "train/" + ds_name + "/" + sampler.name + "/mlp/" +
                                           rep_tag);
        const MlpModel model = MlpModel::train(final_train, cfg);
        for (Eigen::Index i = 0; i < test.n(); ++i) {
            const Eigen::VectorXd xi = test.features().row(i).transpose();
            scores[static_cast<std::size_t>(i)] = model.predict_score(xi);
            preds[static_cast<std::size_t>(i)] = model.predict(xi);
        }
    } else {
        throw ConfigError("unknown classifier: " + classifier.kind);
    }

    std::map<std::string, double> out;
    const ConfusionMatrix cm = confusion(test.labels(), preds);
    for (const std::string& metric : metrics) {
        if (metric == "gmean") {
            out[metric] = g_mean(cm);
        } else if (metric == "f1") {
            out[metric] = f1(cm);
        } else if (metric == "auc") {
            out[metric] = auc(test.labels(), scores);
        } else {
            throw ConfigError("unknown metric: " + metric);
        }
    }
    return out;
}

Report run_experiment(const ExperimentConfig& config) {
    std::vector<Dataset> datasets;
    datasets.reserve(config.datasets.size());
    for (const auto& source : config.datasets) {
        datasets.push_back(materialize(source, config.master));
    }

    struct Job {
        std::size_t ds_i, samp_i, clf_i, rep;
    };
    std::vector<Job> jobs;
    for (std::size_t d = 0; d < config.datasets.size(); ++d) {
        for (std::size_t s = 0; s < config.samplers.size(); ++s) {
            for (std::size_t c = 0; c < config.classifiers.size(); ++c) {
                for (std::size_t r = 0; r < config.replications; ++r) {
                    jobs.push_back({d, s, c, r});
                }
            }
        }
    }

    struct JobOutcome {
        bool failed = false;
        std::string reason;
        std::map<std::string, double> values;
    };
    std::vector<JobOutcome> outcomes(jobs.size());

    const auto run_job = [&](std::size_t j) {
        const Job& job = jobs[j];
        try {
            outcomes[j].values = run_single_cell(
                datasets[job.ds_i], config.datasets[job.ds_i].name,
                config.samplers[job.samp_i], config.classifiers[job.clf_i],
                config.test_fraction, config.standardize, config.master, job.rep,
                config.metrics);
        } catch (const std::exception& e) {
            outcomes[j].failed = true;
            outcomes[j].reason = e.what();
        }
    };

    if (config.threads <= 1 || jobs.size() <= 1) {
        for (std::size_t j = 0; j < jobs.size(); ++j) run_job(j);
    } else {
        std::atomic<std::size_t> next{0};
        const std::size_t n_workers = std::min(config.threads, jobs.size());
        std::vector<std::thread> workers;
        workers.reserve(n_workers);
        for (std::size_t w = 0; w < n_workers; ++w) {
            workers.emplace_back([&] {
                for (std::size_t j = next.fetch_add(1); j < jobs.size();
                     j = next.fetch_add(1)) {
                    run_job(j);
                }
            });
        }
        for (auto& t : workers) t.join();
    }

    // Fold replications into cells, in config order.
    Report report;
    report.config = config;
    for (std::size_t d = 0; d < config.datasets.size(); ++d) {
        for (std::size_t s = 0; s < config.samplers.size(); ++s) {
            for (std::size_t c = 0; c < config.classifiers.size(); ++c) {
                CellResult cell;
                cell.dataset = config.datasets[d].name;
                cell.sampler = config.samplers[s].name;
                cell.classifier = config.classifiers[c].kind;
                for (std::size_t j = 0; j < jobs.size(); ++j) {
                    const Job& job = jobs[j];
                    if (job.ds_i != d || job.samp_i != s || job.clf_i != c) continue;
                    if (outcomes[j].failed) {
                        cell.failed = true;
                        if (cell.failure_reason.empty()) {
                            cell.failure_reason = outcomes[j].reason;
                        }
                    } else {
                        for (const auto& [metric, value] : outcomes[j].values) {
                            cell.per_rep[metric].push_back(value);
                        }
                    }
                }
                if (!cell.failed) {
                    for (const auto& [metric, values] : cell.per_rep) {
                        double sum = 0.0;
                        for (double v : values) sum += v;
                        cell.mean[metric] = sum / static_cast<double>(values.size());
                    }
                }
                report.cells.push_back(std::move(cell));
            }
        }
    }

    // Best markers per (dataset, classifier, metric), ties marked jointly.
    for (const auto& ds : config.datasets) {
        for (const auto& clf : config.classifiers) {
            for (const auto& metric : config.metrics) {
                BestMarker marker{ds.name, clf.kind, metric, {}};
                double best = -1.0;
                for (const auto& cell : report.cells) {
                    if (cell.dataset != ds.name || cell.classifier != clf.kind ||
                        cell.failed) {
                        continue;
                    }
                    const auto it = cell.mean.find(metric);
                    if (it == cell.mean.end()) continue;
                    if (it->second > best) {
                        best = it->second;
                        marker.samplers = {cell.sampler};
                    } else if (it->second == best) {
                        marker.samplers.push_back(cell.sampler);
                    }
                }
                if (!marker.samplers.empty()) report.best.push_back(std::move(marker));
            }
        }
    }
    return report;
}

namespace {

nlohmann::json config_to_json(const ExperimentConfig& config) {
    nlohmann::json j;
    j["seed"] = config.master.master;
    j["replications"] = config.replications;
    j["test_fraction"] = config.test_fraction;
    j["standardize"] = config.standardize;
    j["threads"] = config.threads;
    j["metrics"] = config.metrics;
    j["datasets"] = nlohmann::json::array();
    for (const auto& ds : config.datasets) {
        nlohmann::json d;
        d["name"] = ds.name;
        if (ds.is_csv) {
            d["csv"] = ds.csv.path;
            d["label"] = ds.csv.label.column;
            d["positive"] = ds.csv.label.positive_value;
        } else {
            d["gen"] = ds.gen.kind;
            for (const auto& [k, v] : ds.gen.params) d[k] = v;
        }
        j["datasets"].push_back(std::move(d));
    }
    j["samplers"] = nlohmann::json::array();
    for (const auto& s : config.samplers) {
        nlohmann::json e;
        e["name"] = s.name;
        if (!s.is_raw) {
            e["ratio"] = s.request.target_ratio;
            if (s.request.k_neighbors > 0) e["k"] = s.request.k_neighbors;
        }
        j["samplers"].push_back(std::move(e));
    }
    j["classifiers"] = nlohmann::json::array();
    for (const auto& c : config.classifiers) {
        nlohmann::json e;
        e["kind"] = c.kind;
        if (c.kind == "knn") {
            e["k"] = c.knn_k;
        } else if (c.kind == "mlp") {
            e["hidden"] = c.mlp.hidden_units;
            e["epochs"] = c.mlp.epochs;
            e["lr"] = c.mlp.learning_rate;
            e["batch"] = c.mlp.batch_size;
        }
        j["classifiers"].push_back(std::move(e));
    }
    return j;
}

}  // namespace

std::string emit_report_json(const Report& report) {
    nlohmann::json j;
    j["config"] = config_to_json(report.config);
    j["cells"] = nlohmann::json::array();
    for (const auto& cell : report.cells) {
        nlohmann::json c;
        c["dataset"] = cell.dataset;
        c["sampler"] = cell.sampler;
        c["classifier"] = cell.classifier;
        if (cell.failed) {
            c["failed"] = true;
            c["reason"] = cell.failure_reason;
        } else {
            for (const auto& [metric, values] : cell.per_rep) {
                c["metrics"][metric]["reps"] = values;
                c["metrics"][metric]["mean"] = cell.mean.at(metric);
            }
        }
        j["cells"].push_back(std::move(c));
    }
    j["best"] = nlohmann::json::array();
    for (const auto& marker : report.best) {
        nlohmann::json b;
        b["dataset"] = marker.dataset;
        b["classifier"] = marker.classifier;
        b["metric"] = marker.metric;
        b["samplers"] = marker.samplers;
        j["best"].push_back(std::move(b));
    }
    return j.dump(2) + "\n";
}

std::string emit_report_csv(const Report& report) {
    std::string out = "dataset,sampler,classifier,metric,rep_index,value\n";
    for (const auto& cell : report.cells) {
        if (cell.failed) continue;
        for (const auto& metric : report.config.metrics) {
            const auto it = cell.per_rep.find(metric);
            if (it == cell.per_rep.end()) continue;
            for (std::size_t r = 0; r < it->second.size(); ++r) {
                out += cell.dataset + ',' + cell.sampler + ',' + cell.classifier + ',' +
                       metric + ',' + std::to_string(r) + ',' +
                       format_double(it->second[r]) + '\n';
            }
        }
    }
    return out;
}

std::string emit_summary_csv(const Report& report) {
    const auto is_best = [&](const CellResult& cell, const std::string& metric) {
        for (const auto& marker : report.best) {
            if (marker.dataset == cell.dataset && marker.classifier == cell.classifier &&
                marker.metric == metric) {
                return std::find(marker.samplers.begin(), marker.samplers.end(),
                                 cell.sampler) != marker.samplers.end();
            }
        }
        return false;
    };
    std::string out = "dataset,sampler,classifier,metric,mean,best\n";
    for (const auto& cell : report.cells) {
        for (const auto& metric : report.config.metrics) {
            if (cell.failed) {
                out += cell.dataset + ',' + cell.sampler + ',' + cell.classifier + ',' +
                       metric + ",na,0\n";
            } else {
                const auto it = cell.mean.find(metric);
                if (it == cell.mean.end()) continue;
                out += cell.dataset + ',' + cell.sampler + ',' + cell.classifier + ',' +
                       metric + ',' + format_double(it->second) + ',' +
                       (is_best(cell, metric) ? "1" : "0") + '\n';
            }
        }
    }
    return out;
}

std::string emit_report_markdown(const Report& report) {
    const auto find_cell = [&](const std::string& ds, const std::string& sampler,
                               const std::string& clf) -> const CellResult* {
        for (const auto& cell : report.cells) {
            if (cell.dataset == ds && cell.sampler == sampler && cell.classifier == clf) {
                return &cell;
            }
        }
        return nullptr;
    };
    const auto is_best = [&](const std::string& ds, const std::string& clf,
                             const std::string& metric, const std::string& sampler) {
        for (const auto& marker : report.best) {
            if (marker.dataset == ds && marker.classifier == clf &&
                marker.metric == metric) {
                return std::find(marker.samplers.begin(), marker.samplers.end(), sampler) !=
                       marker.samplers.end();
            }
        }
        return false;
    };

    std::string out = "# resampling benchmark report\n";
    for (const auto& clf : report.config.classifiers) {
        out += "\n## classifier: " + clf.kind + "\n\n";
        out += "| dataset | metric |";
        for (const auto& s : report.config.samplers) out += ' ' + s.name + " |";
        out += "\n|---|---|";
        for (std::size_t i = 0; i < report.config.samplers.size(); ++i) out += "---|";
        out += '\n';
        for (const auto& ds : report.config.datasets) {
            for (const auto& metric : report.config.metrics) {
                out += "| " + ds.name + " | " + metric + " |";
                for (const auto& s : report.config.samplers) {
                    const CellResult* cell = find_cell(ds.name, s.name, clf.kind);
                    if (cell == nullptr || cell->failed ||
                        cell->mean.find(metric) == cell->mean.end()) {
                        out += " na |";
                    } else {
                        const std::string v = format_fixed(cell->mean.at(metric), 3);
                        out += is_best(ds.name, clf.kind, metric, s.name)
                                   ? " **" + v + "** |"
                                   : ' ' + v + " |";
                    }
                }
                out += '\n';
            }
        }
    }
    return out;
}

}  // namespace kdesample
