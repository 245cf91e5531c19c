#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "kdesample/bench.hpp"
#include "kdesample/dataset.hpp"
#include "kdesample/errors.hpp"
#include "kdesample/format.hpp"
#include "kdesample/samplers.hpp"
#include "kdesample/synthgen.hpp"

namespace {

using namespace kdesample;

std::vector<std::string> read_header(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open file: " + path);
    std::string line;
    if (!std::getline(in, line)) throw ParseError(path + ": empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> names;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            names.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    names.push_back(cur);
    return names;
}

// Fills in CLI label defaults: the label column defaults to the last column,
// the positive value to the rarer label (ties: lexicographically smaller).
LabelSpec resolve_label(const std::string& path, std::string column, std::string positive) {
    const std::vector<std::string> header = read_header(path);
    if (column.empty()) column = header.back();
    if (positive.empty()) {
        std::size_t col = header.size();
        for (std::size_t j = 0; j < header.size(); ++j) {
            if (header[j] == column) {
                col = j;
                break;
            }
        }
        if (col == header.size() &&
            column.find_first_not_of("0123456789") == std::string::npos) {
            const std::size_t idx = std::stoul(column);
            if (idx < header.size()) col = idx;
        }
        if (col == header.size()) {
            throw ConfigError(path + ": label column '" + column + "' not found");
        }
        std::ifstream in(path);
        std::string line;
        std::getline(in, line);  // header
        std::map<std::string, std::size_t> counts;
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty()) continue;
            std::size_t j = 0;
            std::string cell;
            std::string found;
            for (char c : line) {
                if (c == ',') {
                    if (j == col) found = cell;
                    cell.clear();
                    ++j;
                } else {
                    cell.push_back(c);
                }
            }
            if (j == col) found = cell;
            ++counts[found];
        }
        if (counts.empty()) throw DataError(path + ": no data rows");
        std::size_t best = SIZE_MAX;
        for (const auto& [value, count] : counts) {  // map order: lexicographic
            if (count < best) {
                best = count;
                positive = value;
            }
        }
    }
    return {column, positive};
}

void write_provenance_csv(const ResampleResult& result, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open file for writing: " + path);
    out << "output_row,source_row,neighbor_row,t\n";
    for (const auto& p : result.provenance) {
        out << p.output_row << ',' << p.source_row << ',';
        if (p.neighbor_row >= 0) {
            out << p.neighbor_row;
        } else {
            out << "na";
        }
        out << ',';
        if (std::isnan(p.t)) {
            out << "na";
        } else {
            out << format_double(p.t);
        }
        out << '\n';
    }
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open file for writing: " + path);
    out << text;
}

std::string summary_path_for(const std::string& out_path) {
    const auto dot = out_path.rfind('.');
    if (dot == std::string::npos) return out_path + "_summary";
    return out_path.substr(0, dot) + "_summary" + out_path.substr(dot);
}

struct GenArgs {
    std::size_t n_total = 1000;
    double minority_fraction = 0.1;
    std::size_t n_majority = 500;
    std::size_t n_minority = 100;
    double side = 15.0;
    double hole_radius = 2.0;
    double void_radius = 1.5;
    double sigma = 2.0;
    double margin = kDefaultSeparableMargin;
    std::uint64_t seed = 0;
    std::string out;
};

int run_gen(const std::string& kind, const GenArgs& args) {
    Dataset ds = [&] {
        const Seed seed{args.seed};
        if (kind == "donut") {
            DonutSpec spec;
            spec.n_total = args.n_total;
            spec.minority_fraction = args.minority_fraction;
            spec.side = args.side;
            spec.hole_radius = args.hole_radius;
            spec.minority_sigma = args.sigma;
            spec.seed = seed;
            return gen_donut(spec);
        }
        if (kind == "cube") {
            CubeSpec spec;
            spec.n_majority = args.n_majority;
            spec.n_minority = args.n_minority;
            spec.side = args.side;
            spec.void_radius = args.void_radius;
            spec.sigma = args.sigma;
            spec.seed = seed;
            return gen_cube(spec);
        }
        SeparableSpec spec;
        spec.n_majority = args.n_majority;
        spec.n_minority = args.n_minority;
        spec.overlap_margin = args.margin;
        spec.seed = seed;
        return gen_separable(spec);
    }();
    save_csv(ds, args.out);
    const auto counts = class_counts(ds);
    std::cerr << "wrote " << args.out << ": " << ds.n() << " rows, " << ds.dim()
              << " features, " << counts.n_majority << "/" << counts.n_minority
              << " majority/minority\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"KDE-based minority oversampling and resampling benchmark toolkit"};
    app.require_subcommand(1);

    // ---- gen
    auto* gen = app.add_subcommand("gen", "generate a synthetic dataset as CSV");
    gen->require_subcommand(1);
    GenArgs gen_args;
    auto* gen_donut_cmd = gen->add_subcommand("donut", "square with a central hole");
    gen_donut_cmd->add_option("--n", gen_args.n_total, "total number of points");
    gen_donut_cmd->add_option("--minority-frac", gen_args.minority_fraction,
                              "minority fraction in (0, 0.5)");
    gen_donut_cmd->add_option("--side", gen_args.side, "square side length");
    gen_donut_cmd->add_option("--hole-radius", gen_args.hole_radius, "central hole radius");
    gen_donut_cmd->add_option("--sigma", gen_args.sigma, "minority standard deviation");
    auto* gen_cube_cmd = gen->add_subcommand("cube", "3-D cube with a central void");
    gen_cube_cmd->add_option("--n-majority", gen_args.n_majority, "majority count");
    gen_cube_cmd->add_option("--n-minority", gen_args.n_minority, "minority count");
    gen_cube_cmd->add_option("--side", gen_args.side, "cube side length");
    gen_cube_cmd->add_option("--void-radius", gen_args.void_radius, "central void radius");
    gen_cube_cmd->add_option("--sigma", gen_args.sigma, "minority standard deviation");
    auto* gen_sep_cmd = gen->add_subcommand("separable", "nearly separable two-class square");
    gen_sep_cmd->add_option("--n-majority", gen_args.n_majority, "majority count");
    gen_sep_cmd->add_option("--n-minority", gen_args.n_minority, "minority count");
    gen_sep_cmd->add_option("--margin", gen_args.margin, "overlap margin across the diagonal");
    for (auto* cmd : {gen_donut_cmd, gen_cube_cmd, gen_sep_cmd}) {
        cmd->add_option("--seed", gen_args.seed, "master seed");
        cmd->add_option("-o,--out", gen_args.out, "output CSV path")->required();
    }

    // ---- resample
    auto* res = app.add_subcommand("resample", "rebalance a CSV dataset");
    std::string res_input, res_out, res_strategy, res_label, res_positive, res_provenance;
    double res_ratio = 1.0;
    std::size_t res_k = 0;
    std::uint64_t res_seed = 0;
    res->add_option("input", res_input, "input CSV")->required();
    res->add_option("--strategy", res_strategy, "ros|smote|adasyn|nearmiss|kde")->required();
    res->add_option("--ratio", res_ratio, "target majority:minority ratio (>= 1)");
    res->add_option("--k", res_k, "neighbor count (0 = strategy default)");
    res->add_option("--label", res_label, "label column name or zero-based index (default: last)");
    res->add_option("--positive", res_positive, "positive (minority) label value (default: rarer)");
    res->add_option("--seed", res_seed, "master seed");
    res->add_option("--provenance", res_provenance, "write synthetic-row provenance CSV here");
    res->add_option("-o,--out", res_out, "output CSV path")->required();

    // ---- eval
    auto* eval = app.add_subcommand("eval", "one train/test resample/classify cell");
    std::string eval_input, eval_label, eval_positive;
    std::string eval_sampler = "kde", eval_classifier = "knn";
    double eval_test_fraction = 0.3, eval_ratio = 1.0;
    std::size_t eval_k = 0, eval_knn_k = 5;
    std::uint64_t eval_seed = 0;
    bool eval_no_standardize = false;
    MlpConfig eval_mlp;
    eval->add_option("input", eval_input, "input CSV")->required();
    eval->add_option("--label", eval_label, "label column name or zero-based index (default: last)");
    eval->add_option("--positive", eval_positive, "positive (minority) label value (default: rarer)");
    eval->add_option("--sampler", eval_sampler, "raw|ros|smote|adasyn|nearmiss|kde");
    eval->add_option("--classifier", eval_classifier, "knn|mlp");
    eval->add_option("--test-fraction", eval_test_fraction, "test fraction in (0, 1)");
    eval->add_option("--ratio", eval_ratio, "target majority:minority ratio");
    eval->add_option("--k", eval_k, "sampler neighbor count (0 = default)");
    eval->add_option("--knn-k", eval_knn_k, "classifier neighbor count");
    eval->add_option("--mlp-hidden", eval_mlp.hidden_units, "hidden units");
    eval->add_option("--mlp-epochs", eval_mlp.epochs, "training epochs");
    eval->add_option("--mlp-lr", eval_mlp.learning_rate, "learning rate");
    eval->add_option("--mlp-batch", eval_mlp.batch_size, "batch size");
    eval->add_flag("--no-standardize", eval_no_standardize, "skip z-score standardization");
    eval->add_option("--seed", eval_seed, "master seed");

    // ---- bench
    auto* bench = app.add_subcommand("bench", "run a full experiment grid");
    std::string bench_config, bench_out, bench_format = "json";
    std::vector<std::string> bench_sets;
    std::optional<std::uint64_t> bench_seed;
    std::optional<std::size_t> bench_reps, bench_threads;
    std::optional<double> bench_test_fraction;
    bench->add_option("--config", bench_config, "config file (key = value lines)");
    bench->add_option("--seed", bench_seed, "master seed (overrides config)");
    bench->add_option("--replications", bench_reps, "replications (overrides config)");
    bench->add_option("--test-fraction", bench_test_fraction, "test fraction (overrides config)");
    bench->add_option("--threads", bench_threads, "worker threads (overrides config)");
    bench->add_option("--set", bench_sets, "extra key=value override (repeatable)");
    bench->add_option("--format", bench_format, "json|csv|markdown");
    bench->add_option("-o,--out", bench_out, "output path (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (gen->parsed()) {
            for (auto* cmd : {gen_donut_cmd, gen_cube_cmd, gen_sep_cmd}) {
                if (cmd->parsed()) return run_gen(cmd->get_name(), gen_args);
            }
        }
        if (res->parsed()) {
            const LabelSpec spec = resolve_label(res_input, res_label, res_positive);
            const Dataset ds = load_csv(res_input, spec, &std::cerr);
            ResampleRequest req;
            req.strategy = strategy_from_name(res_strategy);
            req.target_ratio = res_ratio;
            req.k_neighbors = res_k;
            req.seed = Seed{res_seed};
            const ResampleResult result = resample(ds, req);
            for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';
            save_csv(result.dataset, res_out);
            if (!res_provenance.empty()) write_provenance_csv(result, res_provenance);
            const auto counts = class_counts(result.dataset);
            std::cerr << "wrote " << res_out << ": " << counts.n_majority << "/"
                      << counts.n_minority << " majority/minority\n";
            return 0;
        }
        if (eval->parsed()) {
            const LabelSpec spec = resolve_label(eval_input, eval_label, eval_positive);
            const Dataset ds = load_csv(eval_input, spec, &std::cerr);
            SamplerChoice sampler;
            sampler.name = eval_sampler;
            if (eval_sampler == "raw") {
                sampler.is_raw = true;
            } else {
                sampler.request.strategy = strategy_from_name(eval_sampler);
                sampler.request.target_ratio = eval_ratio;
                sampler.request.k_neighbors = eval_k;
            }
            ClassifierConfig clf;
            clf.kind = eval_classifier;
            clf.knn_k = eval_knn_k;
            clf.mlp = eval_mlp;
            const auto values = run_single_cell(
                ds, "eval", sampler, clf, eval_test_fraction, !eval_no_standardize,
                Seed{eval_seed}, 0, {"gmean", "f1", "auc"});
            for (const auto& [metric, value] : values) {
                std::cout << metric << "=" << format_double(value) << '\n';
            }
            return 0;
        }
        if (bench->parsed()) {
            ConfigMap map;
            if (!bench_config.empty()) map = parse_config_file(bench_config);
            for (const auto& kv : bench_sets) {
                const auto eq = kv.find('=');
                if (eq == std::string::npos) {
                    throw ConfigError("--set expects key=value, got: " + kv);
                }
                apply_override(map, kv.substr(0, eq), kv.substr(eq + 1));
            }
            if (bench_seed) apply_override(map, "seed", std::to_string(*bench_seed));
            if (bench_reps) apply_override(map, "replications", std::to_string(*bench_reps));
            if (bench_test_fraction) {
                apply_override(map, "test_fraction", format_double(*bench_test_fraction));
            }
            if (bench_threads) apply_override(map, "threads", std::to_string(*bench_threads));

            const ExperimentConfig config = build_config(map);
            const Report report = run_experiment(config);

            if (bench_format == "json") {
                const std::string text = emit_report_json(report);
                if (bench_out.empty()) {
                    std::cout << text;
                } else {
                    write_text(bench_out, text);
                }
            } else if (bench_format == "csv") {
                const std::string obs = emit_report_csv(report);
                const std::string summary = emit_summary_csv(report);
                if (bench_out.empty()) {
                    std::cout << obs << '\n' << summary;
                } else {
                    write_text(bench_out, obs);
                    write_text(summary_path_for(bench_out), summary);
                }
            } else if (bench_format == "markdown") {
                const std::string text = emit_report_markdown(report);
                if (bench_out.empty()) {
                    std::cout << text;
                } else {
                    write_text(bench_out, text);
                }
            } else {
                throw ConfigError("unknown report format: " + bench_format);
            }
            return 0;
        }
    } catch (const kdesample::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
