// cvbench: fit a descriptor-set x method grid under seeded repeated k-fold
// cross-validation, then assess performance differences with a blocked
// ANOVA and Tukey-adjusted pairwise comparisons.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cvbench/csv.hpp"
#include "cvbench/curves.hpp"
#include "cvbench/errors.hpp"
#include "cvbench/inference.hpp"
#include "cvbench/learners.hpp"
#include "cvbench/mcs.hpp"
#include "cvbench/measures.hpp"
#include "cvbench/orchestrator.hpp"

namespace {

using namespace cvbench;

DescriptorSetSpec parse_sets_flag(const std::string& flag) {
    // name:length pairs, comma separated: "BurdenNumbers:24,Pharmacophores:147"
    DescriptorSetSpec spec;
    std::stringstream ss(flag);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos || colon == 0)
            throw ArgumentError("cli.parse_sets", "expected name:length, got '" + item + "'");
        spec.names.push_back(item.substr(0, colon));
        spec.lengths.push_back(std::stoul(item.substr(colon + 1)));
    }
    return spec;
}

std::map<std::string, ParamMap> load_param_overrides(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cli.load_params", "cannot open params file: " + path);
    nlohmann::json j;
    in >> j;
    std::map<std::string, ParamMap> overrides;
    for (const auto& [method, params] : j.items())
        for (const auto& [key, value] : params.items())
            overrides[method][key] = value.get<double>();
    return overrides;
}

struct AssessArtifacts {
    MeasureTable table;
    AnovaTable anova;
    std::vector<PairwiseComparison> comparisons;
    McsMatrix mcs;
};

AssessArtifacts assess(const RunResult& run, const std::string& metric, std::size_t m,
                       double threshold) {
    AssessArtifacts art;
    const std::size_t effective_m = std::min(m, run.dataset.n());
    art.table = build_measure_table(run.store, run.dataset.response.values, metric, effective_m,
                                    threshold);
    art.anova = anova_blocked(art.table);
    art.comparisons = tukey_kramer(art.anova);
    art.mcs = build_mcs(art.comparisons, art.anova.combo_keys, art.anova.combo_means, metric,
                        effective_m, threshold);
    return art;
}

int cmd_fit(const RunConfig& config) {
    const auto start = std::chrono::steady_clock::now();
    const RunResult result = run_model_train(config);
    const auto elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << "fit: " << result.dataset.descriptor_sets.size() << " descriptor sets x "
              << config.methods.size() << " methods x " << result.plan.nsplits << " splits ("
              << result.plan.nfolds << "-fold CV, n = " << result.dataset.n() << ")\n";
    std::cout << "wrote " << config.out_dir << "/manifest.json, folds.csv, predictions.csv in "
              << format_double(elapsed) << " s\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cross-validated model assessment benchmark"};
    app.require_subcommand(1);

    // fit
    RunConfig config;
    std::string sets_flag, seeds_flag, params_path, schema_path;
    auto* fit = app.add_subcommand("fit", "Fit the D-M grid under repeated k-fold CV");
    fit->add_option("--data", config.dataset_path, "Input CSV")->required();
    fit->add_option("--schema", schema_path, "Sidecar JSON schema file");
    std::string response_col, id_col;
    fit->add_option("--response", response_col, "Response column name");
    fit->add_option("--id", id_col, "Optional ID column name");
    fit->add_option("--sets", sets_flag, "Descriptor sets as name:length,name:length");
    fit->add_option("--methods", config.methods, "Methods to fit (default KNN Ridge Tree RF)")
        ->delimiter(',');
    fit->add_option("--params", params_path, "JSON file of per-method parameter overrides");
    fit->add_option("--nfolds", config.nfolds, "Folds per split (default 10)");
    fit->add_option("--nsplits", config.nsplits, "Number of CV splits (default 3)");
    fit->add_option("--seeds", seeds_flag, "Comma-separated per-split seeds (default 11111,22222,...)");
    fit->add_option("--threads", config.threads, "Parallelism width (default: available cores)");
    fit->add_option("--out", config.out_dir, "Run directory (default cvbench_run)");
    fit->add_flag("--force-continuous", config.force_continuous,
                  "Treat an all-0/1 response as continuous");

    // assess
    std::string run_dir = "cvbench_run", metric = "enhancement", data_override;
    std::size_t m_tests = 300;
    double threshold = 0.5;
    auto* assess_cmd =
        app.add_subcommand("assess", "ANOVA + Tukey pairwise comparisons + MCS plot");
    assess_cmd->add_option("--run", run_dir, "Run directory (default cvbench_run)");
    assess_cmd->add_option("--data", data_override, "Override the manifest's dataset path");
    assess_cmd->add_option("--metric", metric,
                           "enhancement|auc|error rate|sensitivity|specificity|ppv|fmeasure|"
                           "rmse|r2|rho");
    assess_cmd->add_option("--m", m_tests, "Tests for initial enhancement (default 300)");
    assess_cmd->add_option("--threshold", threshold, "Score threshold (default 0.5)");

    // curves
    std::string series_flag = "both";
    std::vector<std::size_t> splits_flag;
    std::vector<std::string> meths_flag;
    std::size_t max_select_flag = 0;
    auto* curves_cmd = app.add_subcommand("curves", "Render accumulation curve SVGs");
    curves_cmd->add_option("--run", run_dir, "Run directory");
    curves_cmd->add_option("--data", data_override, "Override the manifest's dataset path");
    curves_cmd->add_option("--series", series_flag, "methods|descriptors|both");
    curves_cmd->add_option("--splits", splits_flag, "Splits to plot (default all)")
        ->delimiter(',');
    curves_cmd->add_option("--meths", meths_flag, "Methods to plot (default all)")
        ->delimiter(',');
    curves_cmd->add_option("--max-select", max_select_flag,
                           "Tests per curve (default floor(min(300, n/4)))");

    // mcs
    auto* mcs_cmd = app.add_subcommand("mcs", "Render only the MCS plot for a metric");
    mcs_cmd->add_option("--run", run_dir, "Run directory");
    mcs_cmd->add_option("--data", data_override, "Override the manifest's dataset path");
    mcs_cmd->add_option("--metric", metric, "Performance measure");
    mcs_cmd->add_option("--m", m_tests, "Tests for initial enhancement");
    mcs_cmd->add_option("--threshold", threshold, "Score threshold");

    // import
    std::string import_path;
    auto* import_cmd =
        app.add_subcommand("import", "Merge external out-of-fold predictions into a run");
    import_cmd->add_option("--run", run_dir, "Run directory");
    import_cmd->add_option("--data", data_override, "Override the manifest's dataset path");
    import_cmd->add_option("--file", import_path, "CSV: split,descriptor_set,method,id,prediction")
        ->required();

    // defaults
    std::size_t def_n = 0, def_p = 0, def_nfolds = 10;
    bool def_classify = false;
    auto* defaults_cmd = app.add_subcommand("defaults", "Print the parameter defaults registry");
    defaults_cmd->add_option("--n", def_n, "Observation count")->required();
    defaults_cmd->add_option("--p", def_p, "Descriptor count")->required();
    defaults_cmd->add_option("--nfolds", def_nfolds, "Folds (default 10)");
    defaults_cmd->add_flag("--classify", def_classify, "Binary task");

    CLI11_PARSE(app, argc, argv);

    try {
        const std::optional<std::string> override_opt =
            data_override.empty() ? std::nullopt : std::optional<std::string>(data_override);
        if (fit->parsed()) {
            if (!schema_path.empty()) config.schema_path = schema_path;
            if (!id_col.empty()) config.id_col = id_col;
            if (!response_col.empty()) config.response_col = response_col;
            if (config.response_col.empty() && !config.schema_path) {
                std::cerr << "fit: --response (or --schema) is required\n";
                return 2;
            }
            if (!sets_flag.empty()) config.spec = parse_sets_flag(sets_flag);
            if (!params_path.empty()) config.param_overrides = load_param_overrides(params_path);
            if (!seeds_flag.empty()) {
                std::stringstream ss(seeds_flag);
                std::string item;
                while (std::getline(ss, item, ',')) config.seeds.push_back(std::stoull(item));
            }
            return cmd_fit(config);
        }
        if (assess_cmd->parsed()) {
            const RunResult run = load_run(run_dir, override_opt);
            const AssessArtifacts art = assess(run, metric, m_tests, threshold);
            std::cout << anova_to_text(art.anova);
            write_text_file(run_dir + "/measures.csv", measure_table_to_csv(art.table));
            write_text_file(run_dir + "/pairwise.csv", pairwise_to_csv(art.comparisons));
            const std::string safe_metric = metric == "error rate" ? "error_rate" : metric;
            write_text_file(run_dir + "/mcs_" + safe_metric + ".svg", render_mcs_svg(art.mcs));
            write_text_file(run_dir + "/mcs_" + safe_metric + ".csv", mcs_to_csv(art.mcs));
            std::cout << "wrote measures.csv, pairwise.csv, mcs_" << safe_metric
                      << ".{svg,csv} to " << run_dir << "\n";
            return 0;
        }
        if (curves_cmd->parsed()) {
            const RunResult run = load_run(run_dir, override_opt);
            const std::size_t max_select =
                max_select_flag > 0 ? max_select_flag : default_max_select(run.dataset.n());
            CurveRenderOptions options;
            options.series = curve_series_from_name(series_flag);
            options.splits = splits_flag;
            options.methods = meths_flag;
            const auto files = render_curve_series(run.store, run.dataset.response.values,
                                                   max_select, options, run_dir);
            write_text_file(run_dir + "/curves.csv",
                            curves_to_csv(run.store, run.dataset.response.values, max_select));
            std::cout << "wrote " << files.size() << " curve SVGs and curves.csv to " << run_dir
                      << "\n";
            return 0;
        }
        if (mcs_cmd->parsed()) {
            const RunResult run = load_run(run_dir, override_opt);
            const AssessArtifacts art = assess(run, metric, m_tests, threshold);
            const std::string safe_metric = metric == "error rate" ? "error_rate" : metric;
            write_text_file(run_dir + "/mcs_" + safe_metric + ".svg", render_mcs_svg(art.mcs));
            write_text_file(run_dir + "/mcs_" + safe_metric + ".csv", mcs_to_csv(art.mcs));
            std::cout << "wrote mcs_" << safe_metric << ".{svg,csv} to " << run_dir << "\n";
            return 0;
        }
        if (import_cmd->parsed()) {
            RunResult run = load_run(run_dir, override_opt);
            import_predictions(import_path, run.dataset, run.store);
            write_text_file(run_dir + "/predictions.csv",
                            predictions_to_csv(run.store, run.dataset.ids));
            std::cout << "merged " << import_path << "; store now holds "
                      << run.store.entries.size() << " (split, combo) entries\n";
            return 0;
        }
        if (defaults_cmd->parsed()) {
            const ParamRegistry reg = make_model_defaults(def_n, def_p, def_classify, def_nfolds);
            nlohmann::json j = nlohmann::json::object();
            for (const auto& [method, params] : reg.defaults) j[method] = params;
            std::cout << j.dump(2) << "\n";
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
