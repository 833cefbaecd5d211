#include "cvbench/orchestrator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "cvbench/csv.hpp"
#include "cvbench/errors.hpp"
#include "cvbench/rng.hpp"

namespace cvbench {

namespace {

constexpr const char* kToolVersion = "0.1.0";

struct FitTask {
    std::size_t split;       // 0-based
    std::size_t set_index;
    std::size_t method_index;
    int fold;                // 1-based
};

Matrix set_as_matrix(const DescriptorSet& set, std::size_t n) {
    Matrix m(n, set.width);
    m.data = set.values;
    return m;
}

}  // namespace

std::size_t resolve_thread_count(std::size_t requested) {
    std::size_t threads = requested;
    if (threads == 0) {
        threads = std::thread::hardware_concurrency();
        if (threads == 0) threads = 1;
    }
    if (const char* cap_env = std::getenv("CVBENCH_THREADS")) {
        const long cap = std::strtol(cap_env, nullptr, 10);
        if (cap > 0) threads = std::min<std::size_t>(threads, static_cast<std::size_t>(cap));
    }
    return std::max<std::size_t>(1, threads);
}

RunResult run_model_train(const RunConfig& config) {
    RunConfig cfg = config;
    if (cfg.schema_path) {
        const DatasetSchema schema = load_schema(*cfg.schema_path);
        cfg.id_col = schema.id_col;
        cfg.response_col = schema.response_col;
        if (!schema.spec.lengths.empty()) cfg.spec = schema.spec;
    }
    if (cfg.methods.empty())
        throw ArgumentError("orchestrator.run_model_train", "methods list is empty");
    if (cfg.nfolds < 2)
        throw ArgumentError("orchestrator.run_model_train", "nfolds must be >= 2");
    if (cfg.nsplits < 1)
        throw ArgumentError("orchestrator.run_model_train", "nsplits must be >= 1");

    RunResult result;
    result.dataset =
        load_dataset(cfg.dataset_path, cfg.id_col, cfg.response_col, cfg.spec, cfg.force_continuous);
    const Dataset& ds = result.dataset;
    const std::size_t n = ds.n();
    result.plan = make_split_plan(n, cfg.nsplits, cfg.nfolds, cfg.seeds);
    const SplitPlan& plan = result.plan;

    // Resolved parameters per descriptor set (RF mtry depends on set width).
    const bool classify = ds.response.kind == ResponseKind::Binary;
    std::vector<std::map<std::string, ParamMap>> set_params(ds.descriptor_sets.size());
    for (std::size_t s = 0; s < ds.descriptor_sets.size(); ++s) {
        const ParamRegistry reg =
            make_model_defaults(n, ds.descriptor_sets[s].width, classify, cfg.nfolds);
        for (const auto& method : cfg.methods) {
            ParamMap overrides;
            if (auto it = cfg.param_overrides.find(method); it != cfg.param_overrides.end())
                overrides = it->second;
            set_params[s][method] = reg.resolve(method, overrides);
        }
    }

    std::vector<Matrix> set_matrices;
    set_matrices.reserve(ds.descriptor_sets.size());
    for (const auto& set : ds.descriptor_sets) set_matrices.push_back(set_as_matrix(set, n));

    std::vector<FitTask> tasks;
    for (std::size_t split = 0; split < plan.nsplits; ++split)
        for (std::size_t si = 0; si < ds.descriptor_sets.size(); ++si)
            for (std::size_t mi = 0; mi < cfg.methods.size(); ++mi)
                for (std::size_t fold = 1; fold <= plan.nfolds; ++fold)
                    tasks.push_back({split, si, mi, static_cast<int>(fold)});

    // Each task writes into its own slot, so aggregation is independent of
    // scheduling order and thread count.
    struct TaskOutput {
        std::vector<std::size_t> test_rows;
        std::vector<double> predictions;
    };
    std::vector<TaskOutput> outputs(tasks.size());
    std::atomic<std::size_t> next_task{0};
    std::atomic<bool> failed{false};
    std::string failure_message;
    std::mutex failure_mutex;

    const auto worker = [&]() {
        for (;;) {
            const std::size_t idx = next_task.fetch_add(1);
            if (idx >= tasks.size() || failed.load()) return;
            const FitTask& task = tasks[idx];
            try {
                const auto& labels = plan.assignment[task.split];
                const Matrix& full = set_matrices[task.set_index];
                std::vector<std::size_t> train_rows, test_rows;
                for (std::size_t r = 0; r < n; ++r)
                    (labels[r] == task.fold ? test_rows : train_rows).push_back(r);

                Matrix train_x(train_rows.size(), full.cols);
                std::vector<double> train_y(train_rows.size());
                for (std::size_t i = 0; i < train_rows.size(); ++i) {
                    for (std::size_t c = 0; c < full.cols; ++c)
                        train_x.at(i, c) = full.at(train_rows[i], c);
                    train_y[i] = ds.response.values[train_rows[i]];
                }
                Matrix test_x(test_rows.size(), full.cols);
                for (std::size_t i = 0; i < test_rows.size(); ++i)
                    for (std::size_t c = 0; c < full.cols; ++c)
                        test_x.at(i, c) = full.at(test_rows[i], c);

                const std::string& method = cfg.methods[task.method_index];
                MethodSpec spec;
                spec.method = method_from_name(method);
                spec.params = set_params[task.set_index].at(method);
                spec.task = ds.response.kind;
                // Task seed: split seed mixed with the (combo, fold) indices,
                // so serial and parallel runs agree bit for bit.
                const std::uint64_t combo_index =
                    task.set_index * cfg.methods.size() + task.method_index;
                const std::uint64_t task_seed = mix_seed(
                    plan.seeds[task.split], {combo_index, static_cast<std::uint64_t>(task.fold)});

                outputs[idx].test_rows = test_rows;
                outputs[idx].predictions = fit_predict(spec, train_x, train_y, test_x, task_seed);
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failed.exchange(true)) {
                    std::ostringstream msg;
                    msg << "task (split " << task.split + 1 << ", set '"
                        << ds.descriptor_sets[task.set_index].name << "', method "
                        << cfg.methods[task.method_index] << ", fold " << task.fold
                        << ") failed: " << e.what();
                    failure_message = msg.str();
                }
            }
        }
    };

    const std::size_t n_threads = std::min(resolve_thread_count(cfg.threads), tasks.size());
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (failed.load()) throw Error("orchestrator.run_model_train", failure_message);

    // Single-writer assembly, keyed by task indices.
    result.store.n = n;
    result.store.nsplits = plan.nsplits;
    result.store.task = ds.response.kind;
    for (std::size_t idx = 0; idx < tasks.size(); ++idx) {
        const FitTask& task = tasks[idx];
        const ComboKey combo{ds.descriptor_sets[task.set_index].name,
                             cfg.methods[task.method_index]};
        auto& entry = result.store.entries[{task.split + 1, combo}];
        if (entry.empty()) entry.assign(n, std::numeric_limits<double>::quiet_NaN());
        for (std::size_t i = 0; i < outputs[idx].test_rows.size(); ++i)
            entry[outputs[idx].test_rows[i]] = outputs[idx].predictions[i];
    }
    for (const auto& [key, preds] : result.store.entries)
        for (std::size_t r = 0; r < n; ++r)
            if (!std::isfinite(preds[r]))
                throw NumericError("orchestrator.run_model_train",
                                   "missing out-of-fold prediction for row " + std::to_string(r + 1) +
                                       " in split " + std::to_string(key.first));

    // Persist the run directory.
    std::filesystem::create_directories(cfg.out_dir);
    nlohmann::json manifest;
    manifest["tool"] = "cvbench";
    manifest["version"] = kToolVersion;
    manifest["dataset"] = cfg.dataset_path;
    manifest["schema"] = cfg.schema_path ? nlohmann::json(*cfg.schema_path) : nlohmann::json();
    manifest["id_col"] = cfg.id_col ? nlohmann::json(*cfg.id_col) : nlohmann::json();
    manifest["response_col"] = cfg.response_col;
    manifest["force_continuous"] = cfg.force_continuous;
    manifest["task"] = classify ? "binary" : "continuous";
    manifest["n"] = n;
    nlohmann::json sets = nlohmann::json::array();
    for (const auto& set : ds.descriptor_sets)
        sets.push_back({{"name", set.name}, {"length", set.width}});
    manifest["sets"] = sets;
    manifest["methods"] = cfg.methods;
    manifest["nfolds"] = cfg.nfolds;
    manifest["nsplits"] = cfg.nsplits;
    manifest["seeds"] = plan.seeds;
    nlohmann::json params = nlohmann::json::object();
    for (std::size_t s = 0; s < ds.descriptor_sets.size(); ++s) {
        nlohmann::json per_set = nlohmann::json::object();
        for (const auto& [method, pm] : set_params[s]) per_set[method] = pm;
        params[ds.descriptor_sets[s].name] = per_set;
    }
    manifest["params"] = params;
    write_text_file(cfg.out_dir + "/manifest.json", manifest.dump(2) + "\n");
    write_text_file(cfg.out_dir + "/folds.csv", split_plan_to_csv(plan));
    write_text_file(cfg.out_dir + "/predictions.csv", predictions_to_csv(result.store, ds.ids));
    return result;
}

std::string predictions_to_csv(const PredictionStore& store, const std::vector<std::string>& ids) {
    std::ostringstream out;
    out << "split,descriptor_set,method,id,prediction\n";
    for (const auto& [key, preds] : store.entries)
        for (std::size_t r = 0; r < preds.size(); ++r)
            out << key.first << ',' << key.second.set_name << ',' << key.second.method << ','
                << ids[r] << ',' << format_double(preds[r]) << '\n';
    return out.str();
}

void import_predictions(const std::string& path, const Dataset& dataset, PredictionStore& store) {
    const CsvTable table = read_csv(path);
    const int split_idx = table.column_index("split");
    const int set_idx = table.column_index("descriptor_set");
    const int method_idx = table.column_index("method");
    const int id_idx = table.column_index("id");
    const int pred_idx = table.column_index("prediction");
    if (split_idx < 0 || set_idx < 0 || method_idx < 0 || id_idx < 0 || pred_idx < 0)
        throw SchemaError("orchestrator.import_predictions",
                          "expected columns split,descriptor_set,method,id,prediction");

    std::map<std::string, std::size_t> id_to_row;
    for (std::size_t r = 0; r < dataset.n(); ++r) id_to_row[dataset.ids[r]] = r;

    std::map<std::pair<std::size_t, ComboKey>, std::vector<double>> incoming;
    std::map<std::pair<std::size_t, ComboKey>, std::vector<bool>> seen;
    for (const auto& row : table.rows) {
        std::size_t split = 0;
        try {
            split = std::stoul(row[split_idx]);
        } catch (...) {
            throw ParseError("orchestrator.import_predictions",
                             "bad split value '" + row[split_idx] + "'");
        }
        const ComboKey combo{row[set_idx], row[method_idx]};
        auto id_it = id_to_row.find(row[id_idx]);
        if (id_it == id_to_row.end())
            throw ValidationError("orchestrator.import_predictions",
                                  "unknown id '" + row[id_idx] + "' in split " +
                                      std::to_string(split));
        const double value = parse_double(row[pred_idx], "id " + row[id_idx]);
        if (!std::isfinite(value))
            throw ValidationError("orchestrator.import_predictions",
                                  "non-finite prediction for id " + row[id_idx]);
        auto key = std::make_pair(split, combo);
        if (!incoming.count(key)) {
            incoming[key].assign(dataset.n(), 0.0);
            seen[key].assign(dataset.n(), false);
        }
        if (seen[key][id_it->second])
            throw ValidationError("orchestrator.import_predictions",
                                  "duplicate id '" + row[id_idx] + "' for (split " +
                                      std::to_string(split) + ", " + combo.label() + ")");
        seen[key][id_it->second] = true;
        incoming[key][id_it->second] = value;
    }
    for (const auto& [key, flags] : seen) {
        for (std::size_t r = 0; r < flags.size(); ++r)
            if (!flags[r])
                throw ValidationError("orchestrator.import_predictions",
                                      "missing prediction for (split " +
                                          std::to_string(key.first) + ", id " + dataset.ids[r] +
                                          ")");
        if (store.entries.count(key))
            throw ValidationError("orchestrator.import_predictions",
                                  "(split " + std::to_string(key.first) + ", " +
                                      key.second.label() + ") already present in the store");
    }
    for (auto& [key, preds] : incoming) {
        store.nsplits = std::max(store.nsplits, key.first);
        store.entries[key] = std::move(preds);
    }
    store.n = dataset.n();
}

RunResult load_run(const std::string& run_dir,
                   const std::optional<std::string>& dataset_override) {
    std::ifstream in(run_dir + "/manifest.json");
    if (!in) throw IoError("orchestrator.load_run", "cannot open " + run_dir + "/manifest.json");
    nlohmann::json manifest;
    try {
        in >> manifest;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("orchestrator.load_run", std::string("bad manifest: ") + e.what());
    }
    RunResult result;
    std::optional<std::string> id_col;
    if (!manifest["id_col"].is_null()) id_col = manifest["id_col"].get<std::string>();
    DescriptorSetSpec spec;
    for (const auto& entry : manifest["sets"]) {
        spec.names.push_back(entry["name"].get<std::string>());
        spec.lengths.push_back(entry["length"].get<std::size_t>());
    }
    const std::string dataset_path =
        dataset_override ? *dataset_override : manifest["dataset"].get<std::string>();
    result.dataset = load_dataset(dataset_path, id_col, manifest["response_col"].get<std::string>(),
                                  spec, manifest["force_continuous"].get<bool>());
    result.plan = split_plan_from_csv(run_dir + "/folds.csv");
    result.store.n = result.dataset.n();
    result.store.task = result.dataset.response.kind;
    import_predictions(run_dir + "/predictions.csv", result.dataset, result.store);
    return result;
}

}  // namespace cvbench
