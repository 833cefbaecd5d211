#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cvbench/dataio.hpp"
#include "cvbench/folds.hpp"
#include "cvbench/learners.hpp"
#include "cvbench/measures.hpp"

namespace cvbench {

struct RunConfig {
    std::string dataset_path;
    std::optional<std::string> schema_path;
    std::optional<std::string> id_col;
    std::string response_col;
    DescriptorSetSpec spec;
    bool force_continuous = false;

    std::vector<std::string> methods = {"KNN", "Ridge", "Tree", "RF"};
    std::map<std::string, ParamMap> param_overrides;  // method -> overrides
    std::size_t nfolds = 10;
    std::size_t nsplits = 3;
    std::vector<std::uint64_t> seeds;  // empty = default_seeds(nsplits)
    std::size_t threads = 0;           // 0 = available parallelism (capped by CVBENCH_THREADS)
    std::string out_dir = "cvbench_run";
};

struct RunResult {
    Dataset dataset;
    SplitPlan plan;
    PredictionStore store;
};

// Fit the whole descriptor-set x method grid under repeated k-fold CV and
// write manifest.json, folds.csv, and predictions.csv to config.out_dir.
// Deterministic for a fixed config, at any thread count.
RunResult run_model_train(const RunConfig& config);

// Merge externally produced out-of-fold predictions (CSV columns
// split,descriptor_set,method,id,prediction) into the store. Every
// (split, combo) present in the file must cover all n dataset ids once.
void import_predictions(const std::string& path, const Dataset& dataset, PredictionStore& store);

std::string predictions_to_csv(const PredictionStore& store, const std::vector<std::string>& ids);

// Reload a finished run directory: dataset (via the manifest's dataset
// path), fold plan, and predictions.
RunResult load_run(const std::string& run_dir,
                   const std::optional<std::string>& dataset_override = std::nullopt);

std::size_t resolve_thread_count(std::size_t requested);

}  // namespace cvbench
