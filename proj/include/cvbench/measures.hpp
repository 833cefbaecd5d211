#pragma once

#include <map>
#include <string>
#include <vector>

#include "cvbench/dataio.hpp"

namespace cvbench {

// One descriptor-set / method pairing; the treatment factor downstream.
struct ComboKey {
    std::string set_name;
    std::string method;

    std::string label() const { return set_name + "-" + method; }
    auto operator<=>(const ComboKey&) const = default;
};

// Out-of-fold predictions per (split, combo), aligned to dataset row order.
struct PredictionStore {
    std::size_t n = 0;
    std::size_t nsplits = 0;
    ResponseKind task = ResponseKind::Binary;
    std::map<std::pair<std::size_t, ComboKey>, std::vector<double>> entries;

    std::vector<ComboKey> combos() const;  // sorted, deduplicated
    const std::vector<double>& predictions(std::size_t split, const ComboKey& combo) const;
};

struct ConfusionCounts {
    std::size_t tp = 0, fp = 0, tn = 0, fn = 0;
};

struct BinaryMeasures {
    double error_rate, sensitivity, specificity, ppv, f1;
};

struct ContinuousMeasures {
    double rmse, r2, rho;
};

ConfusionCounts confusion_counts(const std::vector<double>& y, const std::vector<int>& labels);
BinaryMeasures binary_measures(const std::vector<double>& y, const std::vector<double>& scores,
                               double threshold = 0.5);

// Mann-Whitney AUC with midranks for ties.
double auc(const std::vector<double>& y, const std::vector<double>& scores);

// Hit rate in the first m tests (descending score, ties by row index)
// divided by the positive proportion of the whole data set.
double initial_enhancement(const std::vector<double>& y, const std::vector<double>& scores,
                           std::size_t m);

ContinuousMeasures continuous_measures(const std::vector<double>& y,
                                       const std::vector<double>& predictions);

// Midranks (average rank for ties), 1-based.
std::vector<double> midranks(const std::vector<double>& values);

// Row order used for accumulation and initial enhancement: descending
// score, ties broken by ascending original row index.
std::vector<std::size_t> testing_order(const std::vector<double>& scores);

// Supported metric names: enhancement, auc, error rate, sensitivity,
// specificity, ppv, fmeasure (binary); rmse, r2, rho (continuous).
bool metric_is_binary(const std::string& metric);
bool metric_lower_is_better(const std::string& metric);
const std::vector<std::string>& known_metrics();

struct MeasureRow {
    std::size_t split;  // 1-based
    ComboKey combo;
    double value;
};

struct MeasureTable {
    std::string metric;
    std::size_t m = 0;        // tests, for enhancement
    double threshold = 0.5;   // for thresholded binary measures
    std::vector<MeasureRow> rows;
};

// One value per (split, combo) on the pooled out-of-fold predictions.
MeasureTable build_measure_table(const PredictionStore& store, const std::vector<double>& y,
                                 const std::string& metric, std::size_t m = 300,
                                 double threshold = 0.5);

std::string measure_table_to_csv(const MeasureTable& table);

}  // namespace cvbench
