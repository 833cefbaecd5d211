#include "cvbench/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "cvbench/csv.hpp"
#include "cvbench/errors.hpp"
#include "cvbench/learners.hpp"

namespace cvbench {

std::vector<ComboKey> PredictionStore::combos() const {
    std::vector<ComboKey> keys;
    for (const auto& [key, _] : entries)
        if (std::find(keys.begin(), keys.end(), key.second) == keys.end())
            keys.push_back(key.second);
    std::sort(keys.begin(), keys.end());
    return keys;
}

const std::vector<double>& PredictionStore::predictions(std::size_t split,
                                                        const ComboKey& combo) const {
    auto it = entries.find({split, combo});
    if (it == entries.end())
        throw ArgumentError("measures.predictions",
                            "no predictions for split " + std::to_string(split) + ", combo " +
                                combo.label());
    return it->second;
}

ConfusionCounts confusion_counts(const std::vector<double>& y, const std::vector<int>& labels) {
    if (y.size() != labels.size())
        throw ArgumentError("measures.confusion_counts", "y/labels length mismatch");
    ConfusionCounts c;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const bool truth = y[i] == 1.0;
        const bool pred = labels[i] == 1;
        if (truth && pred) ++c.tp;
        else if (!truth && pred) ++c.fp;
        else if (!truth && !pred) ++c.tn;
        else ++c.fn;
    }
    return c;
}

BinaryMeasures binary_measures(const std::vector<double>& y, const std::vector<double>& scores,
                               double threshold) {
    const ConfusionCounts c = confusion_counts(y, binarize(scores, threshold));
    const double n = static_cast<double>(y.size());
    if (c.tp + c.fn == 0 || c.tn + c.fp == 0)
        throw UndefinedMeasureError("measures.binary_measures", "y must contain both classes");
    BinaryMeasures out{};
    out.error_rate = static_cast<double>(c.fp + c.fn) / n;
    out.sensitivity = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
    out.specificity = static_cast<double>(c.tn) / static_cast<double>(c.tn + c.fp);
    if (c.tp + c.fp == 0)
        throw UndefinedMeasureError("measures.binary_measures",
                                    "ppv undefined: no predicted positives at threshold " +
                                        format_double(threshold));
    out.ppv = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp);
    if (out.sensitivity + out.ppv == 0.0)
        throw UndefinedMeasureError("measures.binary_measures", "f1 undefined: sens + ppv = 0");
    out.f1 = 2.0 * out.sensitivity * out.ppv / (out.sensitivity + out.ppv);
    return out;
}

std::vector<double> midranks(const std::vector<double>& values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
        const double avg = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
        i = j + 1;
    }
    return ranks;
}

double auc(const std::vector<double>& y, const std::vector<double>& scores) {
    if (y.size() != scores.size()) throw ArgumentError("measures.auc", "y/scores length mismatch");
    std::size_t positives = 0;
    for (double v : y) positives += (v == 1.0);
    const std::size_t negatives = y.size() - positives;
    if (positives == 0 || negatives == 0)
        throw UndefinedMeasureError("measures.auc", "y must contain both classes");
    const std::vector<double> ranks = midranks(scores);
    double rank_sum = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i)
        if (y[i] == 1.0) rank_sum += ranks[i];
    const double p = static_cast<double>(positives);
    return (rank_sum - p * (p + 1.0) / 2.0) / (p * static_cast<double>(negatives));
}

// Testing order: descending score, ties broken by ascending row index.
std::vector<std::size_t> testing_order(const std::vector<double>& scores) {
    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
    return order;
}

double initial_enhancement(const std::vector<double>& y, const std::vector<double>& scores,
                           std::size_t m) {
    const std::size_t n = y.size();
    if (m < 1 || m > n)
        throw ArgumentError("measures.initial_enhancement",
                            "m must be in 1..n, got " + std::to_string(m));
    if (scores.size() != n)
        throw ArgumentError("measures.initial_enhancement", "y/scores length mismatch");
    std::size_t positives = 0;
    for (double v : y) positives += (v == 1.0);
    if (positives == 0)
        throw UndefinedMeasureError("measures.initial_enhancement", "no positives in y");
    const auto order = testing_order(scores);
    std::size_t hits = 0;
    for (std::size_t i = 0; i < m; ++i) hits += (y[order[i]] == 1.0);
    const double hit_rate = static_cast<double>(hits) / static_cast<double>(m);
    const double base_rate = static_cast<double>(positives) / static_cast<double>(n);
    return hit_rate / base_rate;
}

ContinuousMeasures continuous_measures(const std::vector<double>& y,
                                       const std::vector<double>& predictions) {
    const std::size_t n = y.size();
    if (predictions.size() != n)
        throw ArgumentError("measures.continuous_measures", "y/predictions length mismatch");
    if (n < 3)
        throw ArgumentError("measures.continuous_measures", "need n >= 3");
    ContinuousMeasures out{};
    double ss_res = 0.0;
    const double y_mean = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
    double ss_tot = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double e = y[i] - predictions[i];
        ss_res += e * e;
        ss_tot += (y[i] - y_mean) * (y[i] - y_mean);
    }
    out.rmse = std::sqrt(ss_res / static_cast<double>(n));
    if (ss_tot == 0.0)
        throw UndefinedMeasureError("measures.continuous_measures", "r2 undefined: constant y");
    out.r2 = 1.0 - ss_res / ss_tot;

    const std::vector<double> ry = midranks(y);
    const std::vector<double> rp = midranks(predictions);
    const double mean_r = (static_cast<double>(n) + 1.0) / 2.0;
    double num = 0.0, deny = 0.0, denp = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        num += (ry[i] - mean_r) * (rp[i] - mean_r);
        deny += (ry[i] - mean_r) * (ry[i] - mean_r);
        denp += (rp[i] - mean_r) * (rp[i] - mean_r);
    }
    if (deny == 0.0 || denp == 0.0)
        throw UndefinedMeasureError("measures.continuous_measures",
                                    "rho undefined: constant ranks");
    out.rho = num / std::sqrt(deny * denp);
    return out;
}

const std::vector<std::string>& known_metrics() {
    static const std::vector<std::string> metrics = {
        "enhancement", "auc", "error rate", "sensitivity", "specificity",
        "ppv",         "fmeasure", "rmse", "r2", "rho"};
    return metrics;
}

bool metric_is_binary(const std::string& metric) {
    if (metric == "rmse" || metric == "r2" || metric == "rho") return false;
    if (std::find(known_metrics().begin(), known_metrics().end(), metric) ==
        known_metrics().end())
        throw ArgumentError("measures.metric_is_binary", "unknown metric: " + metric);
    return true;
}

bool metric_lower_is_better(const std::string& metric) {
    return metric == "error rate" || metric == "rmse";
}

namespace {

double one_measure(const std::string& metric, const std::vector<double>& y,
                   const std::vector<double>& scores, std::size_t m, double threshold) {
    if (metric == "enhancement") return initial_enhancement(y, scores, m);
    if (metric == "auc") return auc(y, scores);
    if (metric == "rmse") return continuous_measures(y, scores).rmse;
    if (metric == "r2") return continuous_measures(y, scores).r2;
    if (metric == "rho") return continuous_measures(y, scores).rho;
    const BinaryMeasures b = binary_measures(y, scores, threshold);
    if (metric == "error rate") return b.error_rate;
    if (metric == "sensitivity") return b.sensitivity;
    if (metric == "specificity") return b.specificity;
    if (metric == "ppv") return b.ppv;
    if (metric == "fmeasure") return b.f1;
    throw ArgumentError("measures.build_measure_table", "unknown metric: " + metric);
}

}  // namespace

MeasureTable build_measure_table(const PredictionStore& store, const std::vector<double>& y,
                                 const std::string& metric, std::size_t m, double threshold) {
    const bool binary_metric = metric_is_binary(metric);
    if (binary_metric && store.task != ResponseKind::Binary)
        throw ArgumentError("measures.build_measure_table",
                            "metric '" + metric + "' requires a binary response");
    if (!binary_metric && store.task != ResponseKind::Continuous)
        throw ArgumentError("measures.build_measure_table",
                            "metric '" + metric + "' requires a continuous response");
    MeasureTable table;
    table.metric = metric;
    table.m = m;
    table.threshold = threshold;
    for (const auto& [key, predictions] : store.entries) {
        MeasureRow row;
        row.split = key.first;
        row.combo = key.second;
        try {
            row.value = one_measure(metric, y, predictions, m, threshold);
        } catch (const UndefinedMeasureError& e) {
            throw UndefinedMeasureError("measures.build_measure_table",
                                        "cell (split " + std::to_string(key.first) + ", " +
                                            key.second.label() + "): " + e.what());
        }
        if (!std::isfinite(row.value))
            throw NumericError("measures.build_measure_table",
                               "non-finite value for cell (split " + std::to_string(key.first) +
                                   ", " + key.second.label() + ")");
        table.rows.push_back(std::move(row));
    }
    return table;
}

std::string measure_table_to_csv(const MeasureTable& table) {
    std::ostringstream out;
    out << "split,descriptor_set,method,metric,m,threshold,value\n";
    for (const auto& row : table.rows) {
        out << row.split << ',' << row.combo.set_name << ',' << row.combo.method << ','
            << table.metric << ',' << table.m << ',' << format_double(table.threshold) << ','
            << format_double(row.value) << '\n';
    }
    return out.str();
}

}  // namespace cvbench
