#pragma once

#include <string>
#include <vector>

#include "cvbench/measures.hpp"

namespace cvbench {

enum class CurveKind { Model, Ideal, Random };

struct AccumulationCurve {
    CurveKind kind = CurveKind::Model;
    std::size_t split = 0;   // 0 for reference curves
    ComboKey combo;          // empty for reference curves
    std::vector<double> accumulated;  // index m-1 holds the running total at m tests

    std::size_t max_select() const { return accumulated.size(); }
};

// Running sum of y over the first m tests, testing order by descending
// score (ties by row index). Binary y is the 0/1 special case.
AccumulationCurve accumulation(const std::vector<double>& y, const std::vector<double>& scores,
                               std::size_t max_select);

// Best achievable curve: y accumulated in its own descending order.
AccumulationCurve ideal_curve(const std::vector<double>& y, std::size_t max_select);

// Expected curve under a uniformly random testing order: m * mean(y).
AccumulationCurve random_curve(const std::vector<double>& y, std::size_t max_select);

// floor(min(300, n/4)), clamped to at least 1.
std::size_t default_max_select(std::size_t n);

enum class CurveSeries { Methods, Descriptors, Both };

CurveSeries curve_series_from_name(const std::string& name);

struct CurveRenderOptions {
    CurveSeries series = CurveSeries::Both;
    std::vector<std::size_t> splits;      // empty = all
    std::vector<std::string> methods;     // empty = all (filters the descriptors series)
    int width = 800;
    int height = 600;
};

// Renders acc_<series>_split<i>_<key>.svg files into out_dir and returns
// their paths. "methods" overlays all methods for one (split, set);
// "descriptors" overlays all sets for one (split, method). Ideal and
// Random references are drawn on every plot.
std::vector<std::string> render_curve_series(const PredictionStore& store,
                                             const std::vector<double>& y,
                                             std::size_t max_select,
                                             const CurveRenderOptions& options,
                                             const std::string& out_dir);

// curves.csv: columns split,set,method,m,accumulated.
std::string curves_to_csv(const PredictionStore& store, const std::vector<double>& y,
                          std::size_t max_select);

}  // namespace cvbench
