#include "cvbench/curves.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <numeric>
#include <set>
#include <sstream>

#include "cvbench/csv.hpp"
#include "cvbench/errors.hpp"
#include "cvbench/svg.hpp"

namespace cvbench {

namespace {

void check_max_select(std::size_t max_select, std::size_t n) {
    if (max_select < 1 || max_select > n)
        throw ArgumentError("curves.accumulation",
                            "max_select must be in 1..n, got " + std::to_string(max_select));
}

std::vector<double> accumulate_in_order(const std::vector<double>& y,
                                        const std::vector<std::size_t>& order,
                                        std::size_t max_select) {
    std::vector<double> acc(max_select);
    double running = 0.0;
    for (std::size_t m = 0; m < max_select; ++m) {
        running += y[order[m]];
        acc[m] = running;
    }
    return acc;
}

}  // namespace

AccumulationCurve accumulation(const std::vector<double>& y, const std::vector<double>& scores,
                               std::size_t max_select) {
    check_max_select(max_select, y.size());
    if (scores.size() != y.size())
        throw ArgumentError("curves.accumulation", "y/scores length mismatch");
    AccumulationCurve curve;
    curve.kind = CurveKind::Model;
    curve.accumulated = accumulate_in_order(y, testing_order(scores), max_select);
    return curve;
}

AccumulationCurve ideal_curve(const std::vector<double>& y, std::size_t max_select) {
    check_max_select(max_select, y.size());
    AccumulationCurve curve;
    curve.kind = CurveKind::Ideal;
    curve.accumulated = accumulate_in_order(y, testing_order(y), max_select);
    return curve;
}

AccumulationCurve random_curve(const std::vector<double>& y, std::size_t max_select) {
    check_max_select(max_select, y.size());
    const double mean = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(y.size());
    AccumulationCurve curve;
    curve.kind = CurveKind::Random;
    curve.accumulated.resize(max_select);
    for (std::size_t m = 0; m < max_select; ++m)
        curve.accumulated[m] = static_cast<double>(m + 1) * mean;
    return curve;
}

std::size_t default_max_select(std::size_t n) {
    const std::size_t quarter = n / 4;
    const std::size_t m = std::min<std::size_t>(300, quarter);
    return std::max<std::size_t>(1, m);
}

CurveSeries curve_series_from_name(const std::string& name) {
    if (name == "methods") return CurveSeries::Methods;
    if (name == "descriptors") return CurveSeries::Descriptors;
    if (name == "both") return CurveSeries::Both;
    throw ArgumentError("curves.curve_series_from_name",
                        "unknown series '" + name + "' (expected methods|descriptors|both)");
}

namespace {

// Fixed color and marker cycle for model curves.
const std::vector<std::string> kSeriesColors = {"#0072b2", "#d55e00", "#009e73", "#cc79a7",
                                                "#e69f00", "#56b4e9", "#f0e442", "#7f7f7f"};
const std::vector<std::string> kLineDashes = {"", "6,3", "2,2", "8,3,2,3"};

struct PlotGeometry {
    double left = 70, right = 170, top = 50, bottom = 60;
    int width = 800, height = 600;
    double x_max = 1, y_max = 1;

    double px(double m) const {
        return left + (m / x_max) * (width - left - right);
    }
    double py(double v) const {
        return height - bottom - (v / y_max) * (height - top - bottom);
    }
};

void draw_axes(SvgDocument& svg, const PlotGeometry& g, const std::string& title) {
    svg.line(g.px(0), g.py(0), g.px(g.x_max), g.py(0), "black");
    svg.line(g.px(0), g.py(0), g.px(0), g.py(g.y_max), "black");
    const int n_ticks = 5;
    for (int i = 0; i <= n_ticks; ++i) {
        const double xm = g.x_max * i / n_ticks;
        svg.line(g.px(xm), g.py(0), g.px(xm), g.py(0) + 5, "black");
        svg.text(g.px(xm), g.py(0) + 20, format_double(std::round(xm)), 11, "middle");
        const double yv = g.y_max * i / n_ticks;
        svg.line(g.px(0) - 5, g.py(yv), g.px(0), g.py(yv), "black");
        svg.text(g.px(0) - 8, g.py(yv) + 4, format_double(std::round(yv * 100) / 100), 11, "end");
    }
    svg.text((g.px(0) + g.px(g.x_max)) / 2, g.height - 15, "Number of tests", 13, "middle");
    svg.text(20, (g.py(0) + g.py(g.y_max)) / 2, "Accumulated response", 13, "middle", -90);
    svg.text((g.px(0) + g.px(g.x_max)) / 2, 28, title, 15, "middle");
}

struct PlotLine {
    std::string label;
    std::vector<double> values;
    std::string color;
    std::string dash;
    bool markers = false;
};

void draw_lines(SvgDocument& svg, const PlotGeometry& g, const std::vector<PlotLine>& lines) {
    double legend_y = g.top + 10;
    for (const auto& line : lines) {
        std::vector<std::pair<double, double>> points;
        points.reserve(line.values.size() + 1);
        points.emplace_back(g.px(0), g.py(0));
        for (std::size_t m = 0; m < line.values.size(); ++m)
            points.emplace_back(g.px(static_cast<double>(m + 1)), g.py(line.values[m]));
        svg.polyline(points, line.color, 1.5, line.dash);
        if (line.markers) {
            const std::size_t step = std::max<std::size_t>(1, line.values.size() / 20);
            for (std::size_t m = step - 1; m < line.values.size(); m += step)
                svg.circle(g.px(static_cast<double>(m + 1)), g.py(line.values[m]), 2.5, line.color);
        }
        const double lx = g.width - g.right + 15;
        svg.line(lx, legend_y - 4, lx + 24, legend_y - 4, line.color, 2.0, line.dash);
        svg.text(lx + 30, legend_y, line.label, 11);
        legend_y += 18;
    }
}

std::string render_one_plot(const std::vector<PlotLine>& lines, const std::string& title,
                            std::size_t max_select, int width, int height) {
    PlotGeometry g;
    g.width = width;
    g.height = height;
    g.x_max = static_cast<double>(max_select);
    g.y_max = 1e-12;
    for (const auto& line : lines)
        for (double v : line.values) g.y_max = std::max(g.y_max, v);
    SvgDocument svg(width, height);
    draw_axes(svg, g, title);
    draw_lines(svg, g, lines);
    return svg.finish();
}

std::string sanitize_key(const std::string& key) {
    std::string out;
    for (char c : key)
        out.push_back((std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_')
                          ? c
                          : '_');
    return out;
}

}  // namespace

std::vector<std::string> render_curve_series(const PredictionStore& store,
                                             const std::vector<double>& y,
                                             std::size_t max_select,
                                             const CurveRenderOptions& options,
                                             const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    const auto combos = store.combos();
    std::set<std::string> set_names, method_names;
    for (const auto& combo : combos) {
        set_names.insert(combo.set_name);
        method_names.insert(combo.method);
    }
    std::set<std::size_t> all_splits;
    for (const auto& [key, _] : store.entries) all_splits.insert(key.first);

    std::vector<std::size_t> splits(all_splits.begin(), all_splits.end());
    if (!options.splits.empty()) {
        for (std::size_t s : options.splits)
            if (!all_splits.count(s)) {
                std::ostringstream msg;
                msg << "unknown split " << s << "; available:";
                for (std::size_t a : all_splits) msg << ' ' << a;
                throw ArgumentError("curves.render_curve_series", msg.str());
            }
        splits = options.splits;
    }
    std::vector<std::string> methods(method_names.begin(), method_names.end());
    if (!options.methods.empty()) {
        for (const auto& m : options.methods)
            if (!method_names.count(m)) {
                std::string msg = "unknown method '" + m + "'; available:";
                for (const auto& a : method_names) msg += ' ' + a;
                throw ArgumentError("curves.render_curve_series", msg);
            }
        methods = options.methods;
    }

    const AccumulationCurve ideal = ideal_curve(y, max_select);
    const AccumulationCurve random = random_curve(y, max_select);
    const PlotLine ideal_line{"Ideal", ideal.accumulated, "#000000", "", false};
    const PlotLine random_line{"Random", random.accumulated, "#888888", "4,4", false};

    std::vector<std::string> written;
    const bool want_methods =
        options.series == CurveSeries::Methods || options.series == CurveSeries::Both;
    const bool want_descriptors =
        options.series == CurveSeries::Descriptors || options.series == CurveSeries::Both;

    if (want_methods) {
        for (std::size_t split : splits) {
            for (const auto& set_name : set_names) {
                std::vector<PlotLine> lines = {ideal_line, random_line};
                std::size_t color_idx = 0;
                for (const auto& combo : combos) {
                    if (combo.set_name != set_name) continue;
                    auto it = store.entries.find({split, combo});
                    if (it == store.entries.end()) continue;
                    PlotLine line;
                    line.label = combo.method;
                    line.values = accumulation(y, it->second, max_select).accumulated;
                    line.color = kSeriesColors[color_idx % kSeriesColors.size()];
                    // Thresholded continuous fits (Ridge on a binary task) are
                    // drawn dashed; classification fits solid with markers.
                    if (store.task == ResponseKind::Binary && combo.method == "Ridge") {
                        line.dash = "6,3";
                    } else {
                        line.markers = true;
                    }
                    lines.push_back(std::move(line));
                    ++color_idx;
                }
                std::ostringstream title;
                title << set_name << ", split " << split;
                const std::string path = out_dir + "/acc_methods_split" + std::to_string(split) +
                                         "_" + sanitize_key(set_name) + ".svg";
                write_text_file(path, render_one_plot(lines, title.str(), max_select,
                                                      options.width, options.height));
                written.push_back(path);
            }
        }
    }
    if (want_descriptors) {
        for (std::size_t split : splits) {
            for (const auto& method : methods) {
                std::vector<PlotLine> lines = {ideal_line, random_line};
                std::size_t idx = 0;
                for (const auto& combo : combos) {
                    if (combo.method != method) continue;
                    auto it = store.entries.find({split, combo});
                    if (it == store.entries.end()) continue;
                    PlotLine line;
                    line.label = combo.set_name;
                    line.values = accumulation(y, it->second, max_select).accumulated;
                    line.color = kSeriesColors[idx % kSeriesColors.size()];
                    line.dash = kLineDashes[idx % kLineDashes.size()];
                    line.markers = true;
                    lines.push_back(std::move(line));
                    ++idx;
                }
                std::ostringstream title;
                title << method << ", split " << split;
                const std::string path = out_dir + "/acc_descriptors_split" +
                                         std::to_string(split) + "_" + sanitize_key(method) +
                                         ".svg";
                write_text_file(path, render_one_plot(lines, title.str(), max_select,
                                                      options.width, options.height));
                written.push_back(path);
            }
        }
    }
    return written;
}

std::string curves_to_csv(const PredictionStore& store, const std::vector<double>& y,
                          std::size_t max_select) {
    std::ostringstream out;
    out << "split,set,method,m,accumulated\n";
    for (const auto& [key, predictions] : store.entries) {
        const auto curve = accumulation(y, predictions, max_select);
        for (std::size_t m = 0; m < curve.accumulated.size(); ++m)
            out << key.first << ',' << key.second.set_name << ',' << key.second.method << ','
                << m + 1 << ',' << format_double(curve.accumulated[m]) << '\n';
    }
    return out.str();
}

}  // namespace cvbench
