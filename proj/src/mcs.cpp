#include "cvbench/mcs.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "cvbench/csv.hpp"
#include "cvbench/errors.hpp"
#include "cvbench/svg.hpp"

namespace cvbench {

namespace {

McsCell cell_for_bucket(SignificanceBucket bucket) {
    switch (bucket) {
        case SignificanceBucket::NotSignificant: return McsCell::NotSignificant;
        case SignificanceBucket::P05: return McsCell::P05;
        case SignificanceBucket::P01: return McsCell::P01;
    }
    return McsCell::NotSignificant;
}

std::string cell_name(McsCell cell) {
    switch (cell) {
        case McsCell::Self: return "self";
        case McsCell::NotSignificant: return "not_significant";
        case McsCell::P05: return "p<=0.05";
        case McsCell::P01: return "p<=0.01";
    }
    return "?";
}

// Colorblind-safe fills: blue (not significant), orange (0.01 < p <= 0.05),
// vermillion (p <= 0.01), grey diagonal.
std::string cell_color(McsCell cell) {
    switch (cell) {
        case McsCell::Self: return "#bbbbbb";
        case McsCell::NotSignificant: return "#0072b2";
        case McsCell::P05: return "#e69f00";
        case McsCell::P01: return "#d55e00";
    }
    return "#ffffff";
}

std::string cell_legend(McsCell cell) {
    switch (cell) {
        case McsCell::Self: return "same combination";
        case McsCell::NotSignificant: return "p > 0.05";
        case McsCell::P05: return "0.01 < p <= 0.05";
        case McsCell::P01: return "p <= 0.01";
    }
    return "?";
}

}  // namespace

McsMatrix build_mcs(const std::vector<PairwiseComparison>& comparisons,
                    const std::vector<ComboKey>& combos, const std::vector<double>& means,
                    const std::string& metric, std::size_t m, double threshold) {
    if (combos.size() != means.size())
        throw ArgumentError("mcs.build_mcs", "combos/means length mismatch");
    const std::size_t nj = combos.size();
    std::map<std::pair<ComboKey, ComboKey>, SignificanceBucket> buckets;
    for (const auto& cmp : comparisons) {
        buckets[{cmp.combo_a, cmp.combo_b}] = cmp.bucket;
        buckets[{cmp.combo_b, cmp.combo_a}] = cmp.bucket;
    }

    McsMatrix out;
    out.metric = metric;
    out.m = m;
    out.threshold = threshold;
    out.lower_is_better = metric_lower_is_better(metric);

    // Best-to-worst ordering by mean under the metric direction, label ties
    // broken lexicographically.
    std::vector<std::size_t> order(nj);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (means[a] != means[b])
            return out.lower_is_better ? means[a] < means[b] : means[a] > means[b];
        return combos[a].label() < combos[b].label();
    });
    for (std::size_t idx : order) {
        out.ordering.push_back(combos[idx]);
        out.means.push_back(means[idx]);
    }

    out.cells.assign(nj * nj, McsCell::Self);
    for (std::size_t a = 0; a < nj; ++a) {
        for (std::size_t b = 0; b < nj; ++b) {
            if (a == b) continue;
            auto it = buckets.find({out.ordering[a], out.ordering[b]});
            if (it == buckets.end())
                throw ArgumentError("mcs.build_mcs",
                                    "missing pairwise comparison for (" + out.ordering[a].label() +
                                        ", " + out.ordering[b].label() + ")");
            out.cells[a * nj + b] = cell_for_bucket(it->second);
        }
    }
    return out;
}

std::string render_mcs_svg(const McsMatrix& matrix, int width, int height) {
    const std::size_t nj = matrix.size();
    if (nj == 0) throw ArgumentError("mcs.render_mcs_svg", "empty matrix");
    SvgDocument svg(width, height);

    const double left = 180, top = 70, right = 40, bottom = 150;
    const double grid_w = width - left - right;
    const double grid_h = height - top - bottom;
    const double cell_w = grid_w / static_cast<double>(nj);
    const double cell_h = grid_h / static_cast<double>(nj);

    std::ostringstream title;
    title << "Multiple comparisons similarity: " << matrix.metric;
    if (matrix.metric == "enhancement") title << " (m = " << matrix.m << ")";
    svg.text(left + grid_w / 2, 30, title.str(), 15, "middle");
    svg.text(left + grid_w / 2, 50, "ordered best to worst", 11, "middle");

    for (std::size_t a = 0; a < nj; ++a) {
        for (std::size_t b = 0; b < nj; ++b) {
            const double x = left + static_cast<double>(b) * cell_w;
            const double y = top + static_cast<double>(a) * cell_h;
            svg.rect(x, y, cell_w, cell_h, cell_color(matrix.cell(a, b)), "#ffffff");
        }
        const double cy = top + (static_cast<double>(a) + 0.5) * cell_h;
        svg.text(left - 6, cy + 4, matrix.ordering[a].label(), 10, "end");
        const double cx = left + (static_cast<double>(a) + 0.5) * cell_w;
        svg.text(cx, top + grid_h + 12, matrix.ordering[a].label(), 10, "end", -60);
    }

    double lx = left;
    const double ly = static_cast<double>(height) - 22;
    for (McsCell cell : {McsCell::P01, McsCell::P05, McsCell::NotSignificant, McsCell::Self}) {
        svg.rect(lx, ly - 11, 14, 14, cell_color(cell), "#000000");
        svg.text(lx + 20, ly, cell_legend(cell), 11);
        lx += 150;
    }
    return svg.finish();
}

std::string mcs_to_csv(const McsMatrix& matrix) {
    std::ostringstream out;
    out << "rank,combo,mean";
    for (std::size_t b = 0; b < matrix.size(); ++b) out << ',' << matrix.ordering[b].label();
    out << '\n';
    for (std::size_t a = 0; a < matrix.size(); ++a) {
        out << a + 1 << ',' << matrix.ordering[a].label() << ',' << format_double(matrix.means[a]);
        for (std::size_t b = 0; b < matrix.size(); ++b) out << ',' << cell_name(matrix.cell(a, b));
        out << '\n';
    }
    return out.str();
}

}  // namespace cvbench
