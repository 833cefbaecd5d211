#pragma once

#include <string>
#include <vector>

#include "cvbench/inference.hpp"

namespace cvbench {

enum class McsCell { Self, NotSignificant, P05, P01 };

// Multiple-comparisons-similarity matrix: axes hold the D-M combinations
// ordered best to worst by mean measure, cells the significance buckets.
struct McsMatrix {
    std::string metric;
    std::size_t m = 0;
    double threshold = 0.5;
    bool lower_is_better = false;
    std::vector<ComboKey> ordering;
    std::vector<double> means;       // aligned with ordering
    std::vector<McsCell> cells;      // J*J, row-major in ordering order

    std::size_t size() const { return ordering.size(); }
    McsCell cell(std::size_t a, std::size_t b) const { return cells[a * size() + b]; }
};

McsMatrix build_mcs(const std::vector<PairwiseComparison>& comparisons,
                    const std::vector<ComboKey>& combos, const std::vector<double>& means,
                    const std::string& metric, std::size_t m = 0, double threshold = 0.5);

std::string render_mcs_svg(const McsMatrix& matrix, int width = 800, int height = 600);

// mcs_<metric>.csv companion: ordering, means, and the bucket matrix.
std::string mcs_to_csv(const McsMatrix& matrix);

}  // namespace cvbench
