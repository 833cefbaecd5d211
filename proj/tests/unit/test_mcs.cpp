#include <algorithm>
#include <doctest.h>
#include <string>
#include <vector>

#include "cvbench/errors.hpp"
#include "cvbench/mcs.hpp"

using namespace cvbench;

namespace {

std::size_t count_occurrences(const std::string& haystack, const std::string& needle) {
    std::size_t count = 0;
    for (std::size_t pos = haystack.find(needle); pos != std::string::npos;
         pos = haystack.find(needle, pos + needle.size()))
        ++count;
    return count;
}

PairwiseComparison make_pair(const ComboKey& a, const ComboKey& b, double mean_a, double mean_b,
                             double p_adj) {
    PairwiseComparison cmp;
    cmp.combo_a = a;
    cmp.combo_b = b;
    cmp.mean_a = mean_a;
    cmp.mean_b = mean_b;
    cmp.diff = mean_a - mean_b;
    cmp.p_adj = p_adj;
    cmp.bucket = bucket_for_p(p_adj);
    return cmp;
}

}  // namespace

TEST_CASE("build_mcs orders best to worst and buckets cells") {
    const ComboKey a{"A", "KNN"}, b{"A", "RF"}, c{"B", "KNN"};
    const std::vector<ComboKey> combos = {a, b, c};
    const std::vector<double> means = {0.6, 0.9, 0.75};
    const std::vector<PairwiseComparison> cmps = {
        make_pair(a, b, 0.6, 0.9, 0.004),
        make_pair(a, c, 0.6, 0.75, 0.03),
        make_pair(b, c, 0.9, 0.75, 0.4),
    };
    const McsMatrix matrix = build_mcs(cmps, combos, means, "auc");
    REQUIRE(matrix.size() == 3);
    CHECK_FALSE(matrix.lower_is_better);
    // auc: higher is better, so b (0.9) first, then c, then a.
    CHECK(matrix.ordering[0] == b);
    CHECK(matrix.ordering[1] == c);
    CHECK(matrix.ordering[2] == a);
    CHECK(matrix.means == std::vector<double>{0.9, 0.75, 0.6});
    for (std::size_t i = 0; i < 3; ++i) CHECK(matrix.cell(i, i) == McsCell::Self);
    // b vs c: p=0.4, b vs a: p=0.004, c vs a: p=0.03.
    CHECK(matrix.cell(0, 1) == McsCell::NotSignificant);
    CHECK(matrix.cell(0, 2) == McsCell::P01);
    CHECK(matrix.cell(1, 2) == McsCell::P05);
}

TEST_CASE("build_mcs flips ordering for lower-is-better metrics") {
    const ComboKey a{"A", "KNN"}, b{"A", "RF"};
    const std::vector<PairwiseComparison> cmps = {make_pair(a, b, 0.1, 0.3, 0.2)};
    const McsMatrix matrix = build_mcs(cmps, {a, b}, {0.1, 0.3}, "error rate");
    CHECK(matrix.lower_is_better);
    CHECK(matrix.ordering[0] == a);  // lower error rate wins
    CHECK(matrix.ordering[1] == b);

    const McsMatrix flipped = build_mcs(cmps, {a, b}, {0.1, 0.3}, "auc");
    CHECK(flipped.ordering[0] == b);
}

TEST_CASE("mcs matrix is symmetric") {
    const ComboKey a{"A", "KNN"}, b{"A", "RF"}, c{"B", "Tree"}, d{"B", "Ridge"};
    const std::vector<ComboKey> combos = {a, b, c, d};
    const std::vector<double> means = {1.2, 3.4, 2.1, 2.9};
    std::vector<PairwiseComparison> cmps;
    const double ps[] = {0.001, 0.02, 0.2, 0.04, 0.6, 0.009};
    std::size_t idx = 0;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j)
            cmps.push_back(make_pair(combos[i], combos[j], means[i], means[j], ps[idx++]));
    const McsMatrix matrix = build_mcs(cmps, combos, means, "enhancement");
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            CHECK(matrix.cell(i, j) == matrix.cell(j, i));
}

TEST_CASE("build_mcs breaks mean ties by label and rejects missing pairs") {
    const ComboKey a{"B", "KNN"}, b{"A", "RF"};
    const std::vector<PairwiseComparison> cmps = {make_pair(b, a, 0.5, 0.5, 0.9)};
    const McsMatrix matrix = build_mcs(cmps, {a, b}, {0.5, 0.5}, "auc");
    CHECK(matrix.ordering[0].label() == "A-RF");
    CHECK(matrix.ordering[1].label() == "B-KNN");

    const ComboKey c{"C", "Tree"};
    CHECK_THROWS_AS(build_mcs(cmps, {a, b, c}, {0.5, 0.5, 0.5}, "auc"), ArgumentError);
}

TEST_CASE("render_mcs_svg structure and determinism") {
    const ComboKey a{"A", "KNN"}, b{"A", "RF"};
    const std::vector<PairwiseComparison> cmps = {make_pair(a, b, 2.0, 5.0, 0.003)};
    const McsMatrix matrix = build_mcs(cmps, {a, b}, {2.0, 5.0}, "enhancement", 300);
    const std::string svg = render_mcs_svg(matrix);
    CHECK(svg == render_mcs_svg(matrix));
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.rfind("</svg>") != std::string::npos);
    CHECK(svg.find("(m = 300)") != std::string::npos);
    // 2x2 grid: two self cells plus the legend swatch.
    CHECK(count_occurrences(svg, "#bbbbbb") == 3);
    CHECK(count_occurrences(svg, "#d55e00") >= 2);
    // Axis labels appear on both axes.
    CHECK(count_occurrences(svg, "A-KNN") >= 2);
    CHECK(count_occurrences(svg, "A-RF") >= 2);
    // Legend names all three buckets.
    CHECK(svg.find("p &gt; 0.05") != std::string::npos);

    McsMatrix auc_matrix = matrix;
    auc_matrix.metric = "auc";
    auc_matrix.m = 0;
    CHECK(render_mcs_svg(auc_matrix).find("(m = ") == std::string::npos);
}

TEST_CASE("mcs_to_csv lists the ordering with buckets") {
    const ComboKey a{"A", "KNN"}, b{"A", "RF"};
    const std::vector<PairwiseComparison> cmps = {make_pair(a, b, 2.0, 5.0, 0.03)};
    const McsMatrix matrix = build_mcs(cmps, {a, b}, {2.0, 5.0}, "enhancement");
    const std::string csv = mcs_to_csv(matrix);
    CHECK(csv.find("A-RF") != std::string::npos);
    CHECK(csv.find("A-KNN") != std::string::npos);
    CHECK(csv == mcs_to_csv(matrix));
}
