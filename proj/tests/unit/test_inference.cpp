#include <cmath>
#include <doctest.h>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "cvbench/errors.hpp"
#include "cvbench/inference.hpp"
#include "cvbench/rng.hpp"

using namespace cvbench;

namespace {

MeasureTable table_from(const std::vector<std::tuple<std::size_t, std::string, double>>& rows) {
    MeasureTable table;
    table.metric = "enhancement";
    for (const auto& [split, combo, value] : rows)
        table.rows.push_back({split, ComboKey{"S", combo}, value});
    return table;
}

}  // namespace

TEST_CASE("anova on the hand-derived 2x2 design") {
    const MeasureTable table =
        table_from({{1, "a", 1.0}, {1, "b", 3.0}, {2, "a", 2.0}, {2, "b", 5.0}});
    const AnovaTable anova = anova_blocked(table);
    CHECK(anova.split_row.ss == doctest::Approx(2.25).epsilon(1e-12));
    CHECK(anova.combo_row.ss == doctest::Approx(6.25).epsilon(1e-12));
    CHECK(anova.error.ss == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(anova.combo_row.f == doctest::Approx(25.0).epsilon(1e-12));
    CHECK(anova.model.df == 2.0);
    CHECK(anova.error.df == 1.0);
    CHECK(anova.total.df == 3.0);
}

TEST_CASE("anova df arithmetic and SS additivity on random tables") {
    SplitMix64 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t ni = 2 + rng.next_below(4);
        const std::size_t nj = 2 + rng.next_below(6);
        MeasureTable table;
        table.metric = "auc";
        for (std::size_t s = 1; s <= ni; ++s)
            for (std::size_t j = 0; j < nj; ++j)
                table.rows.push_back(
                    {s, ComboKey{"S", "m" + std::to_string(j)}, rng.next_unit()});
        const AnovaTable anova = anova_blocked(table);
        CHECK(anova.model.df == static_cast<double>((ni - 1) + (nj - 1)));
        CHECK(anova.error.df == static_cast<double>((ni - 1) * (nj - 1)));
        CHECK(anova.total.df == static_cast<double>(ni * nj - 1));
        CHECK(anova.total.ss ==
              doctest::Approx(anova.model.ss + anova.error.ss).epsilon(1e-9));
        CHECK(anova.r_square == doctest::Approx(anova.model.ss / anova.total.ss));
        CHECK(anova.root_mse == doctest::Approx(std::sqrt(anova.error.ms)));
    }
}

TEST_CASE("anova invariances: relabeling and constant shift") {
    SplitMix64 rng(23);
    MeasureTable table;
    table.metric = "auc";
    for (std::size_t s = 1; s <= 3; ++s)
        for (const std::string& m : {"a", "b", "c", "d"})
            table.rows.push_back({s, ComboKey{"S", m}, rng.next_unit()});
    const AnovaTable base = anova_blocked(table);

    // Relabel splits (1->3, 2->1, 3->2) and combos (rotate names).
    MeasureTable relabeled;
    relabeled.metric = "auc";
    const std::map<std::string, std::string> name_map{
        {"a", "x"}, {"b", "y"}, {"c", "z"}, {"d", "w"}};
    for (const auto& row : table.rows)
        relabeled.rows.push_back(
            {row.split % 3 + 1, ComboKey{"S", name_map.at(row.combo.method)}, row.value});
    const AnovaTable perm = anova_blocked(relabeled);
    CHECK(perm.split_row.ss == doctest::Approx(base.split_row.ss).epsilon(1e-12));
    CHECK(perm.combo_row.ss == doctest::Approx(base.combo_row.ss).epsilon(1e-12));
    CHECK(perm.error.ss == doctest::Approx(base.error.ss).epsilon(1e-12));

    MeasureTable shifted = table;
    for (auto& row : shifted.rows) row.value += 10.0;
    const AnovaTable shift = anova_blocked(shifted);
    CHECK(shift.split_row.ss == doctest::Approx(base.split_row.ss).epsilon(1e-9));
    CHECK(shift.combo_row.ss == doctest::Approx(base.combo_row.ss).epsilon(1e-9));
    CHECK(shift.error.ss == doctest::Approx(base.error.ss).epsilon(1e-9));
    CHECK(shift.mean == doctest::Approx(base.mean + 10.0));
}

TEST_CASE("anova rejects incomplete or degenerate designs") {
    MeasureTable incomplete =
        table_from({{1, "a", 1.0}, {1, "b", 3.0}, {2, "a", 2.0}});
    CHECK_THROWS_WITH_AS(anova_blocked(incomplete), doctest::Contains("missing cell"),
                         ArgumentError);

    MeasureTable small = table_from({{1, "a", 1.0}, {1, "b", 2.0}});
    CHECK_THROWS_AS(anova_blocked(small), ArgumentError);

    MeasureTable flat = table_from(
        {{1, "a", 1.0}, {1, "b", 1.0}, {2, "a", 1.0}, {2, "b", 1.0}});
    CHECK_THROWS_AS(anova_blocked(flat), NumericError);
}

TEST_CASE("derive_anova_entries recovers MS, F, and fit statistics from SS/DF") {
    const AnovaTable t = derive_anova_entries(72.5318, 19, 5.6894, 34, 3.1494);
    CHECK(t.model.ms == doctest::Approx(3.8175).epsilon(5e-4));
    CHECK(t.error.ms == doctest::Approx(0.1673).epsilon(5e-4));
    CHECK(t.model.f == doctest::Approx(22.8131).epsilon(5e-4));
    CHECK(t.r_square == doctest::Approx(0.9273).epsilon(5e-4));
    CHECK(t.root_mse == doctest::Approx(0.4091).epsilon(5e-4));
    CHECK(t.coef_var == doctest::Approx(12.9890).epsilon(5e-4));
    CHECK(t.total.ss == doctest::Approx(78.2212).epsilon(1e-9));
    CHECK(t.model.p < 0.0001);
}

TEST_CASE("tukey_kramer emits all pairs with correct statistics") {
    // J=3, I=2 hand-built design.
    const MeasureTable table = table_from({{1, "a", 1.0},
                                           {1, "b", 2.0},
                                           {1, "c", 4.0},
                                           {2, "a", 1.5},
                                           {2, "b", 2.5},
                                           {2, "c", 4.1}});
    const AnovaTable anova = anova_blocked(table);
    const auto comparisons = tukey_kramer(anova);
    REQUIRE(comparisons.size() == 3);
    const double se_mean = std::sqrt(anova.error.ms / 2.0);
    for (const auto& cmp : comparisons) {
        CHECK(cmp.q_stat == doctest::Approx(std::fabs(cmp.diff) / se_mean).epsilon(1e-12));
        CHECK(cmp.se_diff == doctest::Approx(std::sqrt(2.0 * anova.error.ms / 2.0)));
        CHECK(cmp.p_adj >= 0.0);
        CHECK(cmp.p_adj <= 1.0);
    }
    // Larger |q| never has larger p.
    for (std::size_t i = 0; i < comparisons.size(); ++i)
        for (std::size_t j = 0; j < comparisons.size(); ++j)
            if (comparisons[i].q_stat > comparisons[j].q_stat)
                CHECK(comparisons[i].p_adj <= comparisons[j].p_adj + 1e-9);
}

TEST_CASE("tukey_kramer equal means give p = 1") {
    const MeasureTable table = table_from(
        {{1, "a", 1.0}, {1, "b", 1.0}, {2, "a", 2.0}, {2, "b", 2.0}, {3, "a", 1.4}, {3, "b", 1.4}});
    // Symmetric perturbation keeps the combo means equal but makes MSE > 0.
    MeasureTable jittered = table;
    jittered.rows[0].value += 0.01;
    jittered.rows[1].value -= 0.01;
    jittered.rows[2].value -= 0.01;
    jittered.rows[3].value += 0.01;
    const AnovaTable anova = anova_blocked(jittered);
    const auto comparisons = tukey_kramer(anova);
    REQUIRE(comparisons.size() == 1);
    CHECK(comparisons[0].q_stat == doctest::Approx(0.0));
    CHECK(comparisons[0].p_adj == doctest::Approx(1.0));
    CHECK(comparisons[0].bucket == SignificanceBucket::NotSignificant);
}

TEST_CASE("18 combos yield 153 pairs and df 53/34") {
    SplitMix64 rng(41);
    MeasureTable table;
    table.metric = "enhancement";
    for (std::size_t s = 1; s <= 3; ++s)
        for (std::size_t j = 0; j < 18; ++j)
            table.rows.push_back({s, ComboKey{j < 9 ? "Burden" : "Pharma",
                                              "m" + std::to_string(j % 9)},
                                  rng.next_unit() * 3.0});
    const AnovaTable anova = anova_blocked(table);
    CHECK(anova.total.df == 53.0);
    CHECK(anova.error.df == 34.0);
    CHECK(anova.model.df == 19.0);
    CHECK(tukey_kramer(anova).size() == 153);
}

TEST_CASE("anova text block layout") {
    const MeasureTable table = table_from({{1, "a", 1.0},
                                           {1, "b", 2.0},
                                           {1, "c", 4.0},
                                           {2, "a", 1.5},
                                           {2, "b", 2.5},
                                           {2, "c", 4.1}});
    const std::string text = anova_to_text(anova_blocked(table));
    CHECK(text.find("Analysis of Variance on: 'enhancement'") != std::string::npos);
    CHECK(text.find("Using factors: Split and Descriptor/Method combination") !=
          std::string::npos);
    CHECK(text.find("Model") != std::string::npos);
    CHECK(text.find("Error") != std::string::npos);
    CHECK(text.find("Total") != std::string::npos);
    CHECK(text.find("R-Square") != std::string::npos);
    CHECK(text.find("Split") != std::string::npos);
    CHECK(text.find("Desc/Meth") != std::string::npos);
}

TEST_CASE("bucket thresholds") {
    CHECK(bucket_for_p(0.005) == SignificanceBucket::P01);
    CHECK(bucket_for_p(0.01) == SignificanceBucket::P01);
    CHECK(bucket_for_p(0.03) == SignificanceBucket::P05);
    CHECK(bucket_for_p(0.05) == SignificanceBucket::P05);
    CHECK(bucket_for_p(0.2) == SignificanceBucket::NotSignificant);
}
