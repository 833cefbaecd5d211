#include <doctest.h>

#include "cvbench/curves.hpp"
#include "cvbench/errors.hpp"
#include "cvbench/rng.hpp"
#include "test_helpers.hpp"

using namespace cvbench;

TEST_CASE("accumulation orders by descending score with index tie-break") {
    const auto curve = accumulation({1, 0, 1}, {0.9, 0.5, 0.8}, 3);
    CHECK(curve.accumulated == std::vector<double>{1, 2, 2});

    const auto cont = accumulation({2.0, 1.0}, {0.1, 0.9}, 2);
    CHECK(cont.accumulated == std::vector<double>{1.0, 3.0});

    CHECK_THROWS_AS(accumulation({1, 0}, {0.5, 0.4}, 3), ArgumentError);
}

TEST_CASE("perfect scores reach the ideal curve") {
    const std::vector<double> y = {1, 0, 1, 0, 1, 0};
    const std::vector<double> scores = {0.9, 0.1, 0.8, 0.2, 0.7, 0.3};
    CHECK(accumulation(y, scores, 6).accumulated == ideal_curve(y, 6).accumulated);
}

TEST_CASE("ideal curve is min(m, p) for binary y") {
    std::vector<double> y(400, 0.0);
    for (std::size_t i = 0; i < 50; ++i) y[i * 8] = 1.0;
    const auto ideal = ideal_curve(y, 100);
    CHECK(ideal.accumulated[24] == 25.0);
    CHECK(ideal.accumulated[49] == 50.0);
    CHECK(ideal.accumulated[99] == 50.0);

    const auto cont = ideal_curve({3.0, 1.0, 2.0}, 2);
    CHECK(cont.accumulated == std::vector<double>{3.0, 5.0});
}

TEST_CASE("random curve is the expectation line") {
    std::vector<double> y(500, 0.0);
    for (std::size_t i = 0; i < 50; ++i) y[i] = 1.0;
    const auto random = random_curve(y, 200);
    CHECK(random.accumulated[99] == doctest::Approx(10.0));
    CHECK(random_curve(y, 500).accumulated[499] == doctest::Approx(50.0));

    const auto cont = random_curve({2.0, 2.0, 2.0, 2.0, 2.0, 2.0}, 5);
    CHECK(cont.accumulated[4] == doctest::Approx(10.0));
}

TEST_CASE("default_max_select") {
    CHECK(default_max_select(3311) == 300);
    CHECK(default_max_select(500) == 125);
    CHECK(default_max_select(1200) == 300);
    CHECK(default_max_select(3) == 1);
}

TEST_CASE("curve domination and IE consistency properties") {
    SplitMix64 rng(99);
    std::vector<double> y(200), scores(200);
    for (std::size_t i = 0; i < 200; ++i) {
        y[i] = rng.next_below(5) == 0 ? 1.0 : 0.0;
        scores[i] = rng.next_unit();
    }
    const std::size_t max_select = 150;
    const auto model = accumulation(y, scores, max_select);
    const auto ideal = ideal_curve(y, max_select);
    const auto random = random_curve(y, max_select);
    for (std::size_t m = 0; m < max_select; ++m) {
        CHECK(model.accumulated[m] <= ideal.accumulated[m]);
        CHECK(random.accumulated[m] <= ideal.accumulated[m]);
        if (m > 0) CHECK(model.accumulated[m] >= model.accumulated[m - 1]);
    }
    // IE(m) = accumulated[m] / random[m] for binary y.
    for (std::size_t m : {1u, 10u, 75u, 150u}) {
        const double ie = initial_enhancement(y, scores, m);
        CHECK(ie == doctest::Approx(model.accumulated[m - 1] / random.accumulated[m - 1]));
    }
}

TEST_CASE("render_curve_series writes the expected files") {
    cvbench::testing::TempDir dir("curves_render");
    PredictionStore store;
    store.n = 40;
    store.nsplits = 2;
    store.task = ResponseKind::Binary;
    SplitMix64 rng(3);
    std::vector<double> y(40);
    for (std::size_t i = 0; i < 40; ++i) y[i] = i < 10 ? 1.0 : 0.0;
    for (std::size_t split = 1; split <= 2; ++split)
        for (const std::string& set : {"A", "B"})
            for (const std::string& method : {"KNN", "RF"}) {
                std::vector<double> preds(40);
                for (double& p : preds) p = rng.next_unit();
                store.entries[{split, ComboKey{set, method}}] = preds;
            }

    CurveRenderOptions options;
    options.series = CurveSeries::Methods;
    auto files = render_curve_series(store, y, 10, options, dir.str());
    CHECK(files.size() == 4);  // 2 splits x 2 sets

    options.series = CurveSeries::Descriptors;
    options.splits = {1};
    files = render_curve_series(store, y, 10, options, dir.str());
    CHECK(files.size() == 2);  // split 1 x 2 methods
    const std::string svg = cvbench::testing::read_file(files[0]);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("Ideal") != std::string::npos);
    CHECK(svg.find("Random") != std::string::npos);

    options.methods = {"SVM"};
    CHECK_THROWS_WITH_AS(render_curve_series(store, y, 10, options, dir.str()),
                         doctest::Contains("available"), ArgumentError);
    options.methods = {};
    options.splits = {9};
    CHECK_THROWS_AS(render_curve_series(store, y, 10, options, dir.str()), ArgumentError);
}
