#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cvbench/curves.hpp"
#include "cvbench/errors.hpp"
#include "cvbench/folds.hpp"
#include "cvbench/inference.hpp"
#include "cvbench/learners.hpp"
#include "cvbench/mcs.hpp"
#include "cvbench/measures.hpp"
#include "cvbench/orchestrator.hpp"
#include "cvbench/special.hpp"

namespace py = pybind11;
using namespace cvbench;

namespace {

// MeasureTable rows come in as (split, set_name, method, value) tuples.
MeasureTable table_from_rows(
    const std::vector<std::tuple<std::size_t, std::string, std::string, double>>& rows,
    const std::string& metric) {
    MeasureTable table;
    table.metric = metric;
    for (const auto& [split, set_name, method, value] : rows)
        table.rows.push_back({split, ComboKey{set_name, method}, value});
    return table;
}

py::dict anova_to_dict(const AnovaTable& a) {
    py::dict d;
    const auto row_dict = [](const AnovaRow& r) {
        py::dict rd;
        rd["df"] = r.df;
        rd["ss"] = r.ss;
        rd["ms"] = r.ms;
        rd["f"] = r.f;
        rd["p"] = r.p;
        return rd;
    };
    d["model"] = row_dict(a.model);
    d["error"] = row_dict(a.error);
    d["total"] = row_dict(a.total);
    d["split"] = row_dict(a.split_row);
    d["combo"] = row_dict(a.combo_row);
    d["r_square"] = a.r_square;
    d["root_mse"] = a.root_mse;
    d["coef_var"] = a.coef_var;
    d["mean"] = a.mean;
    return d;
}

}  // namespace

PYBIND11_MODULE(_cvbench, m) {
    m.doc() = "Cross-validated model assessment: folds, measures, blocked ANOVA, "
              "Tukey pairwise comparisons";

    py::register_exception<Error>(m, "CvbenchError");

    // folds
    m.def("default_seeds", &default_seeds, py::arg("nsplits"));
    m.def("assign_folds", &assign_folds, py::arg("n"), py::arg("nfolds"), py::arg("seed"));

    // measures
    m.def("auc", &auc, py::arg("y"), py::arg("scores"));
    m.def("initial_enhancement", &initial_enhancement, py::arg("y"), py::arg("scores"),
          py::arg("m"));
    m.def(
        "binary_measures",
        [](const std::vector<double>& y, const std::vector<double>& scores, double threshold) {
            const BinaryMeasures b = binary_measures(y, scores, threshold);
            py::dict d;
            d["error_rate"] = b.error_rate;
            d["sensitivity"] = b.sensitivity;
            d["specificity"] = b.specificity;
            d["ppv"] = b.ppv;
            d["f1"] = b.f1;
            return d;
        },
        py::arg("y"), py::arg("scores"), py::arg("threshold") = 0.5);
    m.def(
        "continuous_measures",
        [](const std::vector<double>& y, const std::vector<double>& predictions) {
            const ContinuousMeasures c = continuous_measures(y, predictions);
            py::dict d;
            d["rmse"] = c.rmse;
            d["r2"] = c.r2;
            d["rho"] = c.rho;
            return d;
        },
        py::arg("y"), py::arg("predictions"));

    // curves
    m.def(
        "accumulation",
        [](const std::vector<double>& y, const std::vector<double>& scores,
           std::size_t max_select) { return accumulation(y, scores, max_select).accumulated; },
        py::arg("y"), py::arg("scores"), py::arg("max_select"));
    m.def(
        "ideal_curve",
        [](const std::vector<double>& y, std::size_t max_select) {
            return ideal_curve(y, max_select).accumulated;
        },
        py::arg("y"), py::arg("max_select"));
    m.def(
        "random_curve",
        [](const std::vector<double>& y, std::size_t max_select) {
            return random_curve(y, max_select).accumulated;
        },
        py::arg("y"), py::arg("max_select"));
    m.def("default_max_select", &default_max_select, py::arg("n"));

    // distributions
    m.def("f_cdf", &f_cdf, py::arg("x"), py::arg("d1"), py::arg("d2"));
    m.def("t_cdf", &t_cdf, py::arg("x"), py::arg("nu"));
    m.def("studentized_range_cdf", &studentized_range_cdf, py::arg("q"), py::arg("k"),
          py::arg("nu"));

    // inference over (split, set, method, value) rows
    m.def(
        "anova_blocked",
        [](const std::vector<std::tuple<std::size_t, std::string, std::string, double>>& rows,
           const std::string& metric) {
            return anova_to_dict(anova_blocked(table_from_rows(rows, metric)));
        },
        py::arg("rows"), py::arg("metric") = "enhancement");
    m.def(
        "tukey_kramer",
        [](const std::vector<std::tuple<std::size_t, std::string, std::string, double>>& rows,
           const std::string& metric) {
            const AnovaTable anova = anova_blocked(table_from_rows(rows, metric));
            py::list out;
            for (const auto& cmp : tukey_kramer(anova)) {
                py::dict d;
                d["combo_a"] = cmp.combo_a.label();
                d["combo_b"] = cmp.combo_b.label();
                d["diff"] = cmp.diff;
                d["q_stat"] = cmp.q_stat;
                d["p_adj"] = cmp.p_adj;
                d["bucket"] = bucket_name(cmp.bucket);
                out.append(d);
            }
            return out;
        },
        py::arg("rows"), py::arg("metric") = "enhancement");

    // learners
    m.def(
        "fit_predict",
        [](const std::string& method, const std::map<std::string, double>& params,
           const std::vector<std::vector<double>>& train_x, const std::vector<double>& train_y,
           const std::vector<std::vector<double>>& test_x, bool binary_task,
           std::uint64_t task_seed) {
            MethodSpec spec;
            spec.method = method_from_name(method);
            spec.params = params;
            spec.task = binary_task ? ResponseKind::Binary : ResponseKind::Continuous;
            Matrix tx(train_x.size(), train_x.empty() ? 0 : train_x.front().size());
            for (std::size_t r = 0; r < train_x.size(); ++r)
                for (std::size_t c = 0; c < tx.cols; ++c) tx.at(r, c) = train_x[r][c];
            Matrix sx(test_x.size(), test_x.empty() ? 0 : test_x.front().size());
            for (std::size_t r = 0; r < test_x.size(); ++r)
                for (std::size_t c = 0; c < sx.cols; ++c) sx.at(r, c) = test_x[r][c];
            return fit_predict(spec, tx, train_y, sx, task_seed);
        },
        py::arg("method"), py::arg("params"), py::arg("train_x"), py::arg("train_y"),
        py::arg("test_x"), py::arg("binary_task") = true, py::arg("task_seed") = 0);
    m.def(
        "make_model_defaults",
        [](std::size_t n, std::size_t p, bool classify, std::size_t nfolds) {
            return make_model_defaults(n, p, classify, nfolds).defaults;
        },
        py::arg("n"), py::arg("p"), py::arg("classify") = true, py::arg("nfolds") = 10);

    // end-to-end run
    m.def(
        "run_model_train",
        [](const std::string& data, const std::string& response_col, const std::string& id_col,
           const std::vector<std::pair<std::string, std::size_t>>& sets,
           const std::vector<std::string>& methods, std::size_t nfolds, std::size_t nsplits,
           const std::string& out_dir, std::size_t threads) {
            RunConfig config;
            config.dataset_path = data;
            config.response_col = response_col;
            if (!id_col.empty()) config.id_col = id_col;
            for (const auto& [name, length] : sets) {
                config.spec.names.push_back(name);
                config.spec.lengths.push_back(length);
            }
            if (!methods.empty()) config.methods = methods;
            config.nfolds = nfolds;
            config.nsplits = nsplits;
            config.out_dir = out_dir;
            config.threads = threads;
            const RunResult result = run_model_train(config);
            return result.store.entries.size();
        },
        py::arg("data"), py::arg("response_col"), py::arg("id_col") = "",
        py::arg("sets") = std::vector<std::pair<std::string, std::size_t>>{},
        py::arg("methods") = std::vector<std::string>{}, py::arg("nfolds") = 10,
        py::arg("nsplits") = 3, py::arg("out_dir") = "cvbench_run", py::arg("threads") = 0);
}
