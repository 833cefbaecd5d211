#include "cvbench/learners.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numeric>
#include <sstream>

#include "cvbench/errors.hpp"
#include "cvbench/rng.hpp"

namespace cvbench {

thread_local bool rf_identity_resample_debug = false;

Method method_from_name(const std::string& name) {
    if (name == "KNN") return Method::KNN;
    if (name == "Ridge") return Method::Ridge;
    if (name == "Tree") return Method::Tree;
    if (name == "RF") return Method::RF;
    throw ArgumentError("learners.method_from_name", "unknown method: " + name);
}

std::string method_name(Method m) {
    switch (m) {
        case Method::KNN: return "KNN";
        case Method::Ridge: return "Ridge";
        case Method::Tree: return "Tree";
        case Method::RF: return "RF";
    }
    return "?";
}

ParamMap ParamRegistry::resolve(const std::string& method, const ParamMap& overrides) const {
    auto it = defaults.find(method);
    if (it == defaults.end())
        throw ArgumentError("learners.resolve", "no defaults registered for method: " + method);
    ParamMap merged = it->second;
    for (const auto& [key, value] : overrides) {
        if (merged.find(key) == merged.end())
            throw ArgumentError("learners.resolve",
                                "unknown parameter '" + key + "' for method " + method);
        merged[key] = value;
    }
    return merged;
}

ParamRegistry make_model_defaults(std::size_t n, std::size_t p, bool classify,
                                  std::size_t nfolds) {
    if (n < 1 || p < 1)
        throw ArgumentError("learners.make_model_defaults", "n and p must be >= 1");
    (void)classify;
    (void)nfolds;
    ParamRegistry reg;
    // Fitted in-library.
    reg.defaults["KNN"] = {{"k", 10.0}};
    reg.defaults["Ridge"] = {{"lambda", 1.0}};
    reg.defaults["Tree"] = {{"max_depth", 30.0}, {"min_leaf", 5.0}};
    reg.defaults["RF"] = {{"n_trees", 100.0},
                          {"mtry", std::ceil(std::sqrt(static_cast<double>(p)))},
                          {"min_leaf", 5.0}};
    // Carried as data only; these models arrive via prediction import.
    reg.defaults["NNet"] = {{"size", 2.0}, {"decay", 0.0}};
    reg.defaults["PCR"] = {};
    reg.defaults["ENet"] = {{"lambda", 1.0}};
    return reg;
}

Standardization standardize(const Matrix& train, const Matrix& test) {
    if (train.rows == 0) throw ArgumentError("learners.standardize", "empty training matrix");
    if (test.rows > 0 && test.cols != train.cols)
        throw ArgumentError("learners.standardize", "train/test column count mismatch");
    Standardization out;
    out.train = train;
    out.test = test;
    out.centers.resize(train.cols);
    out.scales.resize(train.cols);
    out.constant_columns.resize(train.cols, false);
    for (std::size_t c = 0; c < train.cols; ++c) {
        double mean = 0.0;
        for (std::size_t r = 0; r < train.rows; ++r) mean += train.at(r, c);
        mean /= static_cast<double>(train.rows);
        double ss = 0.0;
        for (std::size_t r = 0; r < train.rows; ++r) {
            const double d = train.at(r, c) - mean;
            ss += d * d;
        }
        double sd = train.rows > 1 ? std::sqrt(ss / static_cast<double>(train.rows - 1)) : 0.0;
        if (sd == 0.0) {
            sd = 1.0;
            out.constant_columns[c] = true;
        }
        out.centers[c] = mean;
        out.scales[c] = sd;
        for (std::size_t r = 0; r < train.rows; ++r)
            out.train.at(r, c) = (train.at(r, c) - mean) / sd;
        for (std::size_t r = 0; r < test.rows; ++r)
            out.test.at(r, c) = (test.at(r, c) - mean) / sd;
    }
    return out;
}

namespace {

double get_param(const ParamMap& params, const std::string& key, const std::string& method) {
    auto it = params.find(key);
    if (it == params.end())
        throw ArgumentError("learners.fit_predict",
                            "missing parameter '" + key + "' for method " + method);
    return it->second;
}

std::vector<double> knn_predict(const ParamMap& params, const Matrix& train_x,
                                const std::vector<double>& train_y, const Matrix& test_x) {
    const std::size_t k = static_cast<std::size_t>(get_param(params, "k", "KNN"));
    if (k < 1) throw ArgumentError("learners.fit_predict", "KNN k must be >= 1");
    if (k > train_x.rows)
        throw ArgumentError("learners.fit_predict", "KNN k exceeds training set size");
    const Standardization std_data = standardize(train_x, test_x);
    std::vector<double> preds(test_x.rows);
    std::vector<std::pair<double, std::size_t>> dist(train_x.rows);
    for (std::size_t t = 0; t < test_x.rows; ++t) {
        for (std::size_t r = 0; r < train_x.rows; ++r) {
            double d2 = 0.0;
            for (std::size_t c = 0; c < train_x.cols; ++c) {
                const double d = std_data.test.at(t, c) - std_data.train.at(r, c);
                d2 += d * d;
            }
            dist[r] = {d2, r};
        }
        // Distance ties break by training row index for determinism.
        std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k), dist.end());
        double sum = 0.0;
        for (std::size_t i = 0; i < k; ++i) sum += train_y[dist[i].second];
        preds[t] = sum / static_cast<double>(k);
    }
    return preds;
}

// Cholesky solve of the symmetric positive definite system A x = b.
std::vector<double> cholesky_solve(Matrix a, std::vector<double> b, bool lambda_zero) {
    const std::size_t p = a.rows;
    for (std::size_t j = 0; j < p; ++j) {
        double diag = a.at(j, j);
        for (std::size_t k = 0; k < j; ++k) diag -= a.at(j, k) * a.at(j, k);
        if (diag <= 0.0) {
            if (lambda_zero)
                throw NumericError("learners.fit_predict",
                                   "singular ridge system with lambda=0; use lambda > 0");
            throw NumericError("learners.fit_predict", "ridge normal equations not positive definite");
        }
        a.at(j, j) = std::sqrt(diag);
        for (std::size_t i = j + 1; i < p; ++i) {
            double v = a.at(i, j);
            for (std::size_t k = 0; k < j; ++k) v -= a.at(i, k) * a.at(j, k);
            a.at(i, j) = v / a.at(j, j);
        }
    }
    for (std::size_t i = 0; i < p; ++i) {  // forward: L z = b
        double v = b[i];
        for (std::size_t k = 0; k < i; ++k) v -= a.at(i, k) * b[k];
        b[i] = v / a.at(i, i);
    }
    for (std::size_t ii = p; ii-- > 0;) {  // backward: L' x = z
        double v = b[ii];
        for (std::size_t k = ii + 1; k < p; ++k) v -= a.at(k, ii) * b[k];
        b[ii] = v / a.at(ii, ii);
    }
    return b;
}

std::vector<double> ridge_predict(const ParamMap& params, const Matrix& train_x,
                                  const std::vector<double>& train_y, const Matrix& test_x) {
    const double lambda = get_param(params, "lambda", "Ridge");
    if (lambda < 0.0) throw ArgumentError("learners.fit_predict", "Ridge lambda must be >= 0");
    const Standardization std_data = standardize(train_x, test_x);
    const std::size_t n = train_x.rows;
    const std::size_t p = train_x.cols;
    const double y_mean = std::accumulate(train_y.begin(), train_y.end(), 0.0) /
                          static_cast<double>(n);

    // Intercept absorbed by centering: columns are standardized (mean 0)
    // and y is centered, so the intercept equals mean(y) and stays unpenalized.
    Matrix gram(p, p);
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = i; j < p; ++j) {
            double v = 0.0;
            for (std::size_t r = 0; r < n; ++r)
                v += std_data.train.at(r, i) * std_data.train.at(r, j);
            gram.at(i, j) = v;
            gram.at(j, i) = v;
        }
    for (std::size_t i = 0; i < p; ++i) gram.at(i, i) += lambda;
    std::vector<double> xty(p, 0.0);
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t r = 0; r < n; ++r)
            xty[i] += std_data.train.at(r, i) * (train_y[r] - y_mean);
    const std::vector<double> beta = cholesky_solve(gram, xty, lambda == 0.0);

    std::vector<double> preds(test_x.rows, y_mean);
    for (std::size_t t = 0; t < test_x.rows; ++t)
        for (std::size_t c = 0; c < p; ++c) preds[t] += std_data.test.at(t, c) * beta[c];
    return preds;
}

// CART-style regression tree, squared-error impurity for both tasks.
struct TreeNode {
    int feature = -1;  // -1 for leaves
    double threshold = 0.0;
    double value = 0.0;
    std::unique_ptr<TreeNode> left, right;
};

struct TreeConfig {
    std::size_t min_leaf = 1;
    std::size_t max_depth = 30;
    std::size_t mtry = 0;  // 0 = all features
};

std::unique_ptr<TreeNode> grow_tree(const Matrix& x, const std::vector<double>& y,
                                    std::vector<std::size_t>& rows, std::size_t depth,
                                    const TreeConfig& cfg, SplitMix64* rng) {
    auto node = std::make_unique<TreeNode>();
    const std::size_t m = rows.size();
    double sum = 0.0;
    for (std::size_t r : rows) sum += y[r];
    node->value = sum / static_cast<double>(m);

    if (depth >= cfg.max_depth || m < 2 * cfg.min_leaf) return node;
    bool pure = true;
    for (std::size_t r : rows)
        if (y[r] != y[rows.front()]) {
            pure = false;
            break;
        }
    if (pure) return node;

    std::vector<std::size_t> features(x.cols);
    std::iota(features.begin(), features.end(), 0);
    std::size_t n_consider = x.cols;
    if (cfg.mtry > 0 && cfg.mtry < x.cols && rng != nullptr) {
        for (std::size_t i = 0; i < cfg.mtry; ++i) {
            const std::size_t j = i + static_cast<std::size_t>(rng->next_below(x.cols - i));
            std::swap(features[i], features[j]);
        }
        n_consider = cfg.mtry;
        std::sort(features.begin(), features.begin() + static_cast<std::ptrdiff_t>(n_consider));
    }

    // Best split maximizes sum_L^2/n_L + sum_R^2/n_R (total SS is fixed).
    double best_gain = -std::numeric_limits<double>::infinity();
    int best_feature = -1;
    double best_threshold = 0.0;
    std::vector<std::size_t> order;
    for (std::size_t fi = 0; fi < n_consider; ++fi) {
        const std::size_t f = features[fi];
        order = rows;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            const double va = x.at(a, f), vb = x.at(b, f);
            return va < vb || (va == vb && a < b);
        });
        double left_sum = 0.0;
        for (std::size_t i = 0; i + 1 < m; ++i) {
            left_sum += y[order[i]];
            const std::size_t n_left = i + 1;
            if (n_left < cfg.min_leaf || m - n_left < cfg.min_leaf) continue;
            const double v_here = x.at(order[i], f);
            const double v_next = x.at(order[i + 1], f);
            if (v_here == v_next) continue;
            const double right_sum = sum - left_sum;
            const double gain = left_sum * left_sum / static_cast<double>(n_left) +
                                right_sum * right_sum / static_cast<double>(m - n_left);
            if (gain > best_gain) {
                best_gain = gain;
                best_feature = static_cast<int>(f);
                best_threshold = v_here + (v_next - v_here) / 2.0;
            }
        }
    }
    if (best_feature < 0) return node;

    std::vector<std::size_t> left_rows, right_rows;
    for (std::size_t r : rows)
        (x.at(r, static_cast<std::size_t>(best_feature)) <= best_threshold ? left_rows : right_rows)
            .push_back(r);
    if (left_rows.empty() || right_rows.empty()) return node;
    node->feature = best_feature;
    node->threshold = best_threshold;
    node->left = grow_tree(x, y, left_rows, depth + 1, cfg, rng);
    node->right = grow_tree(x, y, right_rows, depth + 1, cfg, rng);
    return node;
}

double tree_predict_one(const TreeNode& node, const Matrix& x, std::size_t row) {
    const TreeNode* cur = &node;
    while (cur->feature >= 0)
        cur = x.at(row, static_cast<std::size_t>(cur->feature)) <= cur->threshold
                  ? cur->left.get()
                  : cur->right.get();
    return cur->value;
}

std::vector<double> tree_predict(const ParamMap& params, const Matrix& train_x,
                                 const std::vector<double>& train_y, const Matrix& test_x) {
    TreeConfig cfg;
    cfg.min_leaf = static_cast<std::size_t>(get_param(params, "min_leaf", "Tree"));
    cfg.max_depth = static_cast<std::size_t>(get_param(params, "max_depth", "Tree"));
    if (cfg.min_leaf < 1) throw ArgumentError("learners.fit_predict", "Tree min_leaf must be >= 1");
    std::vector<std::size_t> rows(train_x.rows);
    std::iota(rows.begin(), rows.end(), 0);
    const auto root = grow_tree(train_x, train_y, rows, 0, cfg, nullptr);
    std::vector<double> preds(test_x.rows);
    for (std::size_t t = 0; t < test_x.rows; ++t) preds[t] = tree_predict_one(*root, test_x, t);
    return preds;
}

std::vector<double> rf_predict(const ParamMap& params, const Matrix& train_x,
                               const std::vector<double>& train_y, const Matrix& test_x,
                               std::uint64_t task_seed) {
    TreeConfig cfg;
    cfg.min_leaf = static_cast<std::size_t>(get_param(params, "min_leaf", "RF"));
    cfg.mtry = static_cast<std::size_t>(get_param(params, "mtry", "RF"));
    const std::size_t n_trees = static_cast<std::size_t>(get_param(params, "n_trees", "RF"));
    if (n_trees < 1) throw ArgumentError("learners.fit_predict", "RF n_trees must be >= 1");
    if (cfg.min_leaf < 1) throw ArgumentError("learners.fit_predict", "RF min_leaf must be >= 1");
    if (cfg.mtry < 1 || cfg.mtry > train_x.cols) cfg.mtry = train_x.cols;
    const bool identity = rf_identity_resample_debug;
    if (identity) cfg.mtry = train_x.cols;

    std::vector<double> preds(test_x.rows, 0.0);
    std::vector<std::size_t> rows(train_x.rows);
    for (std::size_t t = 0; t < n_trees; ++t) {
        SplitMix64 rng(mix_seed(task_seed, {t}));
        if (identity) {
            std::iota(rows.begin(), rows.end(), 0);
        } else {
            for (std::size_t i = 0; i < rows.size(); ++i)
                rows[i] = static_cast<std::size_t>(rng.next_below(train_x.rows));
            std::sort(rows.begin(), rows.end());
        }
        const auto root = grow_tree(train_x, train_y, rows, 0, cfg, identity ? nullptr : &rng);
        for (std::size_t i = 0; i < test_x.rows; ++i) preds[i] += tree_predict_one(*root, test_x, i);
    }
    for (double& p : preds) p /= static_cast<double>(n_trees);
    return preds;
}

}  // namespace

std::vector<double> fit_predict(const MethodSpec& spec, const Matrix& train_x,
                                const std::vector<double>& train_y, const Matrix& test_x,
                                std::uint64_t task_seed) {
    if (train_x.rows != train_y.size())
        throw ArgumentError("learners.fit_predict", "train_x rows != train_y length");
    if (train_x.cols != test_x.cols && test_x.rows > 0)
        throw ArgumentError("learners.fit_predict", "train/test column count mismatch");
    if (test_x.rows == 0) return {};

    std::vector<double> preds;
    switch (spec.method) {
        case Method::KNN: preds = knn_predict(spec.params, train_x, train_y, test_x); break;
        case Method::Ridge: preds = ridge_predict(spec.params, train_x, train_y, test_x); break;
        case Method::Tree: preds = tree_predict(spec.params, train_x, train_y, test_x); break;
        case Method::RF: preds = rf_predict(spec.params, train_x, train_y, test_x, task_seed); break;
    }
    if (spec.task == ResponseKind::Binary && spec.method == Method::Ridge)
        for (double& p : preds) p = std::clamp(p, 0.0, 1.0);
    return preds;
}

std::vector<int> binarize(const std::vector<double>& scores, double threshold) {
    if (!std::isfinite(threshold))
        throw ArgumentError("learners.binarize", "threshold must be finite");
    std::vector<int> labels(scores.size());
    for (std::size_t i = 0; i < scores.size(); ++i) labels[i] = scores[i] >= threshold ? 1 : 0;
    return labels;
}

}  // namespace cvbench
