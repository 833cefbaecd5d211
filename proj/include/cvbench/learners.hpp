#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cvbench/dataio.hpp"

namespace cvbench {

enum class Method { KNN, Ridge, Tree, RF };

Method method_from_name(const std::string& name);
std::string method_name(Method m);

using ParamMap = std::map<std::string, double>;

struct MethodSpec {
    Method method = Method::KNN;
    ParamMap params;
    ResponseKind task = ResponseKind::Binary;
};

// Per-method default tuning parameters. Entries for methods the library
// does not fit (NNet, PCR, ENet) are carried as data so the registry can
// be printed and merged the same way for externally fitted models.
struct ParamRegistry {
    std::map<std::string, ParamMap> defaults;

    ParamMap resolve(const std::string& method, const ParamMap& overrides) const;
};

ParamRegistry make_model_defaults(std::size_t n, std::size_t p, bool classify, std::size_t nfolds);

// Simple row-major matrix view used by the learners.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;  // rows * cols

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}
    double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

struct Standardization {
    Matrix train;
    Matrix test;
    std::vector<double> centers;
    std::vector<double> scales;          // 1 for constant columns
    std::vector<bool> constant_columns;  // flagged, not an error
};

// Column-wise center/scale of train; test reuses the train statistics.
// Scale is the sample standard deviation (n-1 denominator).
Standardization standardize(const Matrix& train, const Matrix& test);

// Fit one model on (train_x, train_y) and predict test_x. Binary tasks
// produce scores in [0,1]; Ridge scores are clamped for that use.
std::vector<double> fit_predict(const MethodSpec& spec, const Matrix& train_x,
                                const std::vector<double>& train_y, const Matrix& test_x,
                                std::uint64_t task_seed);

// RF debug hook: identity resample, mtry = all columns. With n_trees=1 this
// makes RF coincide with Tree exactly; used by the equivalence tests.
extern thread_local bool rf_identity_resample_debug;

std::vector<int> binarize(const std::vector<double>& scores, double threshold = 0.5);

}  // namespace cvbench
