#pragma once

#include <optional>
#include <string>
#include <vector>

namespace cvbench {

enum class ResponseKind { Binary, Continuous };

struct ResponseVector {
    std::vector<double> values;
    ResponseKind kind = ResponseKind::Continuous;
};

// A named block of descriptor columns, stored row-major (n x width).
struct DescriptorSet {
    std::string name;
    std::size_t width = 0;
    std::vector<double> values;  // n * width

    double at(std::size_t row, std::size_t col) const { return values[row * width + col]; }
};

struct Dataset {
    std::vector<std::string> ids;
    ResponseVector response;
    std::vector<DescriptorSet> descriptor_sets;

    std::size_t n() const { return response.values.size(); }
    const DescriptorSet& set_by_name(const std::string& name) const;
};

struct DescriptorSetSpec {
    std::vector<std::size_t> lengths;
    std::vector<std::string> names;  // empty, or same length as lengths
};

// Classify a response as Binary (all values in {0,1}, both classes present)
// or Continuous. `force_continuous` keeps an all-{0,1} vector continuous.
ResponseVector validate_response(const std::vector<double>& values, bool force_continuous = false);

// Load a header-bearing CSV. Descriptor sets are contiguous column blocks,
// in file order, of the widths in spec.lengths; an empty spec means one set
// named "Set1" holding every non-ID, non-response column.
Dataset load_dataset(const std::string& path, const std::optional<std::string>& id_col,
                     const std::string& response_col, const DescriptorSetSpec& spec,
                     bool force_continuous = false);

// Sidecar schema file: {"id_col": ..., "response_col": ..., "sets": [{"name","length"}]}.
struct DatasetSchema {
    std::optional<std::string> id_col;
    std::string response_col;
    DescriptorSetSpec spec;
};

DatasetSchema load_schema(const std::string& path);

void write_dataset_csv(const Dataset& dataset, const std::string& path);

}  // namespace cvbench
