#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "cvbench/dataio.hpp"
#include "cvbench/rng.hpp"

namespace cvbench::testing {

// Scratch directory removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        path_ = std::filesystem::temp_directory_path() / ("cvbench_test_" + tag);
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~TempDir() { std::filesystem::remove_all(path_); }
    std::string file(const std::string& name) const { return (path_ / name).string(); }
    std::string str() const { return path_.string(); }

private:
    std::filesystem::path path_;
};

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

// Synthetic binary dataset: `positives` of n rows are class 1, descriptors
// carry a noisy signal so the learners have something to find.
inline Dataset synthetic_binary_dataset(std::size_t n, std::size_t positives,
                                        std::size_t width1, std::size_t width2,
                                        std::uint64_t seed = 42) {
    SplitMix64 rng(seed);
    Dataset ds;
    std::vector<double> response(n, 0.0);
    for (std::size_t i = 0; i < positives; ++i) response[i] = 1.0;
    for (std::size_t r = 0; r < n; ++r) ds.ids.push_back("obs" + std::to_string(r + 1));
    ds.response.values = response;
    ds.response.kind = ResponseKind::Binary;
    const auto make_set = [&](const std::string& name, std::size_t width) {
        DescriptorSet set;
        set.name = name;
        set.width = width;
        set.values.resize(n * width);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < width; ++c) {
                double v = rng.next_unit() * 2.0 - 1.0;
                if (c % 3 == 0) v += response[r] * 1.5;  // signal columns
                set.values[r * width + c] = v;
            }
        return set;
    };
    ds.descriptor_sets.push_back(make_set("SetA", width1));
    if (width2 > 0) ds.descriptor_sets.push_back(make_set("SetB", width2));
    return ds;
}

}  // namespace cvbench::testing
