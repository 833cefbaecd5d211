#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cvbench {

// Repeated cross-validation plan: one row of fold labels per split.
struct SplitPlan {
    std::size_t nsplits = 0;
    std::size_t nfolds = 0;
    std::vector<std::uint64_t> seeds;                 // length nsplits
    std::vector<std::vector<int>> assignment;         // nsplits rows of n labels in 1..nfolds

    std::size_t n() const { return assignment.empty() ? 0 : assignment.front().size(); }
};

// Default seeds are 11111, 22222, 33333, ... (11111 * split index).
std::vector<std::uint64_t> default_seeds(std::size_t nsplits);

// Balanced fold labels for n observations: the ceil(n/k)-sized folds take
// the lowest indices, then the label vector is Fisher-Yates shuffled with
// the repo PRNG (see rng.hpp) seeded with `seed`.
std::vector<int> assign_folds(std::size_t n, std::size_t nfolds, std::uint64_t seed);

SplitPlan make_split_plan(std::size_t n, std::size_t nsplits, std::size_t nfolds,
                          const std::vector<std::uint64_t>& seeds = {});

// folds.csv: columns split,row_index,fold (1-based indices).
std::string split_plan_to_csv(const SplitPlan& plan);
SplitPlan split_plan_from_csv(const std::string& path);

}  // namespace cvbench
