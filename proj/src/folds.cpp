#include "cvbench/folds.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "cvbench/csv.hpp"
#include "cvbench/errors.hpp"
#include "cvbench/rng.hpp"

namespace cvbench {

std::vector<std::uint64_t> default_seeds(std::size_t nsplits) {
    if (nsplits == 0) throw ArgumentError("folds.default_seeds", "nsplits must be >= 1");
    std::vector<std::uint64_t> seeds(nsplits);
    for (std::size_t s = 0; s < nsplits; ++s) seeds[s] = 11111ULL * (s + 1);
    return seeds;
}

std::vector<int> assign_folds(std::size_t n, std::size_t nfolds, std::uint64_t seed) {
    if (nfolds < 2) throw ArgumentError("folds.assign_folds", "nfolds must be >= 2");
    if (nfolds > n) throw ArgumentError("folds.assign_folds", "nfolds exceeds observation count");
    const std::size_t base = n / nfolds;
    const std::size_t extra = n % nfolds;  // folds 1..extra get one more member
    std::vector<int> labels;
    labels.reserve(n);
    for (std::size_t f = 0; f < nfolds; ++f) {
        const std::size_t size = base + (f < extra ? 1 : 0);
        labels.insert(labels.end(), size, static_cast<int>(f + 1));
    }
    SplitMix64 rng(seed);
    fisher_yates_shuffle(labels, rng);
    return labels;
}

SplitPlan make_split_plan(std::size_t n, std::size_t nsplits, std::size_t nfolds,
                          const std::vector<std::uint64_t>& seeds) {
    if (nsplits == 0) throw ArgumentError("folds.make_split_plan", "nsplits must be >= 1");
    SplitPlan plan;
    plan.nsplits = nsplits;
    plan.nfolds = nfolds;
    plan.seeds = seeds.empty() ? default_seeds(nsplits) : seeds;
    if (plan.seeds.size() != nsplits) {
        std::ostringstream msg;
        msg << "got " << plan.seeds.size() << " seeds for " << nsplits << " splits";
        throw ArgumentError("folds.make_split_plan", msg.str());
    }
    for (std::size_t s = 0; s < nsplits; ++s)
        plan.assignment.push_back(assign_folds(n, nfolds, plan.seeds[s]));
    return plan;
}

std::string split_plan_to_csv(const SplitPlan& plan) {
    std::ostringstream out;
    out << "split,row_index,fold\n";
    for (std::size_t s = 0; s < plan.nsplits; ++s)
        for (std::size_t r = 0; r < plan.assignment[s].size(); ++r)
            out << s + 1 << ',' << r + 1 << ',' << plan.assignment[s][r] << '\n';
    return out.str();
}

SplitPlan split_plan_from_csv(const std::string& path) {
    const CsvTable table = read_csv(path);
    const int split_idx = table.column_index("split");
    const int row_idx = table.column_index("row_index");
    const int fold_idx = table.column_index("fold");
    if (split_idx < 0 || row_idx < 0 || fold_idx < 0)
        throw SchemaError("folds.split_plan_from_csv", "expected columns split,row_index,fold");
    std::map<std::size_t, std::map<std::size_t, int>> by_split;
    int max_fold = 0;
    for (const auto& row : table.rows) {
        const std::size_t s = std::stoul(row[split_idx]);
        const std::size_t r = std::stoul(row[row_idx]);
        const int f = std::stoi(row[fold_idx]);
        by_split[s][r] = f;
        max_fold = std::max(max_fold, f);
    }
    SplitPlan plan;
    plan.nsplits = by_split.size();
    plan.nfolds = static_cast<std::size_t>(max_fold);
    for (auto& [s, rows] : by_split) {
        std::vector<int> labels(rows.size());
        for (auto& [r, f] : rows) {
            if (r == 0 || r > labels.size())
                throw ParseError("folds.split_plan_from_csv", "row_index out of range");
            labels[r - 1] = f;
        }
        plan.assignment.push_back(std::move(labels));
    }
    plan.seeds.assign(plan.nsplits, 0);  // seeds are not recoverable from the csv
    return plan;
}

}  // namespace cvbench
