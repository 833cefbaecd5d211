#pragma once

#include <string>
#include <vector>

#include "cvbench/measures.hpp"

namespace cvbench {

struct AnovaRow {
    double df = 0, ss = 0, ms = 0, f = 0, p = 0;
};

// Additive two-factor blocked ANOVA: Y_ij = mu + split_i + combo_j + e_ij,
// one observation per cell; the interaction is the error term.
struct AnovaTable {
    std::string metric;
    std::size_t nsplits = 0;  // I
    std::size_t ncombos = 0;  // J
    AnovaRow model;   // df = (I-1)+(J-1)
    AnovaRow error;   // df = (I-1)(J-1); f/p unused
    AnovaRow total;   // df = IJ-1; ms/f/p unused
    AnovaRow split_row;
    AnovaRow combo_row;
    double r_square = 0;
    double root_mse = 0;
    double coef_var = 0;
    double mean = 0;
    std::vector<ComboKey> combo_keys;   // J labels in mean order
    std::vector<double> combo_means;    // aligned with combo_keys
};

AnovaTable anova_blocked(const MeasureTable& table);

// Recompute every derived entry (MS, F, R^2, Root MSE, Coef Var, p-values)
// from raw SS/DF/mean inputs; used to verify printed tables.
AnovaTable derive_anova_entries(double model_ss, double model_df, double error_ss,
                                double error_df, double mean);

enum class SignificanceBucket { NotSignificant, P05, P01 };

SignificanceBucket bucket_for_p(double p_adj);
std::string bucket_name(SignificanceBucket bucket);

struct PairwiseComparison {
    ComboKey combo_a, combo_b;
    double mean_a = 0, mean_b = 0;
    double diff = 0;      // mean_a - mean_b
    double se_diff = 0;   // sqrt(2 * error_ms / I)
    double q_stat = 0;    // |diff| / sqrt(error_ms / I)
    double p_adj = 0;     // 1 - studentized_range_cdf(q_stat, J, error_df)
    SignificanceBucket bucket = SignificanceBucket::NotSignificant;
};

// Tukey HSD over the balanced design: all J(J-1)/2 unordered pairs,
// ordered by (combo_a, combo_b).
std::vector<PairwiseComparison> tukey_kramer(const AnovaTable& anova);

// The printed ANOVA block: header, factor line, Model/Error/Total,
// fit statistics, then the Split and Desc/Meth rows.
std::string anova_to_text(const AnovaTable& anova);

std::string pairwise_to_csv(const std::vector<PairwiseComparison>& comparisons);

}  // namespace cvbench
