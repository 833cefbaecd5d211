#include "cvbench/inference.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

#include "cvbench/csv.hpp"
#include "cvbench/errors.hpp"
#include "cvbench/special.hpp"

namespace cvbench {

AnovaTable anova_blocked(const MeasureTable& table) {
    // Index the balanced design and reject incomplete ones by cell.
    std::set<std::size_t> splits;
    std::set<ComboKey> combos;
    for (const auto& row : table.rows) {
        splits.insert(row.split);
        combos.insert(row.combo);
    }
    const std::size_t ni = splits.size();
    const std::size_t nj = combos.size();
    if (ni < 2 || nj < 2)
        throw ArgumentError("inference.anova_blocked", "need at least 2 splits and 2 combos");
    std::map<std::pair<std::size_t, ComboKey>, double> cells;
    for (const auto& row : table.rows) {
        if (!cells.emplace(std::make_pair(row.split, row.combo), row.value).second)
            throw ArgumentError("inference.anova_blocked",
                                "duplicate cell (split " + std::to_string(row.split) + ", " +
                                    row.combo.label() + ")");
    }
    for (std::size_t s : splits)
        for (const auto& c : combos)
            if (!cells.count({s, c}))
                throw ArgumentError("inference.anova_blocked",
                                    "incomplete design: missing cell (split " +
                                        std::to_string(s) + ", " + c.label() + ")");

    const double di = static_cast<double>(ni);
    const double dj = static_cast<double>(nj);
    double grand = 0.0;
    for (const auto& [_, v] : cells) grand += v;
    grand /= di * dj;

    std::map<std::size_t, double> split_means;
    for (std::size_t s : splits) {
        double sum = 0.0;
        for (const auto& c : combos) sum += cells.at({s, c});
        split_means[s] = sum / dj;
    }
    std::map<ComboKey, double> combo_means;
    for (const auto& c : combos) {
        double sum = 0.0;
        for (std::size_t s : splits) sum += cells.at({s, c});
        combo_means[c] = sum / di;
    }

    double ss_split = 0.0;
    for (const auto& [_, m] : split_means) ss_split += (m - grand) * (m - grand);
    ss_split *= dj;
    double ss_combo = 0.0;
    for (const auto& [_, m] : combo_means) ss_combo += (m - grand) * (m - grand);
    ss_combo *= di;
    double ss_total = 0.0;
    for (const auto& [_, v] : cells) ss_total += (v - grand) * (v - grand);
    const double ss_error = ss_total - ss_split - ss_combo;

    AnovaTable out;
    out.metric = table.metric;
    out.nsplits = ni;
    out.ncombos = nj;
    out.mean = grand;
    out.split_row.df = di - 1.0;
    out.split_row.ss = ss_split;
    out.combo_row.df = dj - 1.0;
    out.combo_row.ss = ss_combo;
    out.model.df = out.split_row.df + out.combo_row.df;
    out.model.ss = ss_split + ss_combo;
    out.error.df = (di - 1.0) * (dj - 1.0);
    out.error.ss = ss_error;
    out.total.df = di * dj - 1.0;
    out.total.ss = ss_total;

    out.model.ms = out.model.ss / out.model.df;
    out.error.ms = out.error.ss / out.error.df;
    out.split_row.ms = out.split_row.ss / out.split_row.df;
    out.combo_row.ms = out.combo_row.ss / out.combo_row.df;
    if (out.error.ms <= 0.0)
        throw NumericError("inference.anova_blocked",
                           "degenerate design: error mean square is zero");
    out.model.f = out.model.ms / out.error.ms;
    out.split_row.f = out.split_row.ms / out.error.ms;
    out.combo_row.f = out.combo_row.ms / out.error.ms;
    out.model.p = 1.0 - f_cdf(out.model.f, out.model.df, out.error.df);
    out.split_row.p = 1.0 - f_cdf(out.split_row.f, out.split_row.df, out.error.df);
    out.combo_row.p = 1.0 - f_cdf(out.combo_row.f, out.combo_row.df, out.error.df);
    out.r_square = out.model.ss / out.total.ss;
    out.root_mse = std::sqrt(out.error.ms);
    out.coef_var = 100.0 * out.root_mse / out.mean;

    for (const auto& [key, mean] : combo_means) {
        out.combo_keys.push_back(key);
        out.combo_means.push_back(mean);
    }
    return out;
}

AnovaTable derive_anova_entries(double model_ss, double model_df, double error_ss,
                                double error_df, double mean) {
    AnovaTable out;
    out.model.ss = model_ss;
    out.model.df = model_df;
    out.error.ss = error_ss;
    out.error.df = error_df;
    out.total.ss = model_ss + error_ss;
    out.total.df = model_df + error_df;
    out.mean = mean;
    out.model.ms = model_ss / model_df;
    out.error.ms = error_ss / error_df;
    out.model.f = out.model.ms / out.error.ms;
    out.model.p = 1.0 - f_cdf(out.model.f, model_df, error_df);
    out.r_square = out.model.ss / out.total.ss;
    out.root_mse = std::sqrt(out.error.ms);
    out.coef_var = 100.0 * out.root_mse / mean;
    return out;
}

SignificanceBucket bucket_for_p(double p_adj) {
    if (p_adj <= 0.01) return SignificanceBucket::P01;
    if (p_adj <= 0.05) return SignificanceBucket::P05;
    return SignificanceBucket::NotSignificant;
}

std::string bucket_name(SignificanceBucket bucket) {
    switch (bucket) {
        case SignificanceBucket::NotSignificant: return "not_significant";
        case SignificanceBucket::P05: return "p<=0.05";
        case SignificanceBucket::P01: return "p<=0.01";
    }
    return "?";
}

std::vector<PairwiseComparison> tukey_kramer(const AnovaTable& anova) {
    if (anova.error.ms <= 0.0)
        throw NumericError("inference.tukey_kramer", "degenerate design: error mean square is zero");
    const double di = static_cast<double>(anova.nsplits);
    const std::size_t nj = anova.combo_keys.size();
    std::vector<PairwiseComparison> out;
    out.reserve(nj * (nj - 1) / 2);
    const double se_mean = std::sqrt(anova.error.ms / di);
    for (std::size_t a = 0; a < nj; ++a) {
        for (std::size_t b = a + 1; b < nj; ++b) {
            PairwiseComparison cmp;
            cmp.combo_a = anova.combo_keys[a];
            cmp.combo_b = anova.combo_keys[b];
            cmp.mean_a = anova.combo_means[a];
            cmp.mean_b = anova.combo_means[b];
            cmp.diff = cmp.mean_a - cmp.mean_b;
            cmp.se_diff = std::sqrt(2.0 * anova.error.ms / di);
            cmp.q_stat = std::fabs(cmp.diff) / se_mean;
            cmp.p_adj = 1.0 - studentized_range_cdf(cmp.q_stat, nj, anova.error.df);
            cmp.p_adj = std::min(1.0, std::max(0.0, cmp.p_adj));
            cmp.bucket = bucket_for_p(cmp.p_adj);
            out.push_back(std::move(cmp));
        }
    }
    return out;
}

namespace {

std::string fixed(double v, int prec) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(prec) << v;
    return os.str();
}

std::string p_text(double p) { return p < 0.0001 ? "<.0001" : fixed(p, 4); }

void pad(std::ostringstream& os, const std::string& s, int width) {
    os << s;
    for (int i = static_cast<int>(s.size()); i < width; ++i) os << ' ';
}

}  // namespace

std::string anova_to_text(const AnovaTable& anova) {
    std::ostringstream os;
    os << "   Analysis of Variance on: '" << anova.metric << "'\n";
    os << " Using factors: Split and Descriptor/Method combination\n";
    const auto cell = [](std::ostringstream& line, const std::string& value, int width) {
        const int fill = width - static_cast<int>(value.size());
        for (int i = 0; i < fill; ++i) line << ' ';
        line << value;
    };
    // ncols: 2 = DF+SS, 3 = +MS, 5 = +F+p.
    const auto row = [&](const std::string& source, const AnovaRow& r, int ncols) {
        std::ostringstream line;
        pad(line, source, 6);
        cell(line, fixed(r.df, 0), 5);
        cell(line, fixed(r.ss, 4), 10);
        if (ncols >= 3) cell(line, fixed(r.ms, 4), 10);
        if (ncols >= 5) {
            cell(line, fixed(r.f, 4), 10);
            cell(line, p_text(r.p), 10);
        }
        os << line.str() << "\n";
    };
    os << "Source     DF        SS        MS         F   p-value\n";
    row("Model", anova.model, 5);
    row("Error", anova.error, 3);
    row("Total", anova.total, 2);
    os << "      R-Square   Coef Var   Root MSE       Mean\n";
    {
        std::ostringstream line;
        cell(line, fixed(anova.r_square, 4), 14);
        cell(line, fixed(anova.coef_var, 4), 11);
        cell(line, fixed(anova.root_mse, 4), 11);
        cell(line, fixed(anova.mean, 4), 11);
        os << line.str() << "\n";
    }
    os << "Source       DF       SS       MS        F   p-value\n";
    const auto row2 = [&](const std::string& source, const AnovaRow& r) {
        std::ostringstream line;
        pad(line, source, 9);
        cell(line, fixed(r.df, 0), 5);
        cell(line, fixed(r.ss, 3), 9);
        cell(line, fixed(r.ms, 3), 9);
        cell(line, fixed(r.f, 3), 9);
        cell(line, p_text(r.p), 10);
        os << line.str() << "\n";
    };
    row2("Split", anova.split_row);
    row2("Desc/Meth", anova.combo_row);
    return os.str();
}

std::string pairwise_to_csv(const std::vector<PairwiseComparison>& comparisons) {
    std::ostringstream out;
    out << "combo_a,combo_b,mean_a,mean_b,diff,se_diff,q_stat,p_adj,bucket\n";
    for (const auto& c : comparisons) {
        out << c.combo_a.label() << ',' << c.combo_b.label() << ',' << format_double(c.mean_a)
            << ',' << format_double(c.mean_b) << ',' << format_double(c.diff) << ','
            << format_double(c.se_diff) << ',' << format_double(c.q_stat) << ','
            << format_double(c.p_adj) << ',' << bucket_name(c.bucket) << '\n';
    }
    return out.str();
}

}  // namespace cvbench
