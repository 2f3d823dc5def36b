#pragma once

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "scalebench/ingest.hpp"
#include "scalebench/regress.hpp"

namespace scalebench {

// Independent per-group fits of one sample. Every sample group lands either
// in fits or in skipped (with the fit's failure code).
struct GroupedFits {
    MetricSelector selector;
    GroupLevel level = GroupLevel::All;
    std::map<std::string, FitResult> fits;
    std::vector<std::pair<std::string, std::string>> skipped;  // key, reason
};

// Fits every group of the sample. threads > 1 distributes groups over worker
// threads; the result is identical to sequential evaluation.
GroupedFits fit_groups(const AnalysisSample& sample, FitOptions opts = {},
                       std::size_t threads = 1);

// Benchmark prediction: exp(intercept_ln) * size^beta, the log-space median
// of the fitted line (no lognormal smearing correction). Throws
// NonPositiveSize.
double predict_benchmark(const FitResult& fit, double size_value);

struct BenchmarkScore {
    std::string company_id;
    std::string group_key;
    double size_value = 0.0;
    double actual_impact = 0.0;
    double predicted_impact = 0.0;
    double residual_ln = 0.0;  // ln(actual / predicted); positive = above line
    double ratio = 0.0;        // actual / predicted
};

struct ScoringResult {
    std::vector<BenchmarkScore> scores;
    // Companies whose group has no fit: (company_id, group_key).
    std::vector<std::pair<std::string, std::string>> omitted;
};

// One score per company in a fitted group, ordered by group key then by
// descending residual_ln (worst performer first).
ScoringResult score_companies(const AnalysisSample& sample,
                              const GroupedFits& grouped);

struct GroupSavings {
    std::string group_key;
    double actual = 0.0;
    double capped = 0.0;
};

// Hypothetical enforcement of the benchmark as a cap: every company above the
// line is brought down onto it, everyone else keeps their actual value.
struct SavingsReport {
    MetricSelector selector;
    GroupLevel level = GroupLevel::All;
    double total_actual = 0.0;
    double total_capped = 0.0;
    double savings_fraction = 0.0;  // (actual - capped) / actual
    std::vector<GroupSavings> per_group;
    std::vector<std::string> skipped_groups;  // excluded from the totals
};

SavingsReport savings(const AnalysisSample& sample, const GroupedFits& grouped);

struct MetricRanking {
    SizeMetric metric = SizeMetric::Revenue;
    double mean_adj_r2 = 0.0;
    double significant_share = 0.0;  // share of fitted groups with p < 0.001
    std::size_t groups_fitted = 0;
};

// Builds one sample per size metric against the given impact metric, fits all
// groups, and ranks metrics by unweighted mean adjusted R-squared (ties by
// significant share, then by the fixed preference order). Metrics yielding no
// fitted group are omitted; throws EmptySample when none survives.
std::vector<MetricRanking> rank_size_metrics(
    std::span<const CompanyRecord> records, ImpactMetric impact,
    GroupLevel level, std::size_t min_group_size = default_min_group_size,
    FitOptions opts = {});

}  // namespace scalebench
