#include "scalebench/benchmark.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <thread>

#include "scalebench/errors.hpp"

namespace scalebench {

namespace {

std::vector<DataPoint> to_points(const std::vector<SamplePoint>& members) {
    std::vector<DataPoint> pts;
    pts.reserve(members.size());
    for (const SamplePoint& m : members) pts.push_back({m.size, m.impact});
    return pts;
}

}  // namespace

GroupedFits fit_groups(const AnalysisSample& sample, FitOptions opts,
                       std::size_t threads) {
    if (sample.groups.empty()) {
        throw ValidationError("EmptySample", "sample has no groups to fit");
    }

    std::vector<const std::pair<const std::string, std::vector<SamplePoint>>*>
        entries;
    entries.reserve(sample.groups.size());
    for (const auto& entry : sample.groups) entries.push_back(&entry);

    struct Slot {
        bool ok = false;
        FitResult fit;
        std::string error;
    };
    std::vector<Slot> slots(entries.size());

    auto run_range = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const std::vector<DataPoint> pts = to_points(entries[i]->second);
            try {
                slots[i].fit = fit_loglog(pts, opts);
                slots[i].ok = true;
            } catch (const ValidationError& e) {
                slots[i].error = e.code();
            }
        }
    };

    if (threads <= 1 || entries.size() <= 1) {
        run_range(0, entries.size());
    } else {
        const std::size_t workers = std::min(threads, entries.size());
        const std::size_t chunk = (entries.size() + workers - 1) / workers;
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            const std::size_t begin = w * chunk;
            const std::size_t end = std::min(begin + chunk, entries.size());
            if (begin >= end) break;
            pool.emplace_back(run_range, begin, end);
        }
        for (auto& t : pool) t.join();
    }

    GroupedFits out;
    out.selector = sample.selector;
    out.level = sample.level;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (slots[i].ok) {
            out.fits.emplace(entries[i]->first, slots[i].fit);
        } else {
            out.skipped.emplace_back(entries[i]->first, slots[i].error);
        }
    }
    return out;
}

double predict_benchmark(const FitResult& fit, double size_value) {
    if (!(size_value > 0.0) || !std::isfinite(size_value)) {
        throw ValidationError("NonPositiveSize",
                              "benchmark prediction needs a positive size");
    }
    return std::exp(fit.intercept_ln) * std::pow(size_value, fit.beta);
}

ScoringResult score_companies(const AnalysisSample& sample,
                              const GroupedFits& grouped) {
    ScoringResult out;
    for (const auto& [key, members] : sample.groups) {
        const auto fit_it = grouped.fits.find(key);
        if (fit_it == grouped.fits.end()) {
            for (const SamplePoint& m : members) {
                out.omitted.emplace_back(m.company_id, key);
            }
            continue;
        }
        const FitResult& fit = fit_it->second;
        const std::size_t first = out.scores.size();
        for (const SamplePoint& m : members) {
            BenchmarkScore s;
            s.company_id = m.company_id;
            s.group_key = key;
            s.size_value = m.size;
            s.actual_impact = m.impact;
            s.predicted_impact = predict_benchmark(fit, m.size);
            s.ratio = s.actual_impact / s.predicted_impact;
            s.residual_ln = std::log(s.ratio);
            out.scores.push_back(std::move(s));
        }
        std::sort(out.scores.begin() + static_cast<std::ptrdiff_t>(first),
                  out.scores.end(),
                  [](const BenchmarkScore& a, const BenchmarkScore& b) {
                      if (a.residual_ln != b.residual_ln) {
                          return a.residual_ln > b.residual_ln;
                      }
                      return a.company_id < b.company_id;
                  });
    }
    return out;
}

SavingsReport savings(const AnalysisSample& sample, const GroupedFits& grouped) {
    const ScoringResult scored = score_companies(sample, grouped);
    if (scored.scores.empty()) {
        throw ValidationError("EmptySample", "no scored companies for savings");
    }

    SavingsReport report;
    report.selector = sample.selector;
    report.level = sample.level;

    std::map<std::string, GroupSavings> per_group;
    for (const BenchmarkScore& s : scored.scores) {
        GroupSavings& g = per_group[s.group_key];
        g.group_key = s.group_key;
        g.actual += s.actual_impact;
        g.capped += std::min(s.actual_impact, s.predicted_impact);
    }
    for (const auto& [key, g] : per_group) {
        report.total_actual += g.actual;
        report.total_capped += g.capped;
        report.per_group.push_back(g);
    }
    report.savings_fraction =
        (report.total_actual - report.total_capped) / report.total_actual;

    std::set<std::string> skipped;
    for (const auto& [key, reason] : grouped.skipped) skipped.insert(key);
    for (const auto& [id, key] : scored.omitted) skipped.insert(key);
    report.skipped_groups.assign(skipped.begin(), skipped.end());
    return report;
}

std::vector<MetricRanking> rank_size_metrics(
    std::span<const CompanyRecord> records, ImpactMetric impact,
    GroupLevel level, std::size_t min_group_size, FitOptions opts) {
    std::vector<MetricRanking> ranking;
    for (SizeMetric metric : table_size_order) {
        AnalysisSample sample;
        try {
            sample = build_sample(records, MetricSelector{metric, impact},
                                  level, min_group_size);
        } catch (const ValidationError&) {
            continue;  // metric unavailable in this dataset
        }
        const GroupedFits grouped = fit_groups(sample, opts);
        if (grouped.fits.empty()) continue;

        MetricRanking r;
        r.metric = metric;
        r.groups_fitted = grouped.fits.size();
        std::size_t significant = 0;
        for (const auto& [key, fit] : grouped.fits) {
            r.mean_adj_r2 += fit.adj_r2;
            if (fit.p_beta < 0.001) ++significant;
        }
        r.mean_adj_r2 /= static_cast<double>(grouped.fits.size());
        r.significant_share =
            static_cast<double>(significant) /
            static_cast<double>(grouped.fits.size());
        ranking.push_back(r);
    }
    if (ranking.empty()) {
        throw ValidationError("EmptySample",
                              "no size metric yields a fittable sample");
    }

    auto preference = [](SizeMetric m) {
        for (std::size_t i = 0; i < rank_tiebreak_order.size(); ++i) {
            if (rank_tiebreak_order[i] == m) return i;
        }
        return rank_tiebreak_order.size();
    };
    std::sort(ranking.begin(), ranking.end(),
              [&](const MetricRanking& a, const MetricRanking& b) {
                  if (a.mean_adj_r2 != b.mean_adj_r2) {
                      return a.mean_adj_r2 > b.mean_adj_r2;
                  }
                  if (a.significant_share != b.significant_share) {
                      return a.significant_share > b.significant_share;
                  }
                  return preference(a.metric) < preference(b.metric);
              });
    return ranking;
}

}  // namespace scalebench
