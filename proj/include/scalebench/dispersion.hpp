#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "scalebench/benchmark.hpp"

namespace scalebench {

// Per-country residual statistics relative to the benchmark. SDs use the
// population convention (divisor n). cv is the coefficient of variation of
// the within-country actual/benchmark ratios, absent when the mean ratio is
// within 1e-12 of zero.
struct CountryStats {
    std::string country;
    std::size_t n = 0;
    double mean_residual_ln = 0.0;
    double sd_residual_ln = 0.0;
    std::optional<double> cv;
    bool beyond_one_sd = false;  // |mean_residual_ln| > pooled residual SD
};

struct DispersionResult {
    std::vector<CountryStats> countries;  // sorted by |mean_residual_ln| desc
    double pooled_sd = 0.0;  // population SD of all residuals
    std::vector<std::string> unknown_country;  // company ids, input order
};

// Groups score residuals by country of incorporation (looked up in records).
// Companies that resolve to no country are reported, not fatal.
DispersionResult country_dispersion(std::span<const BenchmarkScore> scores,
                                    std::span<const CompanyRecord> records);

}  // namespace scalebench
