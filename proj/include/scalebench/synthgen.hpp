#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "scalebench/records.hpp"

namespace scalebench {

struct ParetoDist {
    double x_min = 1.0;
    double alpha = 1.0;
};

struct LogNormalDist {
    double mu = 0.0;
    double sigma = 1.0;
};

using SizeDist = std::variant<ParetoDist, LogNormalDist>;

// Generative parameters for one synthetic population: sizes drawn from
// size_dist, impact = exp(intercept_ln_true) * size^beta_true * exp(eps) with
// eps ~ Normal(0, noise_sd). The draws use CounterRng(seed, 0) with a fixed
// stride of four uniforms per record (two reserved for the size draw, two for
// the noise), so generation is splittable by record index.
struct SyntheticSpec {
    std::size_t n = 0;
    double beta_true = 1.0;
    double intercept_ln_true = 0.0;
    double noise_sd = 0.0;
    SizeDist size_dist = ParetoDist{};
    std::string group_key;
    std::uint64_t seed = 0;
    // Which record fields receive the generated pair.
    SizeMetric size_metric = SizeMetric::Revenue;
    ImpactMetric impact_metric = ImpactMetric::Emissions;
};

// Deterministic population for one group. Records carry group_key as both
// sector and industry, ids "<group_key>-000001" onward, and a country cycled
// from a fixed four-entry ring so per-country views have content.
//
// Throws ValidationError InvalidSpec on nonsensical parameters.
std::vector<CompanyRecord> generate_population(const SyntheticSpec& spec);

// Concatenation of independent per-spec populations. Per-group output does
// not depend on the order of specs. Throws DuplicateGroupKey.
std::vector<CompanyRecord> generate_multigroup(std::span<const SyntheticSpec> specs);

// Emits the ingest CSV format (header + one row per record, %.17g numbers).
std::string records_to_csv(std::span<const CompanyRecord> records);

// Spec files are JSON: a single object or an array of objects with keys
// n, beta_true, intercept_ln_true, noise_sd, size_dist{kind,...}, group_key,
// seed, and optional size_metric / impact_metric.
std::vector<SyntheticSpec> specs_from_json_text(const std::string& text);

}  // namespace scalebench
