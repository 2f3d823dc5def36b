#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "scalebench/records.hpp"

namespace scalebench {

// One raw (size, impact) observation. Both values must be strictly positive;
// the fit works on their natural logarithms.
struct DataPoint {
    double size = 0.0;
    double impact = 0.0;
};

struct FitOptions {
    // Heteroskedasticity-consistent (HC1) standard errors instead of the
    // classical homoskedastic ones. p-values keep the t(n-2) reference.
    bool robust_se = false;
};

// Result of one log-log least-squares fit. intercept_ln is in natural-log
// units (the log-space intercept); residual_sd is the regression standard
// error sqrt(SSE / (n - 2)).
struct FitResult {
    std::size_t n = 0;
    double beta = 0.0;
    double intercept_ln = 0.0;
    double se_beta = 0.0;
    double se_intercept = 0.0;
    double t_beta = 0.0;
    double p_beta = 1.0;
    double r2 = 0.0;
    double adj_r2 = 0.0;
    double residual_sd = 0.0;
    ScalingRegime regime = ScalingRegime::Linear;
};

struct ConfidenceInterval {
    double low = 0.0;
    double high = 0.0;
    double level = 0.0;
    std::size_t replicates = 0;
    std::uint64_t seed = 0;
};

// Least-squares fit of ln(impact) = beta * ln(size) + intercept_ln with
// classical OLS inference on n - 2 degrees of freedom. Sums are centered on
// the log means, so widely scaled inputs stay numerically stable.
//
// Throws ValidationError: TooFewPoints (n < 3), NonPositiveValue (any value
// <= 0 or non-finite), DegenerateInput (all sizes identical).
FitResult fit_loglog(std::span<const DataPoint> points, FitOptions opts = {});

// Two-sided p-value 2 P(T >= |t|) for T ~ Student-t(df), via the regularized
// incomplete beta. Throws ValidationError InvalidDf for df < 1 or
// non-finite t.
double student_t_two_sided_p(double t, double df);

// Sublinear below 0.98, superlinear above 1.02, linear on the closed band
// in between.
ScalingRegime classify_regime(double beta);

// "***" p<0.001, "**" p<0.01, "*" p<0.05, "" otherwise.
std::string significance_stars(double p);

// Percentile bootstrap over case-resampled fits of the slope. Replicate r
// draws its indices from CounterRng(seed, r), so results are deterministic
// and threads > 1 reproduces the sequential interval bit for bit.
//
// Throws when inputs fail fit_loglog preconditions, when replicates < 100 or
// level outside (0,1), and propagates DegenerateInput when more than half of
// the resamples are degenerate.
ConfidenceInterval bootstrap_ci(std::span<const DataPoint> points, double level,
                                std::size_t replicates, std::uint64_t seed,
                                FitOptions opts = {}, std::size_t threads = 1);

}  // namespace scalebench
