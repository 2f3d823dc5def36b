#include "scalebench/regress.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "scalebench/errors.hpp"
#include "scalebench/rng.hpp"
#include "scalebench/special_functions.hpp"

namespace scalebench {

namespace {

struct CoreFit {
    double beta = 0.0;
    double intercept = 0.0;
    double mean_x = 0.0;
    double sxx = 0.0;
    double sse = 0.0;
    double sst = 0.0;
    double r2 = 0.0;
};

// Centered least squares on already-logged coordinates, accumulated in
// extended precision so near-zero R^2 keeps full relative accuracy. Callers
// guarantee n >= 3 and at least two distinct x values.
CoreFit fit_core(std::span<const double> lx, std::span<const double> ly) {
    const std::size_t n = lx.size();
    long double mx = 0.0L, my = 0.0L;
    for (std::size_t i = 0; i < n; ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= static_cast<long double>(n);
    my /= static_cast<long double>(n);

    long double sxx = 0.0L, sxy = 0.0L, syy = 0.0L;
    for (std::size_t i = 0; i < n; ++i) {
        const long double dx = lx[i] - mx;
        const long double dy = ly[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }

    const long double beta = sxy / sxx;
    const long double intercept = my - beta * mx;
    long double sse = 0.0L;
    for (std::size_t i = 0; i < n; ++i) {
        const long double e = ly[i] - (intercept + beta * lx[i]);
        sse += e * e;
    }

    CoreFit f;
    f.mean_x = static_cast<double>(mx);
    f.sxx = static_cast<double>(sxx);
    f.sst = static_cast<double>(syy);
    f.beta = static_cast<double>(beta);
    f.intercept = static_cast<double>(intercept);
    f.sse = static_cast<double>(sse);
    f.r2 = static_cast<double>(syy > 0.0L ? 1.0L - sse / syy : 1.0L);
    return f;
}

void validate_points(std::span<const DataPoint> points) {
    if (points.size() < 3) {
        throw ValidationError("TooFewPoints",
                              "log-log fit needs at least 3 points, got " +
                                  std::to_string(points.size()));
    }
    for (const DataPoint& p : points) {
        if (!(p.size > 0.0) || !std::isfinite(p.size) || !(p.impact > 0.0) ||
            !std::isfinite(p.impact)) {
            throw ValidationError(
                "NonPositiveValue",
                "all sizes and impacts must be positive and finite");
        }
    }
    const double first = points.front().size;
    const bool degenerate =
        std::all_of(points.begin(), points.end(),
                    [&](const DataPoint& p) { return p.size == first; });
    if (degenerate) {
        throw ValidationError("DegenerateInput",
                              "all size values are equal; slope is undefined");
    }
}

// Empirical quantile with linear interpolation between order statistics
// (position p * (m - 1)).
double quantile_sorted(const std::vector<double>& v, double p) {
    const double h = p * static_cast<double>(v.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(h);
    if (lo + 1 >= v.size()) return v.back();
    const double frac = h - static_cast<double>(lo);
    return v[lo] + frac * (v[lo + 1] - v[lo]);
}

}  // namespace

ScalingRegime classify_regime(double beta) {
    if (beta < 0.98) return ScalingRegime::Sublinear;
    if (beta > 1.02) return ScalingRegime::Superlinear;
    return ScalingRegime::Linear;
}

std::string significance_stars(double p) {
    if (p < 0.001) return "***";
    if (p < 0.01) return "**";
    if (p < 0.05) return "*";
    return "";
}

double student_t_two_sided_p(double t, double df) {
    if (!(df >= 1.0) || !std::isfinite(df)) {
        throw ValidationError("InvalidDf", "degrees of freedom must be >= 1");
    }
    if (!std::isfinite(t)) {
        throw ValidationError("InvalidDf", "t statistic must be finite");
    }
    if (t == 0.0) return 1.0;
    const double t2 = t * t;
    // 2 P(T >= |t|) = I_x(df/2, 1/2) with x = df / (df + t^2). x and its
    // complement are both computed directly so large-df tails keep full
    // relative accuracy.
    const double x = df / (df + t2);
    const double xc = t2 / (df + t2);
    double p = regularized_incomplete_beta(df / 2.0, 0.5, x, xc);
    return std::clamp(p, 0.0, 1.0);
}

FitResult fit_loglog(std::span<const DataPoint> points, FitOptions opts) {
    validate_points(points);

    const std::size_t n = points.size();
    std::vector<double> lx(n), ly(n);
    for (std::size_t i = 0; i < n; ++i) {
        lx[i] = std::log(points[i].size);
        ly[i] = std::log(points[i].impact);
    }
    const CoreFit core = fit_core(lx, ly);
    if (!(core.sxx > 0.0)) {
        throw ValidationError("DegenerateInput",
                              "all size values are equal; slope is undefined");
    }

    const double dn = static_cast<double>(n);
    const double df = dn - 2.0;
    const double sigma2 = core.sse / df;

    FitResult r;
    r.n = n;
    r.beta = core.beta;
    r.intercept_ln = core.intercept;
    r.residual_sd = std::sqrt(sigma2);
    r.r2 = std::clamp(core.r2, 0.0, 1.0);
    r.adj_r2 = 1.0 - (1.0 - r.r2) * (dn - 1.0) / df;

    if (opts.robust_se) {
        // HC1 sandwich in x-centered coordinates, then shifted back for the
        // intercept variance.
        double s_e2 = 0.0, s_xe2 = 0.0, s_x2e2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double e = ly[i] - (core.intercept + core.beta * lx[i]);
            const double dx = lx[i] - core.mean_x;
            const double e2 = e * e;
            s_e2 += e2;
            s_xe2 += dx * e2;
            s_x2e2 += dx * dx * e2;
        }
        const double hc1 = dn / df;
        const double var_beta = hc1 * s_x2e2 / (core.sxx * core.sxx);
        const double var_c_centered = hc1 * s_e2 / (dn * dn);
        const double cov = hc1 * s_xe2 / (dn * core.sxx);
        const double var_intercept = var_c_centered +
                                     core.mean_x * core.mean_x * var_beta -
                                     2.0 * core.mean_x * cov;
        r.se_beta = std::sqrt(std::max(var_beta, 0.0));
        r.se_intercept = std::sqrt(std::max(var_intercept, 0.0));
    } else {
        r.se_beta = std::sqrt(sigma2 / core.sxx);
        r.se_intercept = std::sqrt(
            sigma2 * (1.0 / dn + core.mean_x * core.mean_x / core.sxx));
    }

    if (r.se_beta > 0.0) {
        r.t_beta = r.beta / r.se_beta;
        r.p_beta = student_t_two_sided_p(r.t_beta, df);
    } else {
        // Exact fit: the slope is measured without error.
        r.t_beta = std::numeric_limits<double>::infinity();
        r.p_beta = r.beta == 0.0 ? 1.0 : 0.0;
    }
    r.regime = classify_regime(r.beta);
    return r;
}

ConfidenceInterval bootstrap_ci(std::span<const DataPoint> points, double level,
                                std::size_t replicates, std::uint64_t seed,
                                FitOptions opts, std::size_t threads) {
    if (!(level > 0.0) || !(level < 1.0)) {
        throw ValidationError("InvalidArgument",
                              "confidence level must be in (0, 1)");
    }
    if (replicates < 100) {
        throw ValidationError("InvalidArgument",
                              "bootstrap needs at least 100 replicates");
    }
    // Validates preconditions and anchors the interval's point estimate.
    (void)fit_loglog(points, opts);

    const std::size_t n = points.size();
    std::vector<double> lx(n), ly(n);
    for (std::size_t i = 0; i < n; ++i) {
        lx[i] = std::log(points[i].size);
        ly[i] = std::log(points[i].impact);
    }

    // betas[r] is NaN when replicate r was degenerate.
    std::vector<double> betas(replicates);
    auto run_range = [&](std::size_t begin, std::size_t end) {
        std::vector<double> rx(n), ry(n);
        for (std::size_t r = begin; r < end; ++r) {
            const CounterRng rng(seed, r);
            bool distinct = false;
            for (std::size_t j = 0; j < n; ++j) {
                const std::size_t k = rng.bounded_at(j, n);
                rx[j] = lx[k];
                ry[j] = ly[k];
                distinct = distinct || rx[j] != rx[0];
            }
            betas[r] = distinct ? fit_core(rx, ry).beta
                                : std::numeric_limits<double>::quiet_NaN();
        }
    };

    if (threads <= 1) {
        run_range(0, replicates);
    } else {
        const std::size_t workers = std::min(threads, replicates);
        std::vector<std::thread> pool;
        pool.reserve(workers);
        const std::size_t chunk = (replicates + workers - 1) / workers;
        for (std::size_t w = 0; w < workers; ++w) {
            const std::size_t begin = w * chunk;
            const std::size_t end = std::min(begin + chunk, replicates);
            if (begin >= end) break;
            pool.emplace_back(run_range, begin, end);
        }
        for (auto& t : pool) t.join();
    }

    std::vector<double> ok;
    ok.reserve(replicates);
    for (double b : betas) {
        if (!std::isnan(b)) ok.push_back(b);
    }
    if (ok.size() * 2 < replicates) {
        throw ValidationError("DegenerateInput",
                              "more than half of the bootstrap resamples were "
                              "degenerate");
    }
    std::sort(ok.begin(), ok.end());

    const double alpha = 1.0 - level;
    ConfidenceInterval ci;
    ci.low = quantile_sorted(ok, alpha / 2.0);
    ci.high = quantile_sorted(ok, 1.0 - alpha / 2.0);
    ci.level = level;
    ci.replicates = replicates;
    ci.seed = seed;
    return ci;
}

}  // namespace scalebench
