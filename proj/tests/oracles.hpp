#pragma once

// Test-side oracles, deliberately independent of the library's computation
// paths: the regression oracle solves the uncentered normal equations in long
// double, the t-distribution oracle integrates the density with adaptive
// Simpson quadrature.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace oracle {

struct OlsFit {
    double beta = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
    double se_beta = 0.0;
    double se_intercept = 0.0;
};

// Brute-force simple OLS on (x, y) via uncentered normal equations.
inline OlsFit ols_normal_equations(std::span<const double> x,
                                   std::span<const double> y) {
    const std::size_t n = x.size();
    long double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += static_cast<long double>(x[i]) * x[i];
        sxy += static_cast<long double>(x[i]) * y[i];
    }
    const long double dn = static_cast<long double>(n);
    const long double det = dn * sxx - sx * sx;
    const long double beta = (dn * sxy - sx * sy) / det;
    const long double c = (sy - beta * sx) / dn;

    const long double my = sy / dn;
    long double sse = 0, sst = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const long double e = y[i] - (c + beta * x[i]);
        sse += e * e;
        const long double d = y[i] - my;
        sst += d * d;
    }
    const long double sigma2 = sse / (dn - 2.0L);

    OlsFit fit;
    fit.beta = static_cast<double>(beta);
    fit.intercept = static_cast<double>(c);
    fit.r2 = static_cast<double>(sst > 0 ? 1.0L - sse / sst : 1.0L);
    // Sxx (centered) = det / n; var(beta) = sigma2 / Sxx; var(c) =
    // sigma2 * (sum x^2) / (n * Sxx).
    fit.se_beta = static_cast<double>(std::sqrt(sigma2 * dn / det));
    fit.se_intercept = static_cast<double>(std::sqrt(sigma2 * sxx / det));
    return fit;
}

namespace detail {

inline double t_density(double x, double df) {
    const double ln_c = std::lgamma((df + 1.0) / 2.0) - std::lgamma(df / 2.0) -
                        0.5 * std::log(df * M_PI);
    return std::exp(ln_c - 0.5 * (df + 1.0) * std::log1p(x * x / df));
}

template <typename F>
double adaptive_simpson(const F& f, double a, double b, double fa, double fm,
                        double fb, double whole, double eps, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * eps) {
        return left + right + (left + right - whole) / 15.0;
    }
    return adaptive_simpson(f, a, m, fa, flm, fm, left, eps / 2.0, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, eps / 2.0, depth - 1);
}

}  // namespace detail

// Two-sided p-value by numerical integration of the t density on [0, |t|].
inline double student_t_p_quadrature(double t, double df) {
    const double hi = std::abs(t);
    if (hi == 0.0) return 1.0;
    auto f = [df](double x) { return detail::t_density(x, df); };
    const double fa = f(0.0);
    const double fb = f(hi);
    const double fm = f(0.5 * hi);
    const double whole = hi / 6.0 * (fa + 4.0 * fm + fb);
    const double integral =
        detail::adaptive_simpson(f, 0.0, hi, fa, fm, fb, whole, 1e-13, 60);
    return std::clamp(2.0 * (0.5 - integral), 0.0, 1.0);
}

inline double rel_err(double a, double b) {
    const double scale = std::max({std::abs(a), std::abs(b), 1e-6});
    return std::abs(a - b) / scale;
}

}  // namespace oracle
