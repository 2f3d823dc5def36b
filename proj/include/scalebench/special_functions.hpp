#pragma once

namespace scalebench {

// Log-gamma via the Lanczos approximation (g = 7, 9 coefficients). Self
// contained so concurrent callers never touch libm's signgam global.
double log_gamma(double x);

// Regularized incomplete beta I_x(a, b), evaluated with Lentz's continued
// fraction. Target relative error 1e-10 over the tested domain. Satisfies
// I_x(a,b) + I_{1-x}(b,a) = 1.
//
// Requires a > 0, b > 0, 0 <= x <= 1 (throws std::invalid_argument).
double regularized_incomplete_beta(double a, double b, double x);

// Variant taking the exact complement xc = 1 - x computed by the caller.
// Avoids cancellation when x is within a few ulp of 1 (large-df t tails).
double regularized_incomplete_beta(double a, double b, double x, double xc);

}  // namespace scalebench
