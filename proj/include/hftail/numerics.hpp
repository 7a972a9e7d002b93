#pragma once

#include <functional>
#include <span>

namespace hftail {

// Natural log of the gamma function, x > 0. Lanczos approximation,
// ~1e-14 relative accuracy.
double log_gamma(double x);

// Rising factorial (a)_k = a (a+1) ... (a+k-1); (a)_0 = 1.
double pochhammer(double a, int k);

struct OlsFit {
  double slope = 0.0;
  double intercept = 0.0;
  double std_error = 0.0;  // residual-based standard error of the slope
  double r_squared = 0.0;
};

// Least-squares line through (xs, ys). Needs >= 3 points and non-constant xs.
OlsFit ols_slope(std::span<const double> xs, std::span<const double> ys);

struct QuadratureResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  int subdivisions = 0;
};

// Adaptive Gauss-Kronrod (G7/K15) integration of f over (a, b) to absolute
// tolerance tol. Either endpoint may be infinite; improper ranges are mapped
// onto (0, 1) algebraically before subdivision.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double tol);

// Golden-section minimizer of a unimodal f on [lo, hi]; returns the midpoint
// of the final bracket after iters shrink steps.
double golden_min(const std::function<double(double)>& f, double lo, double hi, int iters);

}  // namespace hftail
