#pragma once

#include <utility>

#include "hftail/distribution.hpp"

namespace hftail {

// Density parameters: p(x) = n_q [1 + (q-1) b_q (x - mu_q)^2]^(-1/(q-1)),
// 1 < q < 3. n_q is derived from (q, b_q), never free.
struct QGaussianParams {
  double q = 1.5;
  double b_q = 1.0;
  double mu_q = 0.0;
  double n_q = 0.0;
};

// Validates the (q, b_q) domain and fills the closed-form normalization.
QGaussianParams make_qgaussian(double q, double b_q, double mu_q = 0.0);

double log_normalization(double q, double b_q);  // ln n_q

// Gauss hypergeometric series for the z <= 0 regime the distribution needs.
// Direct series for small |z|; Pfaff-transformed series once z <= -0.5 so the
// argument stays well inside the unit disk.
double gauss_2f1(double a, double b, double c, double z);

double qgaussian_pdf(double x, const QGaussianParams& p);

// P(X > x). Closed hypergeometric form near the center; an equivalent
// cancellation-free series in log space deep in the tail.
double qgaussian_ccdf(double x, const QGaussianParams& p);

// ln P(X > x) for x >= mu_q, stable down to the far tail; the fit objective.
double qgaussian_log_ccdf(double x, const QGaussianParams& p);

struct QGaussianFit {
  QGaussianParams params;
  Side side = Side::Positive;
  double sse = 0.0;                // objective at the optimum
  double implied_tail_alpha = 0.0; // (3 - q)/(q - 1)
  bool boundary_flag = false;      // optimum pinned near a q bound
};

// Least squares in log P between the empirical per-side CCDF and the folded
// two-sided model 2 P(X > x), mu_q fixed at 0. Nested golden sections over q
// and log b_q.
QGaussianFit fit_qgaussian(const EmpiricalCCDF& c,
                           std::pair<double, double> q_bounds = {1.01, 2.99});

}  // namespace hftail
