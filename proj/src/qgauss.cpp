#include "hftail/qgauss.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "hftail/error.hpp"
#include "hftail/numerics.hpp"

namespace hftail {

// ---------------------------------------------------------------------------
// hypergeometric series
// ---------------------------------------------------------------------------

namespace {

constexpr int kSeriesCap = 100000;
constexpr double kSeriesTol = 1e-16;

double series_2f1(double a, double b, double c, double z) {
  double term = 1.0, sum = 1.0;
  for (int k = 0; k < kSeriesCap; ++k) {
    term *= z * (a + k) * (b + k) / ((c + k) * (k + 1));
    sum += term;
    if (std::abs(term) <= kSeriesTol * std::abs(sum)) return sum;
  }
  fail(errc::convergence, "hypergeometric series did not converge within the term cap");
}

}  // namespace

double gauss_2f1(double a, double b, double c, double z) {
  if (c <= 0.0 && c == std::floor(c)) fail(errc::domain, "gauss_2f1: c is a non-positive integer");
  if (!(z <= 0.0)) fail(errc::domain, "gauss_2f1 requires z <= 0");
  if (z == 0.0) return 1.0;
  if (z <= -0.5) {
    // Pfaff: argument z/(z-1) lands in (0, 1/3], far from the radius
    return std::pow(1.0 - z, -a) * series_2f1(a, c - b, c, z / (z - 1.0));
  }
  return series_2f1(a, b, c, z);
}

// ---------------------------------------------------------------------------
// density and distribution
// ---------------------------------------------------------------------------

double log_normalization(double q, double b_q) {
  double beta = 1.0 / (q - 1.0);
  return log_gamma(beta) - log_gamma(beta - 0.5) + 0.5 * std::log((q - 1.0) * b_q / std::numbers::pi);
}

QGaussianParams make_qgaussian(double q, double b_q, double mu_q) {
  if (!(q > 1.0 && q < 3.0)) fail(errc::domain, "q must lie in (1, 3)");
  if (!(b_q > 0.0)) fail(errc::domain, "b_q must be positive");
  QGaussianParams p;
  p.q = q;
  p.b_q = b_q;
  p.mu_q = mu_q;
  p.n_q = std::exp(log_normalization(q, b_q));
  return p;
}

double qgaussian_pdf(double x, const QGaussianParams& p) {
  double y = x - p.mu_q;
  double beta = 1.0 / (p.q - 1.0);
  return std::exp(std::log(p.n_q) - beta * std::log1p((p.q - 1.0) * p.b_q * y * y));
}

namespace {

// ln P(X > mu + y) for y >= 0.
//
// Central region (b y^2 <= 2): the closed form 1/2 - n_q y 2F1(...) is safe,
// the value stays above ~0.07.  Tail region: the closed form cancels
// catastrophically, so switch to the equivalent all-positive series
//   ln P = lgamma(beta) - lgamma(p+1) - ln(2 sqrt(pi)) + p ln w + ln S,
//   p = beta - 1/2,  w = 1/(1 + t^2),  t^2 = (q-1) b y^2,
//   S = sum_k (p)_k (1/2)_k / ((p+1)_k k!) w^k,
// obtained from the incomplete-beta form of the survival function plus the
// same Pfaff map. S needs ~37/t^2 terms as t^2 -> 0, so a quadrature fallback
// covers the near-Gaussian sliver where the tail region is entered with tiny
// t^2 (q - 1 below ~5e-4).
double log_ccdf_upper(double y, double q, double b, double log_nq) {
  double beta = 1.0 / (q - 1.0);
  double t2 = (q - 1.0) * b * y * y;
  if (b * y * y <= 2.0) {
    double central = 0.5 - std::exp(log_nq) * y * gauss_2f1(0.5, beta, 1.5, -t2);
    return std::log(central);
  }
  if (t2 < 1e-3) {
    QGaussianParams p = make_qgaussian(q, b, 0.0);
    auto f = [&p](double u) { return qgaussian_pdf(u, p); };
    return std::log(integrate(f, y, std::numeric_limits<double>::infinity(), 1e-13).value);
  }
  double pp = beta - 0.5;
  double w = 1.0 / (1.0 + t2);
  double term = 1.0, sum = 1.0;
  for (int k = 0; k < kSeriesCap; ++k) {
    term *= w * (pp + k) * (0.5 + k) / ((pp + 1.0 + k) * (k + 1));
    sum += term;
    if (term <= kSeriesTol * sum) break;
  }
  return log_gamma(beta) - log_gamma(pp + 1.0) - 0.5 * std::log(std::numbers::pi) -
         std::log(2.0) + pp * std::log(w) + std::log(sum);
}

}  // namespace

double qgaussian_log_ccdf(double x, const QGaussianParams& p) {
  double y = x - p.mu_q;
  if (y < 0.0) fail(errc::domain, "qgaussian_log_ccdf requires x >= mu_q");
  if (y == 0.0) return std::log(0.5);
  return log_ccdf_upper(y, p.q, p.b_q, std::log(p.n_q));
}

double qgaussian_ccdf(double x, const QGaussianParams& p) {
  double y = x - p.mu_q;
  if (y == 0.0) return 0.5;
  if (y < 0.0) return 1.0 - std::exp(log_ccdf_upper(-y, p.q, p.b_q, std::log(p.n_q)));
  return std::exp(log_ccdf_upper(y, p.q, p.b_q, std::log(p.n_q)));
}

// ---------------------------------------------------------------------------
// fitting
// ---------------------------------------------------------------------------

namespace {

constexpr std::size_t kMaxObjectivePoints = 1500;
constexpr double kLogBLo = -12.0, kLogBHi = 12.0;
constexpr int kInnerIters = 50, kOuterScan = 24, kOuterIters = 35;
constexpr double kBoundaryMargin = 0.05;

struct Objective {
  std::vector<double> x, logp;

  double operator()(double q, double logb) const {
    double b = std::exp(logb);
    double log_nq = log_normalization(q, b);
    const double log2 = std::numbers::ln2;
    double sse = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      double d = log2 + log_ccdf_upper(x[i], q, b, log_nq) - logp[i];
      sse += d * d;
    }
    return sse;
  }
};

Objective thin_points(const EmpiricalCCDF& c) {
  Objective obj;
  const std::size_t m = c.x.size();
  if (m <= kMaxObjectivePoints) {
    obj.x = c.x;
    for (double p : c.p) obj.logp.push_back(std::log(p));
    return obj;
  }
  // keep a log-spaced subset so the tail keeps its weight in the objective
  double la = std::log(c.x.front()), lb = std::log(c.x.back());
  std::size_t last = static_cast<std::size_t>(-1);
  for (std::size_t g = 0; g < kMaxObjectivePoints; ++g) {
    double target = la + (lb - la) * static_cast<double>(g) /
                             static_cast<double>(kMaxObjectivePoints - 1);
    auto it = std::lower_bound(c.x.begin(), c.x.end(), std::exp(target));
    std::size_t j = std::min(static_cast<std::size_t>(it - c.x.begin()), m - 1);
    if (j == last) continue;
    last = j;
    obj.x.push_back(c.x[j]);
    obj.logp.push_back(std::log(c.p[j]));
  }
  return obj;
}

}  // namespace

QGaussianFit fit_qgaussian(const EmpiricalCCDF& c, std::pair<double, double> q_bounds) {
  if (c.x.size() < 50) fail(errc::insufficient_data, "q-fit needs at least 50 CCDF points");
  double qlo = q_bounds.first, qhi = q_bounds.second;
  if (!(qlo > 1.0 && qhi < 3.0 && qlo < qhi)) fail(errc::domain, "q bounds must satisfy 1 < lo < hi < 3");

  Objective obj = thin_points(c);

  auto inner = [&obj](double q) {
    double logb = golden_min([&](double t) { return obj(q, t); }, kLogBLo, kLogBHi, kInnerIters);
    return std::pair<double, double>{obj(q, logb), logb};
  };

  std::vector<double> qs(kOuterScan);
  std::size_t best = 0;
  double best_sse = std::numeric_limits<double>::infinity();
  for (int i = 0; i < kOuterScan; ++i) {
    qs[i] = qlo + (qhi - qlo) * static_cast<double>(i) / (kOuterScan - 1);
    double sse = inner(qs[i]).first;
    if (sse < best_sse) {
      best_sse = sse;
      best = i;
    }
  }
  double lo = qs[best > 0 ? best - 1 : 0];
  double hi = qs[std::min<std::size_t>(best + 1, kOuterScan - 1)];
  double qhat = golden_min([&](double q) { return inner(q).first; }, lo, hi, kOuterIters);
  auto [sse, logb] = inner(qhat);

  QGaussianFit fit;
  fit.params = make_qgaussian(qhat, std::exp(logb), 0.0);
  fit.side = c.side;
  fit.sse = sse;
  fit.implied_tail_alpha = (3.0 - qhat) / (qhat - 1.0);
  fit.boundary_flag = (qhat - qlo < kBoundaryMargin) || (qhi - qhat < kBoundaryMargin);
  return fit;
}

}  // namespace hftail
