#include "hftail/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <vector>

#include "hftail/error.hpp"

namespace hftail {

// ---------------------------------------------------------------------------
// log-gamma
// ---------------------------------------------------------------------------

double log_gamma(double x) {
  if (!(x > 0.0)) fail(errc::domain, "log_gamma requires x > 0");
  // Lanczos, g = 7, 9 coefficients.
  static const double coef[9] = {
      0.99999999999980993,     676.5203681218851,    -1259.1392167224028,
      771.32342877765313,     -176.61502916214059,   12.507343278686905,
      -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
  if (x < 0.5) {
    // reflection keeps accuracy near zero
    return std::log(std::numbers::pi / std::sin(std::numbers::pi * x)) - log_gamma(1.0 - x);
  }
  double z = x - 1.0;
  double a = coef[0];
  for (int i = 1; i < 9; ++i) a += coef[i] / (z + i);
  double t = z + 7.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(a);
}

double pochhammer(double a, int k) {
  if (k < 0) fail(errc::domain, "pochhammer requires k >= 0");
  double p = 1.0;
  for (int i = 0; i < k; ++i) p *= a + i;
  return p;
}

// ---------------------------------------------------------------------------
// ordinary least squares
// ---------------------------------------------------------------------------

OlsFit ols_slope(std::span<const double> xs, std::span<const double> ys) {
  std::size_t n = xs.size();
  if (n != ys.size()) fail(errc::mismatch, "ols_slope: length mismatch");
  if (n < 3) fail(errc::domain, "ols_slope needs at least 3 points");

  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);

  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double dx = xs[i] - mx, dy = ys[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) fail(errc::domain, "ols_slope: xs are constant");

  OlsFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ssr = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
    ssr += r * r;
  }
  fit.r_squared = syy > 0.0 ? std::max(0.0, 1.0 - ssr / syy) : 1.0;
  fit.std_error = n > 2 ? std::sqrt((ssr / static_cast<double>(n - 2)) / sxx) : 0.0;
  return fit;
}

// ---------------------------------------------------------------------------
// adaptive Gauss-Kronrod quadrature
// ---------------------------------------------------------------------------

namespace {

// 15-point Kronrod extension of 7-point Gauss on [-1, 1].
const double kXgk[8] = {0.99145537112081263921, 0.94910791234275852453,
                        0.86486442335976907279, 0.74153118559939443986,
                        0.58608723546769113029, 0.40584515137739716691,
                        0.20778495500789846760, 0.0};
const double kWgk[8] = {0.02293532201052922496, 0.06309209262997855329,
                        0.10479001032225018384, 0.14065325971552591875,
                        0.16900472663926790283, 0.19035057806478540991,
                        0.20443294007529889241, 0.20948214108472782801};
const double kWg[4] = {0.12948496616886969327, 0.27970539148927666790,
                       0.38183005050511894495, 0.41795918367346938776};

struct Panel {
  double a, b, value, error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

Panel evaluate_panel(const std::function<double(double)>& f, double a, double b) {
  double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double fc = f(c);
  double kron = kWgk[7] * fc;
  double gauss = kWg[3] * fc;
  for (int i = 0; i < 7; ++i) {
    double x = h * kXgk[i];
    double fsum = f(c - x) + f(c + x);
    kron += kWgk[i] * fsum;
    if (i % 2 == 1) gauss += kWg[i / 2] * fsum;
  }
  kron *= h;
  gauss *= h;
  return Panel{a, b, kron, std::abs(kron - gauss)};
}

constexpr int kMaxPanels = 2000;

QuadratureResult integrate_finite(const std::function<double(double)>& f, double a, double b,
                                  double tol) {
  std::priority_queue<Panel> heap;
  heap.push(evaluate_panel(f, a, b));
  double total = heap.top().value;
  double err = heap.top().error;
  int panels = 1, splits = 0;
  while (!(err <= tol)) {
    if (panels >= kMaxPanels || !std::isfinite(err)) {
      fail(errc::convergence, "integrate: subdivision cap reached");
    }
    Panel worst = heap.top();
    heap.pop();
    double mid = 0.5 * (worst.a + worst.b);
    Panel left = evaluate_panel(f, worst.a, mid);
    Panel right = evaluate_panel(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++panels;
    ++splits;
  }
  return QuadratureResult{total, err, splits};
}

// Double-exponential trapezoid rule for improper ranges. A rational map to
// (0, 1) turns algebraic tail decay x^-p into an endpoint singularity that
// bisection cannot resolve below machine epsilon, so slowly decaying
// integrands (p < 2) stall. The sinh-based maps instead compress any
// integrable tail double-exponentially; plain trapezoid sums then converge
// at spectral rate under step halving.
QuadratureResult integrate_de(const std::function<double(double)>& f,
                              const std::function<void(double, double&, double&)>& map,
                              double tol) {
  constexpr double kTmax = 7.5;  // node range; weight underflows beyond
  constexpr int kMaxLevel = 10;
  auto term = [&](double t) {
    double x, w;
    map(t, x, w);
    // past the representable range the map overflows; any integrable f
    // contributes nothing there
    if (!std::isfinite(x) || !std::isfinite(w)) return 0.0;
    double v = f(x) * w;
    if (!std::isfinite(v) && std::abs(x) >= 1e100) return 0.0;  // 0*inf far out
    return v;
  };

  double h = 1.0;
  double sum = term(0.0);
  for (double t = h; t <= kTmax; t += h) sum += term(t) + term(-t);
  double prev = sum * h;
  for (int level = 1; level <= kMaxLevel; ++level) {
    h *= 0.5;
    double add = 0.0;
    for (double t = h; t <= kTmax; t += 2.0 * h) add += term(t) + term(-t);
    double cur = 0.5 * prev + add * h;
    double diff = std::abs(cur - prev);
    if (level >= 3 && diff <= tol) return QuadratureResult{cur, diff, level};
    prev = cur;
  }
  fail(errc::convergence, "integrate: refinement cap reached");
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double tol) {
  if (!(tol > 0.0)) fail(errc::domain, "integrate requires tol > 0");
  if (a > b) fail(errc::domain, "integrate requires a <= b");
  if (a == b) return QuadratureResult{0.0, 0.0, 0};

  bool inf_a = std::isinf(a), inf_b = std::isinf(b);
  if (!inf_a && !inf_b) return integrate_finite(f, a, b, tol);

  constexpr double c = std::numbers::pi / 2.0;
  if (inf_a && inf_b) {
    // x = sinh(c sinh t)
    auto map = [](double t, double& x, double& w) {
      double s = c * std::sinh(t);
      x = std::sinh(s);
      w = c * std::cosh(t) * std::cosh(s);
    };
    return integrate_de(f, map, tol);
  }
  if (inf_b) {
    // x = a + exp(c sinh t)
    auto map = [a](double t, double& x, double& w) {
      double e = std::exp(c * std::sinh(t));
      x = a + e;
      w = c * std::cosh(t) * e;
    };
    return integrate_de(f, map, tol);
  }
  // x = b - exp(c sinh t)
  auto map = [b](double t, double& x, double& w) {
    double e = std::exp(c * std::sinh(t));
    x = b - e;
    w = c * std::cosh(t) * e;
  };
  return integrate_de(f, map, tol);
}

double golden_min(const std::function<double(double)>& f, double lo, double hi, int iters) {
  if (!(lo < hi)) fail(errc::domain, "golden_min requires lo < hi");
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - gr * (b - a), d = a + gr * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < iters; ++i) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace hftail
