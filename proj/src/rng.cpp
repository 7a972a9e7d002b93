#include "hftail/rng.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "hftail/error.hpp"

namespace hftail {

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1;
  do {
    u1 = uniform();
  } while (u1 <= 0.0);
  double u2 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  double a = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(a);
  has_spare_ = true;
  return r * std::cos(a);
}

double Rng::gamma(double shape) {
  if (!(shape > 0.0)) fail(errc::domain, "gamma requires shape > 0");
  if (shape < 1.0) {
    double u;
    do {
      u = 1.0 - uniform();  // (0, 1]
    } while (u <= 0.0);
    return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
  }
  double d = shape - 1.0 / 3.0;
  double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    double u = uniform();
    double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double Rng::student_t(double nu) {
  if (!(nu > 0.0)) fail(errc::domain, "student_t requires nu > 0");
  double z = normal();
  double chi2;
  do {
    chi2 = 2.0 * gamma(0.5 * nu);
  } while (chi2 <= 0.0);
  return z / std::sqrt(chi2 / nu);
}

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) fail(errc::domain, "below requires n > 0");
  // reject the partial block at the top of the range to kill modulo bias
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t overhang = (max % n + 1) % n;
  const std::uint64_t limit = max - overhang;
  for (;;) {
    std::uint64_t r = bits();
    if (r <= limit) return r % n;
  }
}

}  // namespace hftail
