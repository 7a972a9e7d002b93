#include "hftail/surrogate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hftail/error.hpp"
#include "hftail/parallel.hpp"
#include "hftail/rng.hpp"

namespace hftail {

SurrogateEnsemble shuffle_surrogates(const ReturnSeries& r, int n, std::uint64_t seed) {
  if (n < 1) fail(errc::domain, "need at least one realization");
  SurrogateEnsemble ens;
  ens.base_id = r.instrument_id;
  ens.n_realizations = n;
  ens.seed = seed;
  ens.realizations.resize(n);
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t i) {
    ReturnSeries copy = r;
    copy.instrument_id = r.instrument_id + "/shuffle" + std::to_string(i);
    Rng rng(sub_seed(seed, i));
    rng.shuffle(copy.values);
    ens.realizations[i] = std::move(copy);
  });
  return ens;
}

namespace {

ReturnSeries blank(const char* id) {
  ReturnSeries r;
  r.instrument_id = id;
  r.dt_minutes = 1;
  return r;
}

}  // namespace

ReturnSeries gen_gaussian(std::size_t n, std::uint64_t seed) {
  if (n < 1) fail(errc::domain, "need n >= 1");
  ReturnSeries r = blank("gaussian");
  Rng rng(seed);
  r.values.reserve(n);
  for (std::size_t i = 0; i < n; ++i) r.values.push_back(rng.normal());
  return r;
}

ReturnSeries gen_student_t(std::size_t n, double nu, std::uint64_t seed) {
  if (n < 1) fail(errc::domain, "need n >= 1");
  if (!(nu > 0.0)) fail(errc::domain, "nu must be positive");
  ReturnSeries r = blank("student_t");
  Rng rng(seed);
  r.values.reserve(n);
  for (std::size_t i = 0; i < n; ++i) r.values.push_back(rng.student_t(nu));
  return r;
}

ReturnSeries gen_qgaussian(std::size_t n, double q, std::uint64_t seed) {
  if (n < 1) fail(errc::domain, "need n >= 1");
  if (!(q > 1.0 && q < 3.0)) fail(errc::domain, "q must lie in (1, 3)");
  double nu = (3.0 - q) / (q - 1.0);
  double scale = 1.0 / std::sqrt(nu * (q - 1.0));
  ReturnSeries r = blank("qgaussian");
  Rng rng(seed);
  r.values.reserve(n);
  for (std::size_t i = 0; i < n; ++i) r.values.push_back(scale * rng.student_t(nu));
  return r;
}

ReturnSeries gen_ar1(std::size_t n, double phi, std::uint64_t seed) {
  if (n < 1) fail(errc::domain, "need n >= 1");
  if (!(std::abs(phi) < 1.0)) fail(errc::domain, "|phi| must be below 1");
  ReturnSeries r = blank("ar1");
  Rng rng(seed);
  r.values.reserve(n);
  double x = rng.normal() / std::sqrt(1.0 - phi * phi);  // stationary start
  r.values.push_back(x);
  for (std::size_t i = 1; i < n; ++i) {
    x = phi * x + rng.normal();
    r.values.push_back(x);
  }
  return r;
}

ReturnSeries gen_cascade(int levels, double w1, std::uint64_t seed, bool randomize_signs) {
  if (levels < 1 || levels > 30) fail(errc::domain, "levels must lie in [1, 30]");
  if (!(w1 > 0.0 && w1 < 1.0)) fail(errc::domain, "w1 must lie in (0, 1)");
  const double w2 = 1.0 - w1;

  // weight order per node from one stream, signs from another, so the
  // magnitude multiset is shared between signed and unsigned variants
  Rng branch(sub_seed(seed, 0));
  std::vector<double> mass{1.0};
  for (int l = 0; l < levels; ++l) {
    std::vector<double> next(mass.size() * 2);
    for (std::size_t i = 0; i < mass.size(); ++i) {
      bool swap = branch.uniform() < 0.5;
      next[2 * i] = mass[i] * (swap ? w2 : w1);
      next[2 * i + 1] = mass[i] * (swap ? w1 : w2);
    }
    mass.swap(next);
  }

  ReturnSeries r = blank("cascade");
  r.values = std::move(mass);
  if (randomize_signs) {
    Rng sign(sub_seed(seed, 1));
    for (double& v : r.values)
      if (sign.uniform() < 0.5) v = -v;
  }
  return r;
}

SingularitySpectrum average_spectra(const std::vector<SingularitySpectrum>& specs,
                                    int grid_points) {
  if (specs.empty()) fail(errc::insufficient_data, "no spectra to average");
  if (grid_points < 2) fail(errc::domain, "need at least 2 grid points");
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  for (const auto& s : specs) {
    if (s.points.size() < 2) fail(errc::mismatch, "spectrum with fewer than 2 points");
    lo = std::max(lo, s.points.front().alpha_h);
    hi = std::min(hi, s.points.back().alpha_h);
  }
  if (!(lo < hi)) fail(errc::mismatch, "spectra do not overlap in alpha");

  auto interp = [](const SingularitySpectrum& s, double a) {
    const auto& p = s.points;
    auto it = std::lower_bound(p.begin(), p.end(), a,
                               [](const SpectrumPoint& q, double v) { return q.alpha_h < v; });
    if (it == p.begin()) return p.front().f_alpha;
    if (it == p.end()) return p.back().f_alpha;
    const auto& b = *it;
    const auto& a0 = *(it - 1);
    double t = (a - a0.alpha_h) / (b.alpha_h - a0.alpha_h);
    return a0.f_alpha * (1.0 - t) + b.f_alpha * t;
  };

  SingularitySpectrum out;
  for (int g = 0; g < grid_points; ++g) {
    double a = lo + (hi - lo) * static_cast<double>(g) / (grid_points - 1);
    double sum = 0.0;
    for (const auto& s : specs) sum += interp(s, a);
    out.points.push_back(SpectrumPoint{a, sum / static_cast<double>(specs.size())});
  }
  out.width = hi - lo;
  return out;
}

}  // namespace hftail
