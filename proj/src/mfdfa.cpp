#include "hftail/mfdfa.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <json.hpp>

#include "hftail/error.hpp"
#include "hftail/io.hpp"
#include "hftail/numerics.hpp"
#include "hftail/parallel.hpp"

namespace hftail {

std::vector<int> default_scales(std::size_t n, int count) {
  std::vector<int> out;
  int smin = 16;
  long smax = static_cast<long>(n / 4);
  if (smax < smin || count < 1) return out;
  double la = std::log(static_cast<double>(smin)), lb = std::log(static_cast<double>(smax));
  for (int i = 0; i < count; ++i) {
    double t = count > 1 ? static_cast<double>(i) / (count - 1) : 0.0;
    int s = static_cast<int>(std::llround(std::exp(la + (lb - la) * t)));
    if (out.empty() || s > out.back()) out.push_back(s);
  }
  return out;
}

std::vector<double> default_moments(double lo, double hi, double step) {
  std::vector<double> out;
  long n = std::lround((hi - lo) / step);
  for (long i = 0; i <= n; ++i) out.push_back(lo + step * static_cast<double>(i));
  return out;
}

// ---------------------------------------------------------------------------
// fluctuation surface
// ---------------------------------------------------------------------------

namespace {

// Least-squares polynomial residual variance for one window of the profile.
// The Gram matrix depends only on the window length, so it is factored once
// per scale and each window contributes a right-hand side and a solve.
struct Detrender {
  int s, order;
  std::vector<double> t;     // time axis scaled to [-1, 1]
  std::vector<double> chol;  // Cholesky factor of the Gram matrix, row-major lower

  Detrender(int s_, int order_) : s(s_), order(order_) {
    int m = order + 1;
    t.resize(s);
    for (int i = 0; i < s; ++i)
      t[i] = s > 1 ? 2.0 * static_cast<double>(i) / (s - 1) - 1.0 : 0.0;
    // Gram matrix G_jk = sum_i t^(j+k)
    std::vector<double> pow_sum(2 * order + 1, 0.0);
    for (int i = 0; i < s; ++i) {
      double p = 1.0;
      for (int e = 0; e <= 2 * order; ++e) {
        pow_sum[e] += p;
        p *= t[i];
      }
    }
    std::vector<double> g(m * m);
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) g[j * m + k] = pow_sum[j + k];
    // in-place Cholesky
    chol.assign(m * m, 0.0);
    for (int j = 0; j < m; ++j) {
      for (int k = 0; k <= j; ++k) {
        double sum = g[j * m + k];
        for (int l = 0; l < k; ++l) sum -= chol[j * m + l] * chol[k * m + l];
        chol[j * m + k] = (j == k) ? std::sqrt(sum) : sum / chol[k * m + k];
      }
    }
  }

  // mean squared residual of the window y[0..s) after polynomial removal
  double residual_variance(const double* y) const {
    int m = order + 1;
    std::vector<double> rhs(m, 0.0);
    for (int i = 0; i < s; ++i) {
      double p = 1.0;
      for (int j = 0; j < m; ++j) {
        rhs[j] += y[i] * p;
        p *= t[i];
      }
    }
    // forward then backward substitution
    std::vector<double> cvec(m);
    for (int j = 0; j < m; ++j) {
      double sum = rhs[j];
      for (int l = 0; l < j; ++l) sum -= chol[j * m + l] * cvec[l];
      cvec[j] = sum / chol[j * m + j];
    }
    for (int j = m - 1; j >= 0; --j) {
      double sum = cvec[j];
      for (int l = j + 1; l < m; ++l) sum -= chol[l * m + j] * cvec[l];
      cvec[j] = sum / chol[j * m + j];
    }
    double ss = 0.0;
    for (int i = 0; i < s; ++i) {
      double fitv = 0.0;
      for (int j = order; j >= 0; --j) fitv = fitv * t[i] + cvec[j];
      double r = y[i] - fitv;
      ss += r * r;
    }
    return ss / static_cast<double>(s);
  }
};

}  // namespace

FluctuationSurface mfdfa(const ReturnSeries& r, const MfdfaParams& params) {
  const std::size_t n = r.values.size();
  if (params.scales.empty()) fail(errc::domain, "mfdfa: no scales");
  if (params.moments.empty()) fail(errc::domain, "mfdfa: no moments");
  if (params.poly_order < 0) fail(errc::domain, "mfdfa: negative poly order");
  for (std::size_t i = 0; i < params.scales.size(); ++i) {
    if (params.scales[i] < 4 * (params.poly_order + 1))
      fail(errc::domain, "mfdfa: scale below 4*(poly_order+1)");
    if (i > 0 && params.scales[i] <= params.scales[i - 1])
      fail(errc::domain, "mfdfa: scales not strictly increasing");
  }
  if (n < 4 * static_cast<std::size_t>(params.scales.back()))
    fail(errc::insufficient_data, "mfdfa: series shorter than 4*max(scale)");

  // profile: cumulative sum of the mean-removed series
  double mean = 0.0;
  for (double v : r.values) mean += v;
  mean /= static_cast<double>(n);
  std::vector<double> profile(n);
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += r.values[i] - mean;
    profile[i] = acc;
  }

  const std::size_t n_scales = params.scales.size();
  const std::size_t n_moments = params.moments.size();
  FluctuationSurface surf;
  surf.scales = params.scales;
  surf.moments = params.moments;
  surf.poly_order = params.poly_order;
  surf.fq.assign(n_moments, std::vector<double>(n_scales, 0.0));
  surf.flags.assign(n_moments, std::vector<int>(n_scales, 0));

  parallel_for(n_scales, [&](std::size_t si) {
    int s = surf.scales[si];
    std::size_t windows = n / static_cast<std::size_t>(s);
    Detrender det(s, params.poly_order);
    std::vector<double> f2;
    f2.reserve(2 * windows);
    for (std::size_t v = 0; v < windows; ++v)
      f2.push_back(det.residual_variance(&profile[v * s]));
    for (std::size_t v = 0; v < windows; ++v)
      f2.push_back(det.residual_variance(&profile[n - (v + 1) * s]));

    std::vector<double> positive;
    positive.reserve(f2.size());
    for (double f : f2)
      if (f > 0.0) positive.push_back(f);
    int excluded = static_cast<int>(f2.size() - positive.size());

    for (std::size_t mi = 0; mi < n_moments; ++mi) {
      surf.flags[mi][si] = excluded;
      if (positive.size() < 4) {
        surf.fq[mi][si] = std::numeric_limits<double>::quiet_NaN();
        continue;
      }
      double qm = surf.moments[mi];
      if (qm == 0.0) {
        double lsum = 0.0;
        for (double f : positive) lsum += std::log(f);
        surf.fq[mi][si] = std::exp(0.5 * lsum / static_cast<double>(positive.size()));
      } else {
        double sum = 0.0;
        for (double f : positive) sum += std::pow(f, 0.5 * qm);
        surf.fq[mi][si] =
            std::pow(sum / static_cast<double>(positive.size()), 1.0 / qm);
      }
    }
  });

  bool any_defined = false;
  for (const auto& row : surf.fq)
    for (double v : row)
      if (!std::isnan(v)) any_defined = true;
  if (!any_defined)
    fail(errc::degenerate_series, "mfdfa: zero detrended variance everywhere");
  return surf;
}

// ---------------------------------------------------------------------------
// singularity spectrum
// ---------------------------------------------------------------------------

SingularitySpectrum spectrum(const FluctuationSurface& f) {
  const std::size_t n_moments = f.moments.size();
  std::vector<double> h(n_moments, std::numeric_limits<double>::quiet_NaN());
  for (std::size_t mi = 0; mi < n_moments; ++mi) {
    std::vector<double> ls, lf;
    for (std::size_t si = 0; si < f.scales.size(); ++si) {
      double v = f.fq[mi][si];
      if (std::isnan(v) || !(v > 0.0)) continue;
      ls.push_back(std::log(static_cast<double>(f.scales[si])));
      lf.push_back(std::log(v));
    }
    if (ls.size() >= 3) h[mi] = ols_slope(ls, lf).slope;
  }

  // longest consecutive run of defined h values
  std::size_t best_start = 0, best_len = 0, start = 0, len = 0;
  for (std::size_t i = 0; i <= n_moments; ++i) {
    if (i < n_moments && !std::isnan(h[i])) {
      if (len == 0) start = i;
      ++len;
      if (len > best_len) {
        best_len = len;
        best_start = start;
      }
    } else {
      len = 0;
    }
  }
  if (best_len < 5)
    fail(errc::insufficient_data, "spectrum needs h defined on 5 consecutive moments");

  SingularitySpectrum out;
  for (std::size_t i = best_start; i < best_start + best_len; ++i)
    out.h_of_q.emplace_back(f.moments[i], h[i]);

  std::vector<double> tau(best_len);
  for (std::size_t i = 0; i < best_len; ++i)
    tau[i] = f.moments[best_start + i] * h[best_start + i] - 1.0;

  std::vector<SpectrumPoint> pts;
  for (std::size_t i = 1; i + 1 < best_len; ++i) {
    double q0 = f.moments[best_start + i - 1], q2 = f.moments[best_start + i + 1];
    double alpha = (tau[i + 1] - tau[i - 1]) / (q2 - q0);
    double fa = f.moments[best_start + i] * alpha - tau[i];
    pts.push_back(SpectrumPoint{alpha, fa});
  }

  // non-concavity shows up as f above the box dimension; trim with a count
  std::vector<SpectrumPoint> kept;
  for (const auto& p : pts) {
    if (p.f_alpha > 1.05) {
      ++out.trimmed;
    } else {
      kept.push_back(p);
    }
  }
  std::sort(kept.begin(), kept.end(),
            [](const SpectrumPoint& a, const SpectrumPoint& b) { return a.alpha_h < b.alpha_h; });
  // a monofractal surface collapses to one point
  for (const auto& p : kept) {
    if (!out.points.empty() && std::abs(p.alpha_h - out.points.back().alpha_h) <= 1e-12) continue;
    out.points.push_back(p);
  }
  if (out.points.empty()) fail(errc::insufficient_data, "spectrum: all points trimmed");
  out.width = out.points.back().alpha_h - out.points.front().alpha_h;
  return out;
}

void write_spectrum_csv(const SingularitySpectrum& s, const std::string& path) {
  std::string body = "alpha_h,f_alpha\n";
  for (const auto& p : s.points) {
    body += fmt_double(p.alpha_h);
    body += ',';
    body += fmt_double(p.f_alpha);
    body += '\n';
  }
  write_text_atomic(path, body);
}

void write_spectrum_sidecar(const SingularitySpectrum& s, const FluctuationSurface& f,
                            const std::string& path) {
  nlohmann::ordered_json j;
  j["poly_order"] = f.poly_order;
  j["scales"] = f.scales;
  j["moments"] = f.moments;
  j["width"] = s.width;
  j["trimmed_points"] = s.trimmed;
  nlohmann::ordered_json hq = nlohmann::ordered_json::array();
  for (const auto& [qm, h] : s.h_of_q) hq.push_back({{"q_m", qm}, {"h", h}});
  j["h_of_q"] = hq;
  write_text_atomic(path, j.dump(2) + "\n");
}

}  // namespace hftail
