#include "hftail/tailfit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <json.hpp>

#include "hftail/error.hpp"
#include "hftail/io.hpp"
#include "hftail/numerics.hpp"
#include "hftail/parallel.hpp"
#include "hftail/rng.hpp"

namespace hftail {

namespace {

constexpr std::size_t kMinPoints = 5;
constexpr int kLogBins = 30;

// inclusive index range of CCDF points inside the fit window
std::pair<std::size_t, std::size_t> select_points(const EmpiricalCCDF& c,
                                                  const std::optional<FitRange>& range) {
  double x_lo, x_hi;
  if (range) {
    if (!(range->x_lo > 0.0)) fail(errc::domain, "fit range must have x_lo > 0");
    if (!(range->x_lo < range->x_hi)) fail(errc::domain, "fit range must have x_lo < x_hi");
    x_lo = range->x_lo;
    x_hi = range->x_hi;
  } else {
    x_lo = 2.0;
    x_hi = -1.0;
    double n = static_cast<double>(c.n_total);
    for (std::size_t j = c.x.size(); j > 0; --j) {
      if (std::llround(c.p[j - 1] * n) >= 10) {
        x_hi = c.x[j - 1];
        break;
      }
    }
    if (x_hi < x_lo) fail(errc::insufficient_range, "no tail points with 10 exceedances above 2 sigma");
  }
  auto lo = std::lower_bound(c.x.begin(), c.x.end(), x_lo);
  auto hi = std::upper_bound(c.x.begin(), c.x.end(), x_hi);
  if (hi - lo < static_cast<std::ptrdiff_t>(kMinPoints))
    fail(errc::insufficient_range, "fewer than 5 points in the fit range");
  return {static_cast<std::size_t>(lo - c.x.begin()), static_cast<std::size_t>(hi - c.x.begin()) - 1};
}

}  // namespace

TailFitResult fit_tail(const EmpiricalCCDF& c, std::optional<FitRange> range, bool log_binning) {
  auto [i0, i1] = select_points(c, range);

  std::vector<double> lx, lp;
  lx.reserve(i1 - i0 + 1);
  lp.reserve(i1 - i0 + 1);
  if (!log_binning) {
    for (std::size_t i = i0; i <= i1; ++i) {
      lx.push_back(std::log(c.x[i]));
      lp.push_back(std::log(c.p[i]));
    }
  } else {
    double la = std::log(c.x[i0]), lb = std::log(c.x[i1]);
    double w = (lb - la) / kLogBins;
    std::vector<double> sx(kLogBins, 0.0), sp(kLogBins, 0.0);
    std::vector<int> cnt(kLogBins, 0);
    for (std::size_t i = i0; i <= i1; ++i) {
      int b = w > 0.0 ? std::min(kLogBins - 1, static_cast<int>((std::log(c.x[i]) - la) / w))
                      : 0;
      sx[b] += std::log(c.x[i]);
      sp[b] += std::log(c.p[i]);
      ++cnt[b];
    }
    for (int b = 0; b < kLogBins; ++b) {
      if (cnt[b] == 0) continue;
      lx.push_back(sx[b] / cnt[b]);
      lp.push_back(sp[b] / cnt[b]);
    }
    if (lx.size() < kMinPoints)
      fail(errc::insufficient_range, "fewer than 5 occupied bins in the fit range");
  }

  OlsFit ols = ols_slope(lx, lp);
  TailFitResult out;
  out.alpha = -ols.slope;
  out.std_error = ols.std_error;
  out.r_squared = ols.r_squared;
  out.x_lo = c.x[i0];
  out.x_hi = c.x[i1];
  out.n_points = lx.size();
  return out;
}

TailFitResult bootstrap_tail(const ReturnSeries& r, Side side, std::optional<FitRange> range,
                             int n_rep, std::uint64_t seed) {
  if (n_rep < 100) fail(errc::domain, "bootstrap needs at least 100 replicas");

  TailFitResult base = fit_tail(ccdf(r, side), range);

  const std::size_t n = r.values.size();
  std::vector<double> alphas(n_rep, std::numeric_limits<double>::quiet_NaN());
  std::vector<std::string> errors(n_rep);
  parallel_for(static_cast<std::size_t>(n_rep), [&](std::size_t rep) {
    Rng rng(sub_seed(seed, rep));
    ReturnSeries draw;
    draw.instrument_id = r.instrument_id;
    draw.dt_minutes = r.dt_minutes;
    draw.norm = r.norm;
    draw.values.reserve(n);
    for (std::size_t i = 0; i < n; ++i) draw.values.push_back(r.values[rng.below(n)]);
    try {
      alphas[rep] = fit_tail(ccdf(draw, side), range).alpha;
    } catch (const Error& e) {
      errors[rep] = e.what();
    }
  });

  std::vector<double> ok;
  ok.reserve(n_rep);
  for (double a : alphas)
    if (!std::isnan(a)) ok.push_back(a);
  if (ok.size() * 2 < static_cast<std::size_t>(n_rep)) {
    for (const auto& e : errors)
      if (!e.empty()) fail(errc::insufficient_data, "bootstrap: most replicas failed (" + e + ")");
    fail(errc::insufficient_data, "bootstrap: most replicas failed");
  }

  std::sort(ok.begin(), ok.end());
  auto quantile = [&ok](double q) {
    double pos = q * static_cast<double>(ok.size() - 1);
    std::size_t lo = static_cast<std::size_t>(pos);
    std::size_t hi = std::min(lo + 1, ok.size() - 1);
    double frac = pos - static_cast<double>(lo);
    return ok[lo] * (1.0 - frac) + ok[hi] * frac;
  };
  base.has_ci = true;
  base.ci_lo = quantile(0.025);
  base.ci_hi = quantile(0.975);
  return base;
}

TailReport tail_report(const std::vector<ReturnSeries>& series, const std::vector<Side>& sides,
                       std::optional<FitRange> range) {
  TailReport report;
  report.cells.resize(series.size() * sides.size());
  parallel_for(report.cells.size(), [&](std::size_t idx) {
    const ReturnSeries& r = series[idx / sides.size()];
    Side side = sides[idx % sides.size()];
    TailCell& cell = report.cells[idx];
    cell.instrument = r.instrument_id;
    cell.dt_minutes = r.dt_minutes;
    cell.side = side;
    try {
      cell.fit = fit_tail(ccdf(r, side), range);
    } catch (const Error& e) {
      cell.error = e.what();
    }
  });
  return report;
}

void write_report_csv(const TailReport& report, const std::string& path) {
  std::string body = "instrument,dt_minutes,side,alpha,stderr,ci_lo,ci_hi,x_lo,x_hi,n_points\n";
  for (const TailCell& cell : report.cells) {
    body += cell.instrument;
    body += ',';
    body += std::to_string(cell.dt_minutes);
    body += ',';
    body += side_name(cell.side);
    if (cell.fit) {
      const TailFitResult& f = *cell.fit;
      body += ',' + fmt_double(f.alpha) + ',' + fmt_double(f.std_error);
      body += f.has_ci ? ',' + fmt_double(f.ci_lo) + ',' + fmt_double(f.ci_hi) : std::string(",,");
      body += ',' + fmt_double(f.x_lo) + ',' + fmt_double(f.x_hi) + ',' +
              std::to_string(f.n_points);
    } else {
      body += ",,,,,,,";
    }
    body += '\n';
  }
  write_text_atomic(path, body);
}

void write_report_json(const TailReport& report, const std::string& path) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const TailCell& cell : report.cells) {
    nlohmann::ordered_json row;
    row["instrument"] = cell.instrument;
    row["dt_minutes"] = cell.dt_minutes;
    row["side"] = side_name(cell.side);
    if (cell.fit) {
      const TailFitResult& f = *cell.fit;
      row["alpha"] = f.alpha;
      row["stderr"] = f.std_error;
      row["r_squared"] = f.r_squared;
      if (f.has_ci) {
        row["ci_lo"] = f.ci_lo;
        row["ci_hi"] = f.ci_hi;
      }
      row["x_lo"] = f.x_lo;
      row["x_hi"] = f.x_hi;
      row["n_points"] = f.n_points;
    } else {
      row["error"] = cell.error;
    }
    rows.push_back(std::move(row));
  }
  write_text_atomic(path, rows.dump(2) + "\n");
}

}  // namespace hftail
