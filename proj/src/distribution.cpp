#include "hftail/distribution.hpp"

#include <algorithm>
#include <cmath>

#include "hftail/error.hpp"
#include "hftail/io.hpp"

namespace hftail {

EmpiricalCCDF ccdf(const ReturnSeries& r, Side side) {
  if (r.norm != Normalization::Standardized)
    fail(errc::mismatch, "ccdf expects a standardized series");

  std::vector<double> samples;
  samples.reserve(r.values.size() / 2);
  if (side == Side::Positive) {
    for (double v : r.values)
      if (v > 0.0) samples.push_back(v);
  } else {
    for (double v : r.values)
      if (v < 0.0) samples.push_back(-v);
  }
  const std::size_t n = samples.size();
  if (n < 10) fail(errc::insufficient_data, "fewer than 10 samples on the requested side");

  std::sort(samples.begin(), samples.end());

  EmpiricalCCDF out;
  out.side = side;
  out.n_total = n;
  // walk distinct values from the top so the count strictly above each x is
  // available when its p is assigned
  std::size_t i = n;
  std::size_t above = 0;
  while (i > 0) {
    std::size_t j = i;
    while (j > 0 && samples[j - 1] == samples[i - 1]) --j;
    out.x.push_back(samples[i - 1]);
    out.p.push_back(static_cast<double>(above + 1) / static_cast<double>(n));
    above += i - j;
    i = j;
  }
  std::reverse(out.x.begin(), out.x.end());
  std::reverse(out.p.begin(), out.p.end());
  return out;
}

double exceedance(const EmpiricalCCDF& c, double x) {
  if (c.x.empty()) fail(errc::insufficient_data, "empty distribution");
  auto it = std::upper_bound(c.x.begin(), c.x.end(), x);
  if (it == c.x.begin()) return 1.0;  // everything stored lies above x
  std::size_t j = static_cast<std::size_t>(it - c.x.begin()) - 1;
  double n = static_cast<double>(c.n_total);
  // p_j = (#{v > x_j} + 1)/n, so the strict count above x_j is n*p_j - 1
  double above = static_cast<double>(std::llround(c.p[j] * n)) - 1.0;
  return above / n;
}

ReturnSeries pool(const std::vector<ReturnSeries>& rs) {
  if (rs.empty()) fail(errc::insufficient_data, "pool of zero series");
  for (const auto& r : rs) {
    if (r.norm != Normalization::Standardized)
      fail(errc::mismatch, "pool expects standardized series");
    if (r.dt_minutes != rs.front().dt_minutes) fail(errc::mismatch, "pool expects equal dt");
  }
  ReturnSeries out;
  out.instrument_id = "pooled(" + std::to_string(rs.size()) + ")";
  out.dt_minutes = rs.front().dt_minutes;
  std::size_t total = 0;
  for (const auto& r : rs) total += r.values.size();
  out.values.reserve(total);
  for (const auto& r : rs) out.values.insert(out.values.end(), r.values.begin(), r.values.end());
  out.norm = Normalization::Standardized;
  return out;
}

void write_ccdf_csv(const EmpiricalCCDF& c, const std::string& path) {
  std::string body = "x,p\n";
  for (std::size_t i = 0; i < c.x.size(); ++i) {
    body += fmt_double(c.x[i]);
    body += ',';
    body += fmt_double(c.p[i]);
    body += '\n';
  }
  write_text_atomic(path, body);
}

}  // namespace hftail
