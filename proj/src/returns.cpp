#include "hftail/returns.hpp"

#include <cmath>
#include <limits>
#include <unordered_map>

#include "hftail/error.hpp"

namespace hftail {

void PriceSeries::validate() const {
  if (timestamps.size() != prices.size())
    fail(errc::mismatch, "price series: timestamp/price length mismatch");
  for (std::size_t i = 0; i < timestamps.size(); ++i) {
    if (!(prices[i] > 0.0)) fail(errc::domain, "price series: non-positive price");
    if (i > 0 && timestamps[i] <= timestamps[i - 1])
      fail(errc::domain, "price series: timestamps not strictly increasing");
  }
  for (std::size_t i = 0; i < sessions.size(); ++i) {
    if (sessions[i].start > sessions[i].end)
      fail(errc::domain, "price series: session start after end");
    if (i > 0 && sessions[i].start <= sessions[i - 1].end)
      fail(errc::domain, "price series: sessions overlap or out of order");
  }
}

std::int64_t PriceSeries::base_resolution() const {
  if (timestamps.size() < 2) fail(errc::insufficient_data, "price series has fewer than 2 prices");
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  for (std::size_t i = 1; i < timestamps.size(); ++i)
    best = std::min(best, timestamps[i] - timestamps[i - 1]);
  return best;
}

std::vector<Session> default_sessions(const std::vector<std::int64_t>& timestamps) {
  std::vector<Session> out;
  auto day_of = [](std::int64_t t) {
    // floor division so pre-1970 stamps land on the right day
    return t >= 0 ? t / 86400 : (t - 86399) / 86400;
  };
  for (std::int64_t t : timestamps) {
    if (!out.empty() && day_of(t) == day_of(out.back().start)) {
      out.back().end = t;
    } else {
      out.push_back(Session{t, t});
    }
  }
  return out;
}

ReturnSeries build_returns(const PriceSeries& prices, int dt_minutes, BoundaryPolicy policy) {
  prices.validate();
  if (prices.timestamps.size() < 2)
    fail(errc::insufficient_data, "price series has fewer than 2 prices");
  if (dt_minutes <= 0) fail(errc::invalid_interval, "dt must be positive");

  const std::int64_t step = static_cast<std::int64_t>(dt_minutes) * 60;
  const std::int64_t base = prices.base_resolution();
  if (step < base) fail(errc::invalid_interval, "dt below the base resolution of the data");
  if (step % base != 0) fail(errc::invalid_interval, "dt not a multiple of the base resolution");

  std::unordered_map<std::int64_t, double> price_at;
  price_at.reserve(prices.timestamps.size() * 2);
  for (std::size_t i = 0; i < prices.timestamps.size(); ++i)
    price_at.emplace(prices.timestamps[i], prices.prices[i]);

  std::vector<Session> sessions =
      prices.sessions.empty() ? default_sessions(prices.timestamps) : prices.sessions;

  ReturnSeries out;
  out.instrument_id = prices.instrument_id;
  out.dt_minutes = dt_minutes;
  for (const Session& s : sessions) {
    for (std::int64_t g = s.start; g <= s.end; g += step) {
      bool within = g + step <= s.end;
      if (!within && policy == BoundaryPolicy::DropCrossSession) break;
      auto p0 = price_at.find(g);
      auto p1 = price_at.find(g + step);
      if (p0 != price_at.end() && p1 != price_at.end())
        out.values.push_back(std::log(p1->second / p0->second));
      if (!within) break;  // one boundary-spanning candidate per session
    }
  }
  if (out.values.empty()) fail(errc::insufficient_data, "no usable return windows");
  return out;
}

ReturnSeries standardize(const ReturnSeries& r) {
  const std::size_t n = r.values.size();
  if (n < 2) fail(errc::insufficient_data, "standardize needs at least 2 values");

  double mean = 0.0;
  for (double v : r.values) mean += v;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double v : r.values) {
    double d = v - mean;
    ss += d * d;
  }
  double sd = std::sqrt(ss / static_cast<double>(n - 1));
  if (sd == 0.0) fail(errc::degenerate_series, "constant series cannot be standardized");

  ReturnSeries out;
  out.instrument_id = r.instrument_id;
  out.dt_minutes = r.dt_minutes;
  out.values.reserve(n);
  for (double v : r.values) out.values.push_back((v - mean) / sd);
  out.norm = Normalization::Standardized;
  if (r.norm == Normalization::Standardized) {
    out.mean_removed = r.mean_removed + r.std_divided * mean;
    out.std_divided = r.std_divided * sd;
  } else {
    out.mean_removed = mean;
    out.std_divided = sd;
  }
  return out;
}

}  // namespace hftail
