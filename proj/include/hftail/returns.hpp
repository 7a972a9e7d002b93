#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hftail {

struct Session {
  std::int64_t start = 0;  // epoch seconds, inclusive
  std::int64_t end = 0;    // epoch seconds, inclusive
};

struct PriceSeries {
  std::string instrument_id;
  std::vector<std::int64_t> timestamps;  // strictly increasing, epoch seconds
  std::vector<double> prices;            // > 0
  std::vector<Session> sessions;         // ordered, disjoint; empty = derive per UTC day

  void validate() const;
  std::int64_t base_resolution() const;  // smallest gap between observations
};

enum class Normalization { Raw, Standardized };

struct ReturnSeries {
  std::string instrument_id;
  int dt_minutes = 1;
  std::vector<double> values;
  Normalization norm = Normalization::Raw;
  // affine provenance when standardized: original = value * std_divided + mean_removed
  double mean_removed = 0.0;
  double std_divided = 1.0;
};

enum class BoundaryPolicy { DropCrossSession, KeepAll };

// One session per UTC calendar day, spanning that day's observations.
std::vector<Session> default_sessions(const std::vector<std::int64_t>& timestamps);

// Log-returns ln p(t+dt)/p(t) on non-overlapping windows anchored at each
// session start. A window is emitted only when both endpoints were observed.
ReturnSeries build_returns(const PriceSeries& prices, int dt_minutes, BoundaryPolicy policy);

// Zero-mean unit-variance copy (n-1 denominator); records what was removed.
ReturnSeries standardize(const ReturnSeries& r);

}  // namespace hftail
