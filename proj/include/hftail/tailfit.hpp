#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hftail/distribution.hpp"

namespace hftail {

struct FitRange {
  double x_lo = 0.0;
  double x_hi = 0.0;
};

struct TailFitResult {
  double alpha = 0.0;      // negative log-log slope of the tail
  double std_error = 0.0;  // OLS slope standard error
  double r_squared = 0.0;
  double x_lo = 0.0;       // actual fitted range endpoints
  double x_hi = 0.0;
  std::size_t n_points = 0;
  bool has_ci = false;     // bootstrap interval, when requested
  double ci_lo = 0.0;
  double ci_hi = 0.0;
};

// OLS of log p on log x over the selected points. Without an explicit range:
// x_lo = 2 (sigma units), x_hi = the largest x with at least 10 exceedances.
// log_binning collapses the points into 30 geometric bins first.
TailFitResult fit_tail(const EmpiricalCCDF& c, std::optional<FitRange> range = std::nullopt,
                       bool log_binning = false);

// Resample the series with replacement n_rep times and refit; the point
// estimate comes from the original sample, the 95% interval from the replica
// alphas. Deterministic given seed and independent of worker count.
TailFitResult bootstrap_tail(const ReturnSeries& r, Side side, std::optional<FitRange> range,
                             int n_rep, std::uint64_t seed);

struct TailCell {
  std::string instrument;
  int dt_minutes = 0;
  Side side = Side::Positive;
  std::optional<TailFitResult> fit;  // empty on per-cell failure
  std::string error;
};

struct TailReport {
  std::vector<TailCell> cells;
};

// One fit per (series, side); failures land in the cell, not on the caller.
TailReport tail_report(const std::vector<ReturnSeries>& series, const std::vector<Side>& sides,
                       std::optional<FitRange> range = std::nullopt);

void write_report_csv(const TailReport& report, const std::string& path);
void write_report_json(const TailReport& report, const std::string& path);

}  // namespace hftail
