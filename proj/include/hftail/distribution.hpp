#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "hftail/returns.hpp"

namespace hftail {

enum class Side { Positive, Negative };

inline const char* side_name(Side s) { return s == Side::Positive ? "positive" : "negative"; }

// Per-side tail distribution of a standardized series. x holds the distinct
// tail samples (absolute values on the negative side), p the survival
// estimate at each: p_j = #{v >= x_j} / n_total, i.e. the rank rule with ties
// sharing the smaller-p rank. Strictly increasing x, strictly decreasing p.
struct EmpiricalCCDF {
  Side side = Side::Positive;
  std::vector<double> x;
  std::vector<double> p;
  std::size_t n_total = 0;
};

// Needs a standardized series with at least 10 samples of the requested sign;
// zero returns belong to neither side.
EmpiricalCCDF ccdf(const ReturnSeries& r, Side side);

// P(X > x) by direct counting for arbitrary x.
double exceedance(const EmpiricalCCDF& c, double x);

// Concatenate standardized series with equal dt under a pooled pseudo-id.
ReturnSeries pool(const std::vector<ReturnSeries>& rs);

// CSV export, header x,p.
void write_ccdf_csv(const EmpiricalCCDF& c, const std::string& path);

}  // namespace hftail
