#pragma once

#include <string>
#include <vector>

#include "hftail/returns.hpp"

namespace hftail {

struct AcfResult {
  std::vector<double> rho;   // index = lag, rho[0] = 1
  double noise_level = 0.0;  // z / sqrt(N)
  double z = 1.96;
  int decay_lag = -1;        // first lag with |rho| under the floor; -1 if none
};

// Biased (1/N) sample autocorrelation of the mean-removed series. Needs
// length > 10 * max_lag.
AcfResult acf(const ReturnSeries& r, int max_lag, double z = 1.96);

void write_acf_csv(const AcfResult& a, const std::string& path);
void write_acf_sidecar(const AcfResult& a, const std::string& path);

}  // namespace hftail
