#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "hftail/returns.hpp"

namespace hftail {

struct MfdfaParams {
  std::vector<int> scales;       // window sizes, strictly increasing
  std::vector<double> moments;   // moment orders q_m (0 handled by log-average)
  int poly_order = 2;            // detrending polynomial order
};

// 16 log-spaced scales from 16 up to n/4.
std::vector<int> default_scales(std::size_t n, int count = 16);
// -4 to +4 in steps of 0.25.
std::vector<double> default_moments(double lo = -4.0, double hi = 4.0, double step = 0.25);

// Fluctuation functions F_{q_m}(s) over all (moment, scale) cells. NaN marks
// a cell with fewer than 4 positive-variance windows; flags counts windows
// excluded for zero variance.
struct FluctuationSurface {
  std::vector<int> scales;
  std::vector<double> moments;
  std::vector<std::vector<double>> fq;   // [moment][scale]
  std::vector<std::vector<int>> flags;   // excluded window count per cell
  int poly_order = 2;
};

FluctuationSurface mfdfa(const ReturnSeries& r, const MfdfaParams& params);

struct SpectrumPoint {
  double alpha_h = 0.0;  // Holder exponent
  double f_alpha = 0.0;
};

struct SingularitySpectrum {
  std::vector<SpectrumPoint> points;             // ordered by alpha_h
  double width = 0.0;                            // alpha_h span
  std::vector<std::pair<double, double>> h_of_q; // (q_m, generalized Hurst h)
  int trimmed = 0;                               // points dropped for f > 1.05
};

// Legendre transform of tau(q_m) = q_m h(q_m) - 1 via central differences on
// the longest consecutive run of defined h values (needs >= 5).
SingularitySpectrum spectrum(const FluctuationSurface& f);

// CSV alpha_h,f_alpha plus a JSON sidecar with the parameters that made it.
void write_spectrum_csv(const SingularitySpectrum& s, const std::string& path);
void write_spectrum_sidecar(const SingularitySpectrum& s, const FluctuationSurface& f,
                            const std::string& path);

}  // namespace hftail
