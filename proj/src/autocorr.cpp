#include "hftail/autocorr.hpp"

#include <cmath>

#include <json.hpp>

#include "hftail/error.hpp"
#include "hftail/io.hpp"

namespace hftail {

AcfResult acf(const ReturnSeries& r, int max_lag, double z) {
  const std::size_t n = r.values.size();
  if (max_lag < 0) fail(errc::domain, "max_lag must be non-negative");
  if (!(z > 0.0)) fail(errc::domain, "z must be positive");
  if (n <= 10 * static_cast<std::size_t>(max_lag))
    fail(errc::insufficient_data, "series shorter than 10*max_lag");

  double mean = 0.0;
  for (double v : r.values) mean += v;
  mean /= static_cast<double>(n);

  double c0 = 0.0;
  for (double v : r.values) {
    double d = v - mean;
    c0 += d * d;
  }
  if (c0 == 0.0) fail(errc::degenerate_series, "constant series has no autocorrelation");

  AcfResult out;
  out.z = z;
  out.noise_level = z / std::sqrt(static_cast<double>(n));
  out.rho.resize(max_lag + 1);
  out.rho[0] = 1.0;
  for (int k = 1; k <= max_lag; ++k) {
    double ck = 0.0;
    for (std::size_t i = 0; i + k < n; ++i)
      ck += (r.values[i] - mean) * (r.values[i + k] - mean);
    out.rho[k] = ck / c0;
  }
  for (int k = 1; k <= max_lag; ++k) {
    if (std::abs(out.rho[k]) < out.noise_level) {
      out.decay_lag = k;
      break;
    }
  }
  return out;
}

void write_acf_csv(const AcfResult& a, const std::string& path) {
  std::string body = "lag,rho\n";
  for (std::size_t k = 0; k < a.rho.size(); ++k) {
    body += std::to_string(k);
    body += ',';
    body += fmt_double(a.rho[k]);
    body += '\n';
  }
  write_text_atomic(path, body);
}

void write_acf_sidecar(const AcfResult& a, const std::string& path) {
  nlohmann::ordered_json j;
  j["noise_level"] = a.noise_level;
  j["decay_lag"] = a.decay_lag;
  j["z"] = a.z;
  j["estimator"] = "biased-1/N";
  write_text_atomic(path, j.dump(2) + "\n");
}

}  // namespace hftail
