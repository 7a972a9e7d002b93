#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hftail/mfdfa.hpp"
#include "hftail/returns.hpp"
#include "hftail/tailfit.hpp"

namespace hftail {

struct AnalysisConfig {
  std::vector<std::string> inputs;
  std::string sessions_path;                 // optional shared sessions CSV
  std::vector<int> dt_grid{1, 4, 16, 32, 60, 120};
  std::optional<FitRange> tail_range;
  int n_surrogates = 10;
  std::uint64_t seed = 42;
  std::string out_dir = "out";
  BoundaryPolicy boundary_policy = BoundaryPolicy::DropCrossSession;
  int mfdfa_poly_order = 2;
  int mfdfa_scale_count = 16;
  double moment_lo = -4.0, moment_hi = 4.0, moment_step = 0.25;
  int acf_max_lag = 50;
  double acf_z = 1.96;

  void validate() const;  // throws errc::config
};

struct AnalysisOutcome {
  int n_inputs = 0;
  int n_failed = 0;  // inputs that produced nothing
  bool all_failed() const { return n_inputs > 0 && n_failed == n_inputs; }
};

// Full pipeline over every input: returns at each dt, per-side CCDF files,
// tail report, q-Gaussian fits, MF-DFA spectrum with a shuffled-ensemble
// counterpart, ACF, and a manifest capturing every parameter and seed.
// Per-input failures are recorded in the manifest, not thrown.
AnalysisOutcome run_analyze(const AnalysisConfig& config);

}  // namespace hftail
