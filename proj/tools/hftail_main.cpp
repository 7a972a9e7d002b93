// Command-line front end: analyze | synth | mfdfa | acf | tail.
// Exit codes: 0 success, 1 total failure, 2 configuration error.

#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hftail/analysis.hpp"
#include "hftail/autocorr.hpp"
#include "hftail/distribution.hpp"
#include "hftail/error.hpp"
#include "hftail/io.hpp"
#include "hftail/mfdfa.hpp"
#include "hftail/qgauss.hpp"
#include "hftail/rng.hpp"
#include "hftail/surrogate.hpp"
#include "hftail/tailfit.hpp"

namespace {

using hftail::errc;

std::optional<hftail::FitRange> parse_range(const std::string& text) {
  if (text.empty()) return std::nullopt;
  auto colon = text.find(':');
  if (colon == std::string::npos) hftail::fail(errc::config, "tail range must be LO:HI");
  try {
    hftail::FitRange r{std::stod(text.substr(0, colon)), std::stod(text.substr(colon + 1))};
    return r;
  } catch (const std::exception&) {
    hftail::fail(errc::config, "tail range must be LO:HI with numeric bounds");
  }
}

hftail::ReturnSeries load_standardized(const std::string& input, const std::string& sessions,
                                       int dt) {
  hftail::PriceSeries prices =
      hftail::load_price_csv(input, std::filesystem::path(input).stem().string());
  if (!sessions.empty()) prices.sessions = hftail::load_session_csv(sessions);
  return hftail::standardize(
      hftail::build_returns(prices, dt, hftail::BoundaryPolicy::DropCrossSession));
}

void emit(const nlohmann::ordered_json& j, const std::string& out) {
  if (out.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    hftail::write_text_atomic(out, j.dump(2) + "\n");
  }
}

int run_synth(const std::string& kind, std::size_t n, double nu, double q, double phi,
              int levels, double w1, std::uint64_t seed, const std::string& out) {
  hftail::ReturnSeries r;
  if (kind == "gaussian") {
    r = hftail::gen_gaussian(n, seed);
  } else if (kind == "student-t") {
    r = hftail::gen_student_t(n, nu, seed);
  } else if (kind == "qgaussian") {
    r = hftail::gen_qgaussian(n, q, seed);
  } else if (kind == "ar1") {
    r = hftail::gen_ar1(n, phi, seed);
  } else if (kind == "cascade") {
    r = hftail::gen_cascade(levels, w1, seed);
  } else {
    hftail::fail(errc::config, "unknown generator kind: " + kind);
  }

  // encode as a price path: p_{k+1} = p_k exp(1e-4 r_k), one observation per
  // minute from a fixed origin; standardization cancels the scale downstream
  std::vector<std::int64_t> ts;
  std::vector<double> prices;
  ts.reserve(r.values.size() + 1);
  prices.reserve(r.values.size() + 1);
  std::int64_t t = 1000000000;
  double p = 100.0;
  ts.push_back(t);
  prices.push_back(p);
  for (double v : r.values) {
    t += 60;
    p *= std::exp(1e-4 * v);
    ts.push_back(t);
    prices.push_back(p);
  }
  hftail::write_price_csv(out, ts, prices);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tail statistics toolkit for high-frequency return series"};
  app.require_subcommand(1);

  // ----- analyze -----
  auto* analyze = app.add_subcommand("analyze", "Run the full pipeline over price CSV inputs");
  hftail::AnalysisConfig config;
  std::string range_text;
  analyze->add_option("--input", config.inputs, "Price CSV file(s)")->required();
  analyze->add_option("--sessions", config.sessions_path, "Sessions CSV shared by all inputs");
  analyze->add_option("--dt-grid", config.dt_grid, "Sampling intervals in minutes")
      ->delimiter(',');
  analyze->add_option("--seed", config.seed, "Master seed");
  analyze->add_option("--surrogates", config.n_surrogates, "Shuffled realizations per input");
  analyze->add_option("--tail-range", range_text, "Fit range LO:HI in sigma units");
  analyze->add_option("--out-dir", config.out_dir, "Output directory");
  analyze->add_flag_callback(
      "--keep-all", [&config] { config.boundary_policy = hftail::BoundaryPolicy::KeepAll; },
      "Keep returns that span session boundaries");
  analyze->add_option("--mfdfa-order", config.mfdfa_poly_order, "Detrending polynomial order");
  analyze->add_option("--mfdfa-scales", config.mfdfa_scale_count, "Number of scales");
  analyze->add_option("--moment-lo", config.moment_lo, "Lowest moment order");
  analyze->add_option("--moment-hi", config.moment_hi, "Highest moment order");
  analyze->add_option("--moment-step", config.moment_step, "Moment grid step");
  analyze->add_option("--acf-max-lag", config.acf_max_lag, "Largest autocorrelation lag");
  analyze->add_option("--acf-z", config.acf_z, "Noise floor z value");
  app.set_config("--config", "", "Flat key=value config file; flags override");

  // ----- synth -----
  auto* synth = app.add_subcommand("synth", "Generate a synthetic price CSV");
  std::string kind = "gaussian", synth_out = "synthetic.csv";
  std::size_t synth_n = 100000;
  double nu = 3.0, synth_q = 1.5, phi = 0.5, w1 = 0.6;
  int levels = 16;
  std::uint64_t synth_seed = 42;
  synth->add_option("--kind", kind, "gaussian | student-t | qgaussian | ar1 | cascade");
  synth->add_option("--n", synth_n, "Number of increments");
  synth->add_option("--nu", nu, "Student-t degrees of freedom");
  synth->add_option("--q", synth_q, "Entropic index for the qgaussian kind");
  synth->add_option("--phi", phi, "AR(1) coefficient");
  synth->add_option("--levels", levels, "Cascade depth (2^levels values)");
  synth->add_option("--w1", w1, "Cascade weight");
  synth->add_option("--seed", synth_seed, "Seed");
  synth->add_option("--out", synth_out, "Output price CSV path");

  // ----- tail -----
  auto* tail = app.add_subcommand("tail", "Tail exponent for one input and dt");
  std::string tail_input, tail_sessions, tail_side = "positive", tail_range_text, tail_out;
  int tail_dt = 1, bootstrap_reps = 0;
  std::uint64_t tail_seed = 42;
  tail->add_option("--input", tail_input, "Price CSV")->required();
  tail->add_option("--sessions", tail_sessions, "Sessions CSV");
  tail->add_option("--dt", tail_dt, "Sampling interval in minutes");
  tail->add_option("--side", tail_side, "positive | negative");
  tail->add_option("--range", tail_range_text, "Fit range LO:HI");
  tail->add_option("--bootstrap", bootstrap_reps, "Bootstrap replicas (0 = none)");
  tail->add_option("--seed", tail_seed, "Bootstrap seed");
  tail->add_option("--out", tail_out, "Write JSON here instead of stdout");

  // ----- mfdfa -----
  auto* mf = app.add_subcommand("mfdfa", "Singularity spectrum for one input and dt");
  std::string mf_input, mf_sessions, mf_prefix = "mfdfa";
  int mf_dt = 1, mf_order = 2, mf_scales = 16;
  double mf_lo = -4.0, mf_hi = 4.0, mf_step = 0.25;
  mf->add_option("--input", mf_input, "Price CSV")->required();
  mf->add_option("--sessions", mf_sessions, "Sessions CSV");
  mf->add_option("--dt", mf_dt, "Sampling interval in minutes");
  mf->add_option("--order", mf_order, "Detrending polynomial order");
  mf->add_option("--scales", mf_scales, "Number of scales");
  mf->add_option("--moment-lo", mf_lo, "Lowest moment order");
  mf->add_option("--moment-hi", mf_hi, "Highest moment order");
  mf->add_option("--moment-step", mf_step, "Moment grid step");
  mf->add_option("--out-prefix", mf_prefix, "Prefix for <prefix>.csv and <prefix>.json");

  // ----- acf -----
  auto* ac = app.add_subcommand("acf", "Autocorrelation for one input and dt");
  std::string ac_input, ac_sessions, ac_prefix = "acf";
  int ac_dt = 1, ac_lag = 50;
  double ac_z = 1.96;
  ac->add_option("--input", ac_input, "Price CSV")->required();
  ac->add_option("--sessions", ac_sessions, "Sessions CSV");
  ac->add_option("--dt", ac_dt, "Sampling interval in minutes");
  ac->add_option("--max-lag", ac_lag, "Largest lag");
  ac->add_option("--z", ac_z, "Noise floor z value");
  ac->add_option("--out-prefix", ac_prefix, "Prefix for <prefix>.csv and <prefix>.json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (analyze->parsed()) {
      config.tail_range = parse_range(range_text);
      config.validate();
      hftail::AnalysisOutcome outcome = hftail::run_analyze(config);
      if (outcome.all_failed()) {
        std::cerr << "all inputs failed\n";
        return 1;
      }
      return 0;
    }
    if (synth->parsed())
      return run_synth(kind, synth_n, nu, synth_q, phi, levels, w1, synth_seed, synth_out);
    if (tail->parsed()) {
      if (tail_side != "positive" && tail_side != "negative")
        hftail::fail(errc::config, "side must be positive or negative");
      hftail::Side side =
          tail_side == "positive" ? hftail::Side::Positive : hftail::Side::Negative;
      hftail::ReturnSeries r = load_standardized(tail_input, tail_sessions, tail_dt);
      auto range = parse_range(tail_range_text);
      hftail::TailFitResult fit =
          bootstrap_reps > 0 ? hftail::bootstrap_tail(r, side, range, bootstrap_reps, tail_seed)
                             : hftail::fit_tail(hftail::ccdf(r, side), range);
      nlohmann::ordered_json j;
      j["instrument"] = r.instrument_id;
      j["dt_minutes"] = tail_dt;
      j["side"] = tail_side;
      j["alpha"] = fit.alpha;
      j["stderr"] = fit.std_error;
      j["r_squared"] = fit.r_squared;
      if (fit.has_ci) {
        j["ci_lo"] = fit.ci_lo;
        j["ci_hi"] = fit.ci_hi;
        j["rng"] = hftail::kRngId;
        j["seed"] = tail_seed;
      }
      j["x_lo"] = fit.x_lo;
      j["x_hi"] = fit.x_hi;
      j["n_points"] = fit.n_points;
      emit(j, tail_out);
      return 0;
    }
    if (mf->parsed()) {
      hftail::ReturnSeries r = load_standardized(mf_input, mf_sessions, mf_dt);
      hftail::MfdfaParams params;
      params.poly_order = mf_order;
      params.scales = hftail::default_scales(r.values.size(), mf_scales);
      params.moments = hftail::default_moments(mf_lo, mf_hi, mf_step);
      hftail::FluctuationSurface surf = hftail::mfdfa(r, params);
      hftail::SingularitySpectrum spec = hftail::spectrum(surf);
      hftail::write_spectrum_csv(spec, mf_prefix + ".csv");
      hftail::write_spectrum_sidecar(spec, surf, mf_prefix + ".json");
      return 0;
    }
    if (ac->parsed()) {
      hftail::ReturnSeries r = load_standardized(ac_input, ac_sessions, ac_dt);
      hftail::AcfResult a = hftail::acf(r, ac_lag, ac_z);
      hftail::write_acf_csv(a, ac_prefix + ".csv");
      hftail::write_acf_sidecar(a, ac_prefix + ".json");
      return 0;
    }
  } catch (const hftail::Error& e) {
    std::cerr << e.what() << "\n";
    return e.kind() == errc::config ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  return 2;
}
