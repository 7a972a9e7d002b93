#include "hftail/analysis.hpp"

#include <cmath>
#include <filesystem>

#include <json.hpp>

#include "hftail/autocorr.hpp"
#include "hftail/distribution.hpp"
#include "hftail/error.hpp"
#include "hftail/io.hpp"
#include "hftail/parallel.hpp"
#include "hftail/qgauss.hpp"
#include "hftail/rng.hpp"
#include "hftail/surrogate.hpp"

namespace hftail {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

void AnalysisConfig::validate() const {
  if (inputs.empty()) fail(errc::config, "no input files");
  if (dt_grid.empty()) fail(errc::config, "dt grid is empty");
  for (int dt : dt_grid)
    if (dt <= 0) fail(errc::config, "dt grid entries must be positive");
  if (n_surrogates < 1) fail(errc::config, "need at least 1 surrogate");
  if (tail_range && !(tail_range->x_lo > 0.0 && tail_range->x_lo < tail_range->x_hi))
    fail(errc::config, "tail range must satisfy 0 < lo < hi");
  if (out_dir.empty()) fail(errc::config, "output directory not set");
  if (mfdfa_poly_order < 0) fail(errc::config, "mfdfa poly order must be >= 0");
  if (mfdfa_scale_count < 2) fail(errc::config, "mfdfa scale count must be >= 2");
  if (!(moment_step > 0.0) || !(moment_lo < moment_hi)) fail(errc::config, "bad moment grid");
  if (acf_max_lag < 1) fail(errc::config, "acf max lag must be >= 1");
  if (!(acf_z > 0.0)) fail(errc::config, "acf z must be positive");
}

namespace {

std::string stem_of(const std::string& path) {
  return fs::path(path).stem().string();
}

struct InstrumentRecord {
  std::string id, path;
  bool loaded = false;
  std::size_t n_observations = 0, n_sessions = 0;
  std::vector<std::string> step_errors;
  ordered_json per_dt = ordered_json::array();
  bool produced_anything = false;
};

}  // namespace

AnalysisOutcome run_analyze(const AnalysisConfig& config) {
  config.validate();
  fs::create_directories(config.out_dir);
  auto out_path = [&config](const std::string& name) {
    return (fs::path(config.out_dir) / name).string();
  };

  std::vector<Session> shared_sessions;
  if (!config.sessions_path.empty()) shared_sessions = load_session_csv(config.sessions_path);

  std::vector<double> moments =
      default_moments(config.moment_lo, config.moment_hi, config.moment_step);

  TailReport report;
  ordered_json qgauss_rows = ordered_json::array();
  std::vector<std::string> output_files;
  std::vector<InstrumentRecord> records;

  for (std::size_t input_idx = 0; input_idx < config.inputs.size(); ++input_idx) {
    const std::string& path = config.inputs[input_idx];
    InstrumentRecord rec;
    rec.id = stem_of(path);
    rec.path = path;

    PriceSeries prices;
    try {
      prices = load_price_csv(path, rec.id);
      if (!shared_sessions.empty()) prices.sessions = shared_sessions;
      rec.loaded = true;
      rec.n_observations = prices.timestamps.size();
      rec.n_sessions =
          (prices.sessions.empty() ? default_sessions(prices.timestamps) : prices.sessions).size();
    } catch (const Error& e) {
      rec.step_errors.push_back(std::string("load: ") + e.what());
      records.push_back(std::move(rec));
      continue;
    }

    // returns + CCDF + tail fit + q fit per (dt, side)
    std::vector<ReturnSeries> per_dt;
    for (int dt : config.dt_grid) {
      ordered_json dt_info;
      dt_info["dt_minutes"] = dt;
      try {
        ReturnSeries std_r = standardize(build_returns(prices, dt, config.boundary_policy));
        dt_info["n_returns"] = std_r.values.size();
        per_dt.push_back(std::move(std_r));
      } catch (const Error& e) {
        dt_info["error"] = e.what();
        rec.step_errors.push_back("dt=" + std::to_string(dt) + ": " + e.what());
      }
      rec.per_dt.push_back(std::move(dt_info));
    }

    const Side sides[2] = {Side::Positive, Side::Negative};
    TailReport instrument_report = tail_report(per_dt, {Side::Positive, Side::Negative},
                                               config.tail_range);
    for (auto& cell : instrument_report.cells) report.cells.push_back(std::move(cell));

    for (const ReturnSeries& r : per_dt) {
      for (Side side : sides) {
        std::string tag = rec.id + "_dt" + std::to_string(r.dt_minutes) + "_" + side_name(side);
        ordered_json row;
        row["instrument"] = rec.id;
        row["dt_minutes"] = r.dt_minutes;
        row["side"] = side_name(side);
        try {
          EmpiricalCCDF c = ccdf(r, side);
          std::string ccdf_file = "ccdf_" + tag + ".csv";
          write_ccdf_csv(c, out_path(ccdf_file));
          output_files.push_back(ccdf_file);
          rec.produced_anything = true;

          QGaussianFit fit = fit_qgaussian(c);
          row["q"] = fit.params.q;
          row["b_q"] = fit.params.b_q;
          row["sse"] = fit.sse;
          row["implied_tail_alpha"] = fit.implied_tail_alpha;
          row["boundary_flag"] = fit.boundary_flag;

          std::string model = "x,p_model,p_empirical\n";
          for (std::size_t i = 0; i < c.x.size(); ++i) {
            model += fmt_double(c.x[i]) + ',' +
                     fmt_double(2.0 * qgaussian_ccdf(c.x[i], fit.params)) + ',' +
                     fmt_double(c.p[i]) + '\n';
          }
          std::string model_file = "qgauss_model_" + tag + ".csv";
          write_text_atomic(out_path(model_file), model);
          output_files.push_back(model_file);
        } catch (const Error& e) {
          row["error"] = e.what();
          rec.step_errors.push_back(tag + ": " + e.what());
        }
        qgauss_rows.push_back(std::move(row));
      }
    }

    // minute-scale extras on the first dt of the grid
    if (!per_dt.empty() && per_dt.front().dt_minutes == config.dt_grid.front()) {
      const ReturnSeries& base = per_dt.front();
      try {
        MfdfaParams mp;
        mp.poly_order = config.mfdfa_poly_order;
        mp.scales = default_scales(base.values.size(), config.mfdfa_scale_count);
        mp.moments = moments;
        FluctuationSurface surf = mfdfa(base, mp);
        SingularitySpectrum spec = spectrum(surf);
        write_spectrum_csv(spec, out_path("spectrum_" + rec.id + ".csv"));
        write_spectrum_sidecar(spec, surf, out_path("spectrum_" + rec.id + ".json"));
        output_files.push_back("spectrum_" + rec.id + ".csv");
        output_files.push_back("spectrum_" + rec.id + ".json");
        rec.produced_anything = true;

        SurrogateEnsemble ens =
            shuffle_surrogates(base, config.n_surrogates, sub_seed(config.seed, input_idx));
        std::vector<SingularitySpectrum> specs(ens.realizations.size());
        parallel_for(ens.realizations.size(), [&](std::size_t i) {
          specs[i] = spectrum(mfdfa(ens.realizations[i], mp));
        });
        SingularitySpectrum avg = average_spectra(specs);
        write_spectrum_csv(avg, out_path("shuffled_spectrum_" + rec.id + ".csv"));
        output_files.push_back("shuffled_spectrum_" + rec.id + ".csv");
      } catch (const Error& e) {
        rec.step_errors.push_back(std::string("mfdfa: ") + e.what());
      }

      try {
        AcfResult a = acf(base, config.acf_max_lag, config.acf_z);
        write_acf_csv(a, out_path("acf_" + rec.id + ".csv"));
        write_acf_sidecar(a, out_path("acf_" + rec.id + ".json"));
        output_files.push_back("acf_" + rec.id + ".csv");
        output_files.push_back("acf_" + rec.id + ".json");
        rec.produced_anything = true;
      } catch (const Error& e) {
        rec.step_errors.push_back(std::string("acf: ") + e.what());
      }
    }

    records.push_back(std::move(rec));
  }

  write_report_csv(report, out_path("tail_report.csv"));
  write_report_json(report, out_path("tail_report.json"));
  write_text_atomic(out_path("qgauss_fits.json"), qgauss_rows.dump(2) + "\n");
  output_files.insert(output_files.end(),
                      {"tail_report.csv", "tail_report.json", "qgauss_fits.json"});

  ordered_json manifest;
  manifest["tool"] = "hftail";
  manifest["version"] = "1.0.0";
  manifest["rng"] = kRngId;
  manifest["seed"] = config.seed;
  manifest["dt_grid"] = config.dt_grid;
  manifest["boundary_policy"] = config.boundary_policy == BoundaryPolicy::DropCrossSession
                                    ? "drop-cross-session"
                                    : "keep-all";
  if (config.tail_range) {
    manifest["tail_range"] = {{"x_lo", config.tail_range->x_lo}, {"x_hi", config.tail_range->x_hi}};
  } else {
    manifest["tail_range"] = "default (2 sigma to 10 exceedances)";
  }
  manifest["n_surrogates"] = config.n_surrogates;
  manifest["mfdfa"] = {{"poly_order", config.mfdfa_poly_order},
                       {"scale_count", config.mfdfa_scale_count},
                       {"moment_lo", config.moment_lo},
                       {"moment_hi", config.moment_hi},
                       {"moment_step", config.moment_step}};
  manifest["acf"] = {{"max_lag", config.acf_max_lag}, {"z", config.acf_z}};
  if (!config.sessions_path.empty()) manifest["sessions"] = config.sessions_path;

  AnalysisOutcome outcome;
  outcome.n_inputs = static_cast<int>(config.inputs.size());
  ordered_json instruments = ordered_json::array();
  for (const auto& rec : records) {
    ordered_json j;
    j["id"] = rec.id;
    j["path"] = rec.path;
    j["status"] = rec.produced_anything ? "ok" : "failed";
    if (rec.loaded) {
      j["n_observations"] = rec.n_observations;
      j["n_sessions"] = rec.n_sessions;
      j["dt"] = rec.per_dt;
    }
    if (!rec.step_errors.empty()) j["errors"] = rec.step_errors;
    instruments.push_back(std::move(j));
    if (!rec.produced_anything) ++outcome.n_failed;
  }
  manifest["instruments"] = std::move(instruments);
  output_files.push_back("manifest.json");
  manifest["outputs"] = output_files;
  write_text_atomic(out_path("manifest.json"), manifest.dump(2) + "\n");

  return outcome;
}

}  // namespace hftail
