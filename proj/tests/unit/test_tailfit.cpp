#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include <doctest.h>

#include "hftail/error.hpp"
#include "hftail/rng.hpp"
#include "hftail/surrogate.hpp"
#include "hftail/tailfit.hpp"

using namespace hftail;

namespace {

EmpiricalCCDF exact_power_law(double alpha, std::size_t n_total) {
  EmpiricalCCDF c;
  c.n_total = n_total;
  for (double x = 2.0; x <= 10.0 + 1e-9; x += 0.5) {
    c.x.push_back(x);
    c.p.push_back(std::pow(x, -alpha));
  }
  return c;
}

ReturnSeries pareto_series(double alpha, std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  ReturnSeries r;
  r.instrument_id = "pareto";
  r.norm = Normalization::Standardized;  // already in the units the fit expects
  r.values.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    r.values.push_back(std::pow(1.0 - rng.uniform(), -1.0 / alpha));
  return r;
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_SUITE("tailfit") {
  TEST_CASE("recovers an exact power law") {
    EmpiricalCCDF c = exact_power_law(3.0, 10000000);
    TailFitResult fit = fit_tail(c, FitRange{1.9, 10.1});
    CHECK(fit.alpha == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(fit.std_error <= 1e-10);
    CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fit.x_lo == doctest::Approx(2.0));
    CHECK(fit.x_hi == doctest::Approx(10.0));
    CHECK(fit.n_points == 17);
    CHECK_FALSE(fit.has_ci);
  }

  TEST_CASE("default window starts at 2 sigma and stops at 10 exceedances") {
    EmpiricalCCDF c;
    c.n_total = 1000;
    c.x = {0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 4.0, 5.0, 6.0, 8.0, 12.0};
    c.p = {0.9, 0.6, 0.3, 0.2, 0.15, 0.1, 0.05, 0.03, 0.02, 0.012, 0.005};
    TailFitResult fit = fit_tail(c);
    CHECK(fit.x_lo == doctest::Approx(2.0));
    CHECK(fit.x_hi == doctest::Approx(8.0));  // 12 exceedances; x=12 has only 5
    CHECK(fit.n_points == 7);
  }

  TEST_CASE("range validation and insufficient data") {
    EmpiricalCCDF c = exact_power_law(3.0, 10000000);
    CHECK_THROWS_AS(fit_tail(c, FitRange{0.0, 5.0}), Error);
    CHECK_THROWS_AS(fit_tail(c, FitRange{-1.0, 5.0}), Error);
    CHECK_THROWS_AS(fit_tail(c, FitRange{5.0, 5.0}), Error);
    CHECK_THROWS_AS(fit_tail(c, FitRange{4.0, 2.0}), Error);
    // window holds fewer than 5 points
    CHECK_THROWS_AS(fit_tail(c, FitRange{9.1, 20.0}), Error);

    EmpiricalCCDF shallow;
    shallow.n_total = 50;
    shallow.x = {0.2, 0.4, 0.6, 0.8, 1.0, 1.2};
    shallow.p = {1.0, 0.9, 0.7, 0.6, 0.5, 0.4};
    bool caught = false;
    try {
      fit_tail(shallow);
    } catch (const Error& e) {
      caught = true;
      CHECK(e.kind() == errc::insufficient_range);
    }
    CHECK(caught);
  }

  TEST_CASE("log binning agrees with the plain fit on sampled data") {
    ReturnSeries r = pareto_series(3.0, 1 << 16, 31);
    EmpiricalCCDF c = ccdf(r, Side::Positive);
    TailFitResult plain = fit_tail(c, FitRange{2.0, 20.0});
    TailFitResult binned = fit_tail(c, FitRange{2.0, 20.0}, true);
    CHECK(plain.alpha == doctest::Approx(3.0).epsilon(0.1));
    CHECK(binned.alpha == doctest::Approx(3.0).epsilon(0.1));
    CHECK(binned.n_points <= 30);
    CHECK(binned.n_points >= 5);
  }

  TEST_CASE("agrees with a Hill estimate on heavy-tailed data") {
    ReturnSeries raw = gen_student_t(1 << 17, 3.0, 55);
    ReturnSeries r = standardize(raw);
    EmpiricalCCDF c = ccdf(r, Side::Positive);
    TailFitResult fit = fit_tail(c);

    std::vector<double> mags;
    for (double v : r.values)
      if (v > 0.0) mags.push_back(v);
    std::sort(mags.begin(), mags.end(), std::greater<double>());
    const std::size_t k = 1000;
    double acc = 0.0;
    for (std::size_t i = 0; i < k; ++i) acc += std::log(mags[i] / mags[k]);
    double hill = static_cast<double>(k) / acc;

    CHECK(std::abs(fit.alpha - hill) < 0.5);
    CHECK(fit.alpha == doctest::Approx(3.0).epsilon(0.15));
  }

  TEST_CASE("bootstrap interval brackets the true exponent") {
    ReturnSeries r = pareto_series(3.0, 1 << 18, 7);
    TailFitResult fit = bootstrap_tail(r, Side::Positive, FitRange{2.0, 20.0}, 200, 99);
    CHECK(fit.has_ci);
    CHECK(fit.ci_lo < 3.0);
    CHECK(fit.ci_hi > 3.0);
    CHECK(fit.ci_hi - fit.ci_lo < 0.1);
    CHECK(fit.ci_lo < fit.alpha);
    CHECK(fit.ci_hi > fit.alpha);

    // bitwise reproducible for a fixed seed
    TailFitResult again = bootstrap_tail(r, Side::Positive, FitRange{2.0, 20.0}, 200, 99);
    CHECK(again.ci_lo == fit.ci_lo);
    CHECK(again.ci_hi == fit.ci_hi);

    CHECK_THROWS_AS(bootstrap_tail(r, Side::Positive, std::nullopt, 50, 99), Error);
  }

  TEST_CASE("bootstrap interval covers a heavy-tailed target") {
    ReturnSeries r = standardize(gen_student_t(1 << 18, 3.0, 801));
    TailFitResult fit = bootstrap_tail(r, Side::Positive, FitRange{4.0, 12.0}, 200, 17);
    CHECK(fit.has_ci);
    CHECK(fit.ci_lo < 3.0);
    CHECK(fit.ci_hi > 3.0);
  }

  TEST_CASE("report collects per-cell results and failures") {
    ReturnSeries good = standardize(gen_student_t(20000, 3.0, 5));
    good.instrument_id = "good";
    ReturnSeries bad;  // raw series: every cell fails
    bad.instrument_id = "bad";
    bad.dt_minutes = 4;
    bad.values = {1, 2, 3};

    TailReport report = tail_report({good, bad}, {Side::Positive, Side::Negative});
    REQUIRE(report.cells.size() == 4);
    CHECK(report.cells[0].instrument == "good");
    CHECK(report.cells[0].side == Side::Positive);
    CHECK(report.cells[0].fit.has_value());
    CHECK(report.cells[1].side == Side::Negative);
    CHECK(report.cells[2].instrument == "bad");
    CHECK_FALSE(report.cells[2].fit.has_value());
    CHECK(!report.cells[2].error.empty());

    write_report_csv(report, "unit_tmp/report.csv");
    auto lines = read_lines("unit_tmp/report.csv");
    REQUIRE(lines.size() == 5);
    CHECK(lines[0] == "instrument,dt_minutes,side,alpha,stderr,ci_lo,ci_hi,x_lo,x_hi,n_points");
    CHECK(lines[1].rfind("good,1,positive,", 0) == 0);
    CHECK(lines[3] == "bad,4,positive,,,,,,,");
    for (const auto& line : lines)
      CHECK(std::count(line.begin(), line.end(), ',') == 9);

    write_report_json(report, "unit_tmp/report.json");
    auto jlines = read_lines("unit_tmp/report.json");
    CHECK(!jlines.empty());
  }
}
