#include <cmath>
#include <vector>

#include <doctest.h>

#include "hftail/error.hpp"
#include "hftail/returns.hpp"

using namespace hftail;

namespace {

PriceSeries minute_series(std::vector<double> prices, std::int64_t t0 = 0) {
  PriceSeries s;
  s.instrument_id = "test";
  for (std::size_t i = 0; i < prices.size(); ++i)
    s.timestamps.push_back(t0 + static_cast<std::int64_t>(i) * 60);
  s.prices = std::move(prices);
  return s;
}

}  // namespace

TEST_SUITE("returns") {
  TEST_CASE("log returns at the base interval") {
    ReturnSeries r = build_returns(minute_series({100, 101, 100}), 1,
                                   BoundaryPolicy::DropCrossSession);
    REQUIRE(r.values.size() == 2);
    CHECK(r.values[0] == doctest::Approx(std::log(101.0 / 100.0)).epsilon(1e-15));
    CHECK(r.values[1] == doctest::Approx(std::log(100.0 / 101.0)).epsilon(1e-15));
    CHECK(r.dt_minutes == 1);
    CHECK(r.norm == Normalization::Raw);
  }

  TEST_CASE("coarser interval uses non-overlapping anchored windows") {
    ReturnSeries r =
        build_returns(minute_series({100, 101, 100, 102, 104}), 2, BoundaryPolicy::DropCrossSession);
    // windows [0,120] and [120,240]: ln(100/100), ln(104/100)
    REQUIRE(r.values.size() == 2);
    CHECK(r.values[0] == doctest::Approx(0.0));
    CHECK(r.values[1] == doctest::Approx(std::log(104.0 / 100.0)).epsilon(1e-15));
  }

  TEST_CASE("aggregation telescopes when every endpoint is observed") {
    PriceSeries s = minute_series({100, 101, 103, 102, 105, 104, 108, 107, 110});
    ReturnSeries r1 = build_returns(s, 1, BoundaryPolicy::DropCrossSession);
    ReturnSeries r4 = build_returns(s, 4, BoundaryPolicy::DropCrossSession);
    REQUIRE(r4.values.size() == 2);
    double sum0 = r1.values[0] + r1.values[1] + r1.values[2] + r1.values[3];
    double sum1 = r1.values[4] + r1.values[5] + r1.values[6] + r1.values[7];
    CHECK(r4.values[0] == doctest::Approx(sum0).epsilon(1e-14));
    CHECK(r4.values[1] == doctest::Approx(sum1).epsilon(1e-14));
  }

  TEST_CASE("missing interior observation drops only that window") {
    PriceSeries s = minute_series({100, 101, 102, 103});
    s.timestamps[2] = 3 * 60;  // gap at t=120
    s.timestamps[3] = 4 * 60;
    ReturnSeries r = build_returns(s, 1, BoundaryPolicy::DropCrossSession);
    // pairs (0,60) and (180,240) exist; (60,120) and (120,180) do not
    REQUIRE(r.values.size() == 2);
    CHECK(r.values[0] == doctest::Approx(std::log(101.0 / 100.0)));
    CHECK(r.values[1] == doctest::Approx(std::log(103.0 / 102.0)));
  }

  TEST_CASE("session boundary policy") {
    PriceSeries s;
    s.instrument_id = "two-day";
    // two prices late on day 0, two early on day 1
    s.timestamps = {86400 - 120, 86400 - 60, 86400, 86400 + 60};
    s.prices = {100, 101, 103, 104};

    ReturnSeries drop = build_returns(s, 1, BoundaryPolicy::DropCrossSession);
    REQUIRE(drop.values.size() == 2);
    CHECK(drop.values[0] == doctest::Approx(std::log(101.0 / 100.0)));
    CHECK(drop.values[1] == doctest::Approx(std::log(104.0 / 103.0)));

    ReturnSeries keep = build_returns(s, 1, BoundaryPolicy::KeepAll);
    REQUIRE(keep.values.size() == 3);
    CHECK(keep.values[1] == doctest::Approx(std::log(103.0 / 101.0)));
  }

  TEST_CASE("explicit sessions override the per-day split") {
    PriceSeries s = minute_series({100, 101, 102, 103, 104, 105});
    s.sessions = {Session{0, 120}, Session{180, 300}};
    ReturnSeries r = build_returns(s, 1, BoundaryPolicy::DropCrossSession);
    // within-session pairs only: (0,60),(60,120) and (180,240),(240,300)
    REQUIRE(r.values.size() == 4);
    CHECK(r.values[2] == doctest::Approx(std::log(104.0 / 103.0)));
  }

  TEST_CASE("interval validation") {
    PriceSeries s = minute_series({100, 101, 102});
    CHECK_THROWS_AS(build_returns(s, 0, BoundaryPolicy::DropCrossSession), Error);
    bool caught = false;
    try {
      build_returns(s, -3, BoundaryPolicy::DropCrossSession);
    } catch (const Error& e) {
      caught = true;
      CHECK(e.kind() == errc::invalid_interval);
    }
    CHECK(caught);

    PriceSeries coarse;
    coarse.instrument_id = "coarse";
    coarse.timestamps = {0, 120, 240};
    coarse.prices = {1, 2, 3};
    CHECK_THROWS_AS(build_returns(coarse, 1, BoundaryPolicy::DropCrossSession), Error);
    CHECK_THROWS_AS(build_returns(coarse, 3, BoundaryPolicy::DropCrossSession), Error);
    CHECK_NOTHROW(build_returns(coarse, 2, BoundaryPolicy::DropCrossSession));
  }

  TEST_CASE("input validation") {
    PriceSeries one = minute_series({100});
    CHECK_THROWS_AS(build_returns(one, 1, BoundaryPolicy::DropCrossSession), Error);

    PriceSeries bad = minute_series({100, -1, 102});
    CHECK_THROWS_AS(build_returns(bad, 1, BoundaryPolicy::DropCrossSession), Error);

    PriceSeries unsorted = minute_series({100, 101, 102});
    unsorted.timestamps[2] = unsorted.timestamps[1];
    CHECK_THROWS_AS(unsorted.validate(), Error);
  }

  TEST_CASE("default sessions split on UTC days") {
    std::vector<std::int64_t> ts{100, 200, 86400 + 5, 86400 + 65, 3 * 86400};
    auto sessions = default_sessions(ts);
    REQUIRE(sessions.size() == 3);
    CHECK(sessions[0].start == 100);
    CHECK(sessions[0].end == 200);
    CHECK(sessions[1].start == 86400 + 5);
    CHECK(sessions[1].end == 86400 + 65);
    CHECK(sessions[2].start == sessions[2].end);
  }

  TEST_CASE("standardize centers and scales") {
    ReturnSeries r;
    r.instrument_id = "s";
    r.values = {1, 2, 3};
    ReturnSeries z = standardize(r);
    CHECK(z.values[0] == doctest::Approx(-1.0));
    CHECK(z.values[1] == doctest::Approx(0.0));
    CHECK(z.values[2] == doctest::Approx(1.0));
    CHECK(z.norm == Normalization::Standardized);
    CHECK(z.mean_removed == doctest::Approx(2.0));
    CHECK(z.std_divided == doctest::Approx(1.0));
  }

  TEST_CASE("standardize provenance composes") {
    ReturnSeries r;
    r.values = {2, 4, 6, 12};
    ReturnSeries z = standardize(standardize(r));
    // original = value * std_divided + mean_removed must still hold
    double mean = (2 + 4 + 6 + 12) / 4.0;
    CHECK(z.mean_removed == doctest::Approx(mean).epsilon(1e-12));
    for (std::size_t i = 0; i < z.values.size(); ++i)
      CHECK(z.values[i] * z.std_divided + z.mean_removed ==
            doctest::Approx(r.values[i]).epsilon(1e-12));
  }

  TEST_CASE("standardize rejects degenerate input") {
    ReturnSeries flat;
    flat.values = {5, 5, 5, 5};
    bool caught = false;
    try {
      standardize(flat);
    } catch (const Error& e) {
      caught = true;
      CHECK(e.kind() == errc::degenerate_series);
    }
    CHECK(caught);

    ReturnSeries tiny;
    tiny.values = {1};
    CHECK_THROWS_AS(standardize(tiny), Error);
  }
}
