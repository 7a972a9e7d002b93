#include <cmath>
#include <limits>
#include <vector>

#include <doctest.h>

#include "hftail/error.hpp"
#include "hftail/numerics.hpp"

using namespace hftail;

TEST_SUITE("numerics") {
  TEST_CASE("log_gamma matches reference values") {
    // reference digits from a 30-digit arbitrary precision evaluation
    CHECK(log_gamma(10.3) == doctest::Approx(13.4820367861383569706).epsilon(1e-13));
    CHECK(log_gamma(0.5) == doctest::Approx(0.5723649429247000871).epsilon(1e-13));
    CHECK(log_gamma(0.1) == doctest::Approx(2.2527126517342059599).epsilon(1e-13));
    CHECK(log_gamma(5.0) == doctest::Approx(3.1780538303479456196).epsilon(1e-13));
    CHECK(log_gamma(1.0) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(log_gamma(2.0) == doctest::Approx(0.0).epsilon(1e-14));
  }

  TEST_CASE("log_gamma recurrence holds across the reflection split") {
    for (double x : {0.05, 0.2, 0.4, 0.49}) {
      double lhs = log_gamma(x + 1.0);
      double rhs = log_gamma(x) + std::log(x);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
  }

  TEST_CASE("pochhammer") {
    CHECK(pochhammer(3.0, 0) == 1.0);
    CHECK(pochhammer(3.0, 4) == doctest::Approx(3.0 * 4.0 * 5.0 * 6.0));
    CHECK(pochhammer(0.5, 3) == doctest::Approx(0.5 * 1.5 * 2.5));
  }

  TEST_CASE("ols_slope recovers an exact line") {
    std::vector<double> x{1, 2, 3, 4, 5, 6}, y;
    for (double v : x) y.push_back(3.0 * v + 1.0);
    OlsFit fit = ols_slope(x, y);
    CHECK(fit.slope == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(fit.intercept == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fit.std_error <= 1e-10);
  }

  TEST_CASE("ols_slope rejects degenerate inputs") {
    std::vector<double> two{1, 2}, same{1, 1, 1}, y{1, 2, 3};
    CHECK_THROWS_AS(ols_slope(two, two), Error);
    CHECK_THROWS_AS(ols_slope(same, y), Error);
  }

  TEST_CASE("ols_slope standard error on noisy data") {
    // symmetric residuals +e,-e around slope 2: known closed-form SE
    std::vector<double> x{0, 1, 2, 3}, y{0.1, 1.9, 4.1, 5.9};
    OlsFit fit = ols_slope(x, y);
    CHECK(fit.slope == doctest::Approx(1.96).epsilon(1e-12));
    CHECK(fit.std_error > 0.0);
    CHECK(fit.r_squared > 0.99);
  }

  TEST_CASE("integrate on finite intervals") {
    auto sq = [](double x) { return x * x; };
    QuadratureResult r = integrate(sq, 0.0, 1.0, 1e-12);
    CHECK(r.value == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
    CHECK(integrate(sq, 1.0, 1.0, 1e-12).value == 0.0);

    // integrable endpoint singularity
    QuadratureResult s = integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, 1e-10);
    CHECK(s.value == doctest::Approx(2.0).epsilon(1e-8));
  }

  TEST_CASE("integrate on infinite intervals") {
    QuadratureResult a = integrate([](double x) { return std::exp(-x); }, 0.0,
                                   std::numeric_limits<double>::infinity(), 1e-12);
    CHECK(a.value == doctest::Approx(1.0).epsilon(1e-11));

    QuadratureResult b =
        integrate([](double x) { return std::exp(-x * x); },
                  -std::numeric_limits<double>::infinity(),
                  std::numeric_limits<double>::infinity(), 1e-12);
    CHECK(b.value == doctest::Approx(1.7724538509055160273).epsilon(1e-11));

    QuadratureResult c = integrate([](double x) { return std::exp(x); },
                                   -std::numeric_limits<double>::infinity(), 0.0, 1e-12);
    CHECK(c.value == doctest::Approx(1.0).epsilon(1e-11));
  }

  TEST_CASE("integrate rejects reversed bounds and non-finite integrands") {
    CHECK_THROWS_AS(integrate([](double) { return 1.0; }, 2.0, 1.0, 1e-10), Error);
    CHECK_THROWS_AS(integrate([](double x) { return 1.0 / x; }, -1.0, 1.0, 1e-10), Error);
  }

  TEST_CASE("golden_min finds a quadratic minimum") {
    double m = golden_min([](double x) { return (x - 2.0) * (x - 2.0); }, 0.0, 5.0, 60);
    CHECK(m == doctest::Approx(2.0).epsilon(1e-8));
  }
}
