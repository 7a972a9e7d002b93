#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include <doctest.h>

#include "hftail/rng.hpp"

using namespace hftail;

namespace {

double mean_of(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double var_of(const std::vector<double>& v) {
  double m = mean_of(v), acc = 0.0;
  for (double x : v) acc += (x - m) * (x - m);
  return acc / static_cast<double>(v.size() - 1);
}

}  // namespace

TEST_SUITE("rng") {
  TEST_CASE("streams are deterministic and seed-separated") {
    Rng a(7), b(7), c(8);
    for (int i = 0; i < 100; ++i) CHECK(a.bits() == b.bits());
    bool differs = false;
    Rng a2(7);
    for (int i = 0; i < 100; ++i) differs |= (a2.bits() != c.bits());
    CHECK(differs);
  }

  TEST_CASE("sub_seed decorrelates adjacent indices") {
    std::uint64_t s = 42;
    CHECK(sub_seed(s, 0) != sub_seed(s, 1));
    CHECK(sub_seed(s, 0) != sub_seed(s + 1, 0));
    // identical first draws would indicate stream overlap
    CHECK(Rng(sub_seed(s, 0)).bits() != Rng(sub_seed(s, 1)).bits());
  }

  TEST_CASE("uniform stays in the half-open unit interval") {
    Rng r(3);
    for (int i = 0; i < 100000; ++i) {
      double u = r.uniform();
      CHECK(u >= 0.0);
      CHECK(u < 1.0);
    }
  }

  TEST_CASE("normal moments") {
    Rng r(11);
    std::vector<double> v(1 << 20);
    for (double& x : v) x = r.normal();
    CHECK(std::abs(mean_of(v)) < 0.005);
    CHECK(var_of(v) == doctest::Approx(1.0).epsilon(0.01));
    double skew = 0.0;
    for (double x : v) skew += x * x * x;
    skew /= static_cast<double>(v.size());
    CHECK(std::abs(skew) < 0.02);
  }

  TEST_CASE("gamma mean and variance match shape") {
    for (double shape : {0.5, 2.0, 7.3}) {
      Rng r(static_cast<std::uint64_t>(shape * 100) + 1);
      std::vector<double> v(1 << 18);
      for (double& x : v) x = r.gamma(shape);
      CHECK(mean_of(v) == doctest::Approx(shape).epsilon(0.02));
      CHECK(var_of(v) == doctest::Approx(shape).epsilon(0.05));
    }
  }

  TEST_CASE("student_t variance matches nu/(nu-2)") {
    Rng r(5);
    std::vector<double> v(1 << 20);
    for (double& x : v) x = r.student_t(5.0);
    CHECK(std::abs(mean_of(v)) < 0.01);
    CHECK(var_of(v) == doctest::Approx(5.0 / 3.0).epsilon(0.05));
  }

  TEST_CASE("below is unbiased over small ranges") {
    Rng r(9);
    std::vector<int> counts(5, 0);
    const int n = 500000;
    for (int i = 0; i < n; ++i) ++counts[r.below(5)];
    for (int c : counts) CHECK(std::abs(c - n / 5) < 2000);
  }

  TEST_CASE("shuffle permutes without loss") {
    Rng r(13);
    std::vector<double> v(257);
    std::iota(v.begin(), v.end(), 0.0);
    std::vector<double> orig = v;
    r.shuffle(v);
    CHECK(v != orig);
    std::sort(v.begin(), v.end());
    CHECK(v == orig);
  }
}
