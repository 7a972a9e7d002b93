#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace hftail {

// Identifier recorded in output manifests. The engine is bit-specified by the
// standard and every transform below is written out explicitly, so streams are
// identical across platforms and compilers.
inline constexpr const char* kRngId = "mt19937_64/v1";

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Independent sub-seed for a numbered stream (bootstrap replica, surrogate
// realization, ...) so work can be scheduled in any order.
inline std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(seed ^ (0x9E3779B97F4A7C15ULL * (stream + 1)));
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t bits() { return eng_(); }

  // uniform on [0, 1) with 53 random bits
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double normal();              // Box-Muller
  double gamma(double shape);   // Marsaglia-Tsang
  double student_t(double nu);
  std::uint64_t below(std::uint64_t n);  // unbiased uniform on [0, n)

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 eng_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace hftail
