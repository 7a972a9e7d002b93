#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hftail/mfdfa.hpp"
#include "hftail/returns.hpp"

namespace hftail {

struct SurrogateEnsemble {
  std::string base_id;
  int n_realizations = 0;
  std::uint64_t seed = 0;
  std::vector<ReturnSeries> realizations;
};

// n independent uniform permutations (Fisher-Yates on the named engine);
// realization i draws from sub_seed(seed, i) so order of work is irrelevant.
SurrogateEnsemble shuffle_surrogates(const ReturnSeries& r, int n, std::uint64_t seed);

// Synthetic processes with known answers; all streams fully determined by
// (params, seed).
ReturnSeries gen_gaussian(std::size_t n, std::uint64_t seed);
ReturnSeries gen_student_t(std::size_t n, double nu, std::uint64_t seed);
// Student-t equivalence: t draws with nu = (3-q)/(q-1) rescaled by
// 1/sqrt(nu (q-1)) are q-Gaussian with b_q = 1.
ReturnSeries gen_qgaussian(std::size_t n, double q, std::uint64_t seed);
ReturnSeries gen_ar1(std::size_t n, double phi, std::uint64_t seed);
// Binomial multiplicative cascade of 2^levels values, weight order randomized
// per node, signs randomized when requested (seed streams 0 and 1).
ReturnSeries gen_cascade(int levels, double w1, std::uint64_t seed, bool randomize_signs = true);

// Pointwise mean of f(alpha) curves by linear interpolation on the shared
// alpha_h interval.
SingularitySpectrum average_spectra(const std::vector<SingularitySpectrum>& specs,
                                    int grid_points = 50);

}  // namespace hftail
