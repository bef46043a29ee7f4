#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "zecklab/bigint.hpp"

namespace zeck {

struct MixingEstimate {
  int k = 0;
  int p = 0;
  double estimate = 0.0;
  double stderr_ = 0.0;  // standard error of the pair attaining the max
  long n_samples = 0;
  std::string event_family;
  double theorem_bound = 0.0;

  // estimate - 4 stderr <= bound
  bool consistent_with_bound() const noexcept {
    return estimate - 4.0 * stderr_ <= theorem_bound;
  }
};

// 2 / phi^(2k): bound on the phi-mixing coefficients of the digit process.
double coordinate_phi_bound(int k);

// 12 (1 - phi^-8)^(k/6) + phi^-2k: bound on the alpha-mixing coefficients of
// the block process.
double block_alpha_bound(int k);

// phi-mixing of the digit coordinates X_j = x_{j+1}. A ranges over
// cylinders on the last <= 3 past digits (positions p-1..p+1), B over
// cylinders on the 3 digits starting at position k+p+1; complements of A are
// included. Throws std::invalid_argument if k < 1, p < 1 or n < 10^4.
MixingEstimate estimate_phi_coordinates(int k, int p, long n,
                                        std::uint64_t seed, int threads = 1);

// Rows of a finite-dimensional process (X_1, ..., X_width), row-major.
struct SampleMatrix {
  int width = 0;
  long rows = 0;
  std::vector<int> values;  // values[s * width + i] is X_{i+1} in row s

  int at(long s, int i) const {
    return values[static_cast<std::size_t>(s) * width + i];
  }
};

// n draws of the block process (X_1, ..., X_rho) of r under the Parry
// measure. Throws std::invalid_argument for r < 1 or n < 1.
SampleMatrix sample_block_process(const BigInt& r, long n, std::uint64_t seed,
                                  int threads = 1);

// alpha-mixing estimate between sigma(X_1..X_p) and sigma(X_{k+p}..): A
// ranges over value tuples of the last <= 3 of X_1..X_p, B over tuples of
// the first <= 3 of X_{k+p}, X_{k+p+1}, ... When k + p > width the future
// algebra is trivial and the estimate is 0. Throws std::invalid_argument if
// k < 1, p < 1, p > width or rows < 10^4.
MixingEstimate estimate_alpha_blocks(const SampleMatrix& s, int k, int p);

// Samples the block process of r and estimates alpha(k) on it.
MixingEstimate estimate_alpha_blocks(const BigInt& r, int k, int p, long n,
                                     std::uint64_t seed, int threads = 1);

// phi-mixing estimate on the same event families, with complements of A
// added, so that the alpha estimate never exceeds half of it.
MixingEstimate estimate_phi_blocks(const SampleMatrix& s, int k, int p);

// Fraction of n in [0, N) with s(n + r) - s(n) = d, for every d observed.
struct DensityHistogram {
  BigInt r;
  std::uint64_t count = 0;
  std::vector<std::pair<int, std::uint64_t>> bins;  // (d, #n), increasing d

  double density(int d) const;
};

DensityHistogram density_histogram(const BigInt& r, std::uint64_t count);

// |{n < count : s(n + r) - s(n) = d}| / count. Throws std::invalid_argument
// if count < 1.
double empirical_density(const BigInt& r, int d, std::uint64_t count);

// ZECKLAB_THREADS if set to a positive integer, else 1. Sampling results
// depend on the worker count, so the default does not follow the hardware.
int default_threads();

}  // namespace zeck
