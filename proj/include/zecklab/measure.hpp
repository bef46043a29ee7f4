#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <vector>

#include "zecklab/adic.hpp"
#include "zecklab/fibzeck.hpp"
#include "zecklab/golden.hpp"

namespace zeck {

// The set of adic points whose first order() digits (positions
// 2..order()+1) spell `name`.
struct Cylinder {
  DigitWord name;
  int order() const noexcept { return static_cast<int>(name.length()); }
};

// Exact Parry measure of [name]: phi^-m when the top digit is 0 and
// phi^-(m+1) when it is 1, for a word of length m.
GoldenNumber cylinder_measure(const DigitWord& name);
inline GoldenNumber cylinder_measure(const Cylinder& c) { return cylinder_measure(c.name); }

// P(x_k = 1) = F_{k-1} / phi^k for k >= 2.
GoldenNumber digit_probability(int k);

// Measure of the union of all order-m cylinders whose names satisfy `pred`.
GoldenNumber measure_where(int order,
                           const std::function<bool(const DigitWord&)>& pred);

// All admissible words of the given length in increasing numeric order,
// which is also lexicographic order of the MSB-first renderings.
std::vector<DigitWord> admissible_words(int length);

// Draws digits from the Markov chain with P(1 | 0) = phi^-2, P(0 | 1) = 1,
// started from a virtual 0 at position 1. One uniform is consumed per digit,
// including forced zeros, so streams with the same seed stay aligned.
class DigitSampler {
 public:
  explicit DigitSampler(std::uint64_t seed) : seed_(seed), gen_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }

  // 53-bit uniform in [0, 1).
  double uniform();

  // Next digit given the previous one.
  std::uint8_t next(std::uint8_t prev);

 private:
  std::uint64_t seed_;
  std::mt19937_64 gen_;
};

// Fresh prefix on positions 2..horizon.
AdicPrefix sample_prefix(DigitSampler& rng, int horizon);

class PathologicalSample : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Keeps drawing digits on top of x until adding r is safe. Throws
// PathologicalSample if the horizon would pass `max_horizon`.
AdicPrefix extend_until_safe(DigitSampler& rng, AdicPrefix x, const BigInt& r,
                             int max_horizon = 1'000'000);

}  // namespace zeck
