#include "zecklab/measure.hpp"

#include <cmath>
#include <string>

namespace zeck {

namespace {

// P(x_{k+1} = 1 | x_k = 0) = phi^-2.
const double kOneAfterZero = 1.0 / (((1.0 + std::sqrt(5.0)) / 2.0) * ((1.0 + std::sqrt(5.0)) / 2.0));

constexpr int kMaxEnumeratedLength = 40;

}  // namespace

GoldenNumber cylinder_measure(const DigitWord& name) {
  const int m = static_cast<int>(name.length());
  if (m == 0) return GoldenNumber(1);
  const bool top_is_one = name.digit(m + 1) == 1;
  return phi_pow(top_is_one ? -(m + 1) : -m);
}

GoldenNumber digit_probability(int k) {
  if (k < 2) throw std::domain_error("digit_probability: position must be >= 2");
  return GoldenNumber(mpq_class(fib(k - 1)), 0) * phi_pow(-k);
}

std::vector<DigitWord> admissible_words(int length) {
  if (length < 0 || length > kMaxEnumeratedLength) {
    throw std::invalid_argument("admissible_words: length " + std::to_string(length) +
                                " outside [0, " + std::to_string(kMaxEnumeratedLength) + "]");
  }
  const std::uint64_t count = fib_u64(length + 2);
  std::vector<DigitWord> out;
  out.reserve(count);
  for (std::uint64_t n = 0; n < count; ++n) {
    out.push_back(encode_u64(n).padded(static_cast<std::size_t>(length)));
  }
  return out;
}

GoldenNumber measure_where(int order, const std::function<bool(const DigitWord&)>& pred) {
  // All names of one order share two possible masses, so count instead of
  // summing field elements.
  mpz_class with_top_zero = 0;
  mpz_class with_top_one = 0;
  for (const auto& w : admissible_words(order)) {
    if (!pred(w)) continue;
    if (order > 0 && w.digit(order + 1) == 1) {
      ++with_top_one;
    } else {
      ++with_top_zero;
    }
  }
  return GoldenNumber(mpq_class(with_top_zero), 0) * phi_pow(-order) +
         GoldenNumber(mpq_class(with_top_one), 0) * phi_pow(-(order + 1));
}

double DigitSampler::uniform() {
  return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

std::uint8_t DigitSampler::next(std::uint8_t prev) {
  const double u = uniform();
  if (prev == 1) return 0;
  return u < kOneAfterZero ? 1 : 0;
}

AdicPrefix sample_prefix(DigitSampler& rng, int horizon) {
  if (horizon < 2) throw std::invalid_argument("sample_prefix: horizon must be >= 2");
  std::vector<std::uint8_t> d(static_cast<std::size_t>(horizon - 1));
  std::uint8_t prev = 0;
  for (auto& v : d) prev = v = rng.next(prev);
  return AdicPrefix(std::move(d));
}

AdicPrefix extend_until_safe(DigitSampler& rng, AdicPrefix x, const BigInt& r, int max_horizon) {
  if (is_addition_safe(x, r)) return x;
  const int need_from = encode(r).highest_one().value_or(1) + 2;
  std::vector<std::uint8_t> d(x.low_digits().begin(), x.low_digits().end());
  auto horizon = [&]() { return static_cast<int>(d.size()) + 1; };
  while (true) {
    if (horizon() >= max_horizon) {
      throw PathologicalSample("no double zero found below horizon " + std::to_string(max_horizon));
    }
    d.push_back(rng.next(d.back()));
    const int h = horizon();
    if (h - 1 >= need_from && d[d.size() - 1] == 0 && d[d.size() - 2] == 0) break;
  }
  return AdicPrefix(std::move(d));
}

}  // namespace zeck
