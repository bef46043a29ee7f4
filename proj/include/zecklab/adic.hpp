#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "zecklab/bigint.hpp"
#include "zecklab/fibzeck.hpp"

namespace zeck {

// A carry tried to write past the prefix horizon; extend the prefix and retry.
class HorizonExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The first horizon()-1 digits (positions 2..horizon) of a point of the
// Zeckendorf odometer. Positions above the horizon are unknown, so every
// operation that would have to read them throws HorizonExhausted instead.
class AdicPrefix {
 public:
  // All-zero prefix. Throws std::invalid_argument if horizon < 2.
  explicit AdicPrefix(int horizon);

  // Low-first digits, validated; must be non-empty.
  explicit AdicPrefix(std::vector<std::uint8_t> low_first);

  // The word's digits padded with zeros up to the horizon.
  static AdicPrefix from_word(const DigitWord& w, int horizon);

  // The integer n with enough zero padding that adding r is safe.
  static AdicPrefix for_sum(const BigInt& n, const BigInt& r);

  int horizon() const noexcept { return static_cast<int>(digits_.size()) + 1; }

  // Throws std::out_of_range outside [2, horizon()].
  int digit(int position) const;

  std::span<const std::uint8_t> low_digits() const noexcept { return digits_; }

  DigitWord to_word() const { return DigitWord::from_low_digits(digits_); }

  // Appends digits above the current horizon (validated at the seam).
  AdicPrefix extended(std::span<const std::uint8_t> more) const;

  int digit_sum() const noexcept;

  friend bool operator==(const AdicPrefix&, const AdicPrefix&) = default;

 private:
  std::vector<std::uint8_t> digits_;
};

// Which local rewrite adding F_k performs. The numbering follows the order in
// which the cases are usually tabulated; the suffix describes the digits
// around position k that select the case.
enum class AddFibCase {
  Isolated = 1,         // x_{k-1} = x_k = x_{k+1} = 0
  LeftRun = 2,          // x_k = 0, x_{k+1} = 1
  AbsorbBelow = 3,      // x_k = 0, x_{k+1} = 0, x_{k-1} = 1
  RightStop000 = 4,     // x_k = 1, run (01)* below stops on 000
  RightStop0010 = 5,    // x_k = 1, run (01)* below stops on 0010
  RightEdge001 = 11,    // x_k = 1, run reaches 001 at position 2
  RightEdge00 = 12,     // x_k = 1, run reaches 00 at position 2
  RightEdgeFull = 13,   // x_k = 1, run covers down to position 2
  RightEdge0 = 17,      // x_k = 1, run reaches a single 0 at position 2
};

// k >= 2 and k <= horizon; otherwise std::out_of_range.
AddFibCase classify_add_fib(const AdicPrefix& x, int k);

AdicPrefix successor(const AdicPrefix& x);
AdicPrefix add_fib(const AdicPrefix& x, int k);

// True if some p >= top(r)+2 has x_p = x_{p+1} = 0 with p+1 <= horizon. Under
// that condition no carry produced by adding r can travel beyond p+1.
bool is_addition_safe(const AdicPrefix& x, const BigInt& r);

// x + r by one F_k addition per digit of r. Throws HorizonExhausted unless
// is_addition_safe(x, r).
AdicPrefix add_int(const AdicPrefix& x, const BigInt& r);

enum class StoppingKind { W0, W1 };  // W0 = 01000, W1 = 10010 (MSB first)

struct StoppingPattern {
  StoppingKind kind;
  int position;  // highest position of the five-digit window
};

// The occurrence with the largest top position j <= min(k+1, horizon) and
// j-4 >= 2.
std::optional<StoppingPattern> find_stopping_pattern(const AdicPrefix& x,
                                                     int k);

// s_k(x + r) - s_k(x), where s_k sums positions 2..k.
int delta_k(const AdicPrefix& x, const BigInt& r, int k);

// Digit-sum change over the whole prefix; equals the stabilized value of
// delta_k once addition is safe.
int delta(const AdicPrefix& x, const BigInt& r);

// s(n + r) - s(n) computed through the carry engine.
int delta(const BigInt& n, const BigInt& r);

// Evaluates D(n) = s(n + r) - s(n) along consecutive integers, stepping n with
// the odometer instead of re-encoding.
class DeltaScanner {
 public:
  // Covers n in [first, last]; throws std::invalid_argument if first > last
  // or r < 0.
  DeltaScanner(const BigInt& r, const BigInt& first, const BigInt& last);

  int value();  // D at the current n
  void advance();
  const BigInt& current() const noexcept { return n_; }

 private:
  std::vector<std::uint8_t> x_;
  std::vector<std::uint8_t> scratch_;
  std::vector<int> r_positions_;
  BigInt n_;
  BigInt last_;
};

namespace detail {

// In-place kernels over low-first digit buffers (index 0 is position 2).
// Each returns the change in digit sum and throws HorizonExhausted when a
// carry would leave the buffer.
int add_fib_inplace(std::span<std::uint8_t> d, int k);
int successor_inplace(std::span<std::uint8_t> d);

}  // namespace detail

}  // namespace zeck
