#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "zecklab/bigint.hpp"

namespace zeck {

// Raised when a digit string is not a Zeckendorf word (bad character or two
// adjacent ones).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Largest index with F_k < 2^64.
inline constexpr int kMaxU64FibIndex = 93;

// F_1 = F_2 = 1. Throws std::domain_error for k < 1 or k > kMaxU64FibIndex.
std::uint64_t fib_u64(int k);

// Exact F_k for any k >= 1; throws std::domain_error for k < 1.
BigInt fib(int k);

// F_k with the extension F_0 = 0, used by the golden-field power formulas.
BigInt fib0(int k);

// Largest l >= 2 with F_l <= r. Throws std::domain_error if r < 1.
int fib_index_floor(const BigInt& r);

// A finite Zeckendorf digit word on positions 2, 3, ..., length()+1.
//
// Storage is low-first (index 0 is position 2); rendering is most
// significant digit first, so "101" is F_4 + F_2 = 4. The length is part of
// the value: "0101" and "101" decode to the same integer but name different
// cylinders.
class DigitWord {
 public:
  DigitWord() = default;

  // Takes digits low-first (element 0 is position 2).
  static DigitWord from_low_digits(std::vector<std::uint8_t> low_first);

  // Parses an MSB-first string of '0'/'1'.
  static DigitWord parse(std::string_view msb_first);

  std::size_t length() const noexcept { return digits_.size(); }
  bool empty() const noexcept { return digits_.empty(); }

  // Digit at a Fibonacci position (>= 2); 0 for positions outside the word.
  int digit(int position) const noexcept;

  // Highest position holding a 1, or nullopt for the zero word.
  std::optional<int> highest_one() const noexcept;

  bool is_canonical() const noexcept {
    return digits_.empty() || digits_.back() == 1;
  }
  DigitWord canonical() const;

  // Pads with leading zeros; throws std::invalid_argument if that would
  // drop a 1.
  DigitWord padded(std::size_t new_length) const;

  std::span<const std::uint8_t> low_digits() const noexcept { return digits_; }

  // MSB first. The empty word renders as "0".
  std::string to_string() const;

  friend bool operator==(const DigitWord&, const DigitWord&) = default;

 private:
  explicit DigitWord(std::vector<std::uint8_t> d) : digits_(std::move(d)) {}
  std::vector<std::uint8_t> digits_;
};

// Throws ValidationError if the low-first digits contain a non-binary value
// or two adjacent ones.
void validate_admissible(std::span<const std::uint8_t> low_first);

// Greedy expansion. encode(0) is the empty word. Throws std::domain_error
// for n < 0.
DigitWord encode(const BigInt& n);
DigitWord encode_u64(std::uint64_t n);

BigInt decode(const DigitWord& w);

// Precondition: the word decodes below 2^64.
std::uint64_t decode_u64(const DigitWord& w);

int digit_sum(const DigitWord& w);

// s(n), the digit sum of encode(n).
int digit_sum_of(const BigInt& n);

}  // namespace zeck
