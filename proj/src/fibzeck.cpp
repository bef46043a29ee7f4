#include "zecklab/fibzeck.hpp"

#include <array>
#include <mutex>
#include <stdexcept>
#include <string>

namespace zeck {

namespace {

constexpr std::array<std::uint64_t, kMaxU64FibIndex + 1> make_u64_table() {
  std::array<std::uint64_t, kMaxU64FibIndex + 1> t{};
  t[1] = t[2] = 1;
  for (int k = 3; k <= kMaxU64FibIndex; ++k) t[k] = t[k - 1] + t[k - 2];
  return t;
}

constexpr auto kFibU64 = make_u64_table();

// Grows on demand; entries are never moved once published because callers
// only receive copies.
class FibTable {
 public:
  BigInt get(int k) {
    std::lock_guard<std::mutex> lock(mu_);
    if (table_.empty()) {
      table_.push_back(0);
      table_.push_back(1);
    }
    while (static_cast<int>(table_.size()) <= k) {
      const std::size_t n = table_.size();
      table_.push_back(table_[n - 1] + table_[n - 2]);
    }
    return table_[k];
  }

 private:
  std::mutex mu_;
  std::vector<BigInt> table_;
};

FibTable& fib_table() {
  static FibTable t;
  return t;
}

}  // namespace

std::uint64_t fib_u64(int k) {
  if (k < 1 || k > kMaxU64FibIndex) {
    throw std::domain_error("fib_u64: index " + std::to_string(k) + " out of range");
  }
  return kFibU64[k];
}

BigInt fib(int k) {
  if (k < 1) throw std::domain_error("fib: index must be >= 1, got " + std::to_string(k));
  if (k <= kMaxU64FibIndex) return from_u64(kFibU64[k]);
  return fib_table().get(k);
}

BigInt fib0(int k) {
  if (k == 0) return 0;
  return fib(k);
}

int fib_index_floor(const BigInt& r) {
  if (r < 1) throw std::domain_error("fib_index_floor: r must be >= 1");
  if (fits_u64(r)) {
    const std::uint64_t v = to_u64(r);
    int l = 2;
    while (l + 1 <= kMaxU64FibIndex && kFibU64[l + 1] <= v) ++l;
    return l;
  }
  int l = kMaxU64FibIndex;
  while (fib(l + 1) <= r) ++l;
  return l;
}

DigitWord DigitWord::from_low_digits(std::vector<std::uint8_t> low_first) {
  validate_admissible(low_first);
  return DigitWord(std::move(low_first));
}

DigitWord DigitWord::parse(std::string_view msb_first) {
  std::vector<std::uint8_t> d(msb_first.size());
  for (std::size_t i = 0; i < msb_first.size(); ++i) {
    const char c = msb_first[msb_first.size() - 1 - i];
    if (c != '0' && c != '1') {
      throw ValidationError("invalid digit '" + std::string(1, c) + "' in word '" +
                            std::string(msb_first) + "'");
    }
    d[i] = static_cast<std::uint8_t>(c - '0');
  }
  validate_admissible(d);
  return DigitWord(std::move(d));
}

int DigitWord::digit(int position) const noexcept {
  if (position < 2) return 0;
  const auto i = static_cast<std::size_t>(position - 2);
  return i < digits_.size() ? digits_[i] : 0;
}

std::optional<int> DigitWord::highest_one() const noexcept {
  for (std::size_t i = digits_.size(); i-- > 0;) {
    if (digits_[i]) return static_cast<int>(i) + 2;
  }
  return std::nullopt;
}

DigitWord DigitWord::canonical() const {
  std::vector<std::uint8_t> d = digits_;
  while (!d.empty() && d.back() == 0) d.pop_back();
  return DigitWord(std::move(d));
}

DigitWord DigitWord::padded(std::size_t new_length) const {
  const auto top = highest_one();
  if (top && static_cast<std::size_t>(*top - 1) > new_length) {
    throw std::invalid_argument("padded: length " + std::to_string(new_length) +
                                " would truncate a nonzero digit");
  }
  std::vector<std::uint8_t> d = digits_;
  d.resize(new_length, 0);
  return DigitWord(std::move(d));
}

std::string DigitWord::to_string() const {
  if (digits_.empty()) return "0";
  std::string s(digits_.size(), '0');
  for (std::size_t i = 0; i < digits_.size(); ++i) {
    s[digits_.size() - 1 - i] = static_cast<char>('0' + digits_[i]);
  }
  return s;
}

void validate_admissible(std::span<const std::uint8_t> d) {
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] > 1) throw ValidationError("digit value " + std::to_string(d[i]) + " is not binary");
    if (i > 0 && d[i] && d[i - 1]) {
      throw ValidationError("adjacent ones at positions " + std::to_string(i + 2) + " and " +
                            std::to_string(i + 1));
    }
  }
}

DigitWord encode_u64(std::uint64_t n) {
  if (n == 0) return {};
  int k = 2;
  while (k + 1 <= kMaxU64FibIndex && kFibU64[k + 1] <= n) ++k;
  std::vector<std::uint8_t> d(static_cast<std::size_t>(k - 1), 0);
  for (; n > 0 && k >= 2; --k) {
    if (kFibU64[k] <= n) {
      d[static_cast<std::size_t>(k - 2)] = 1;
      n -= kFibU64[k];
      --k;  // greedy never picks two neighbours
    }
  }
  return DigitWord::from_low_digits(std::move(d));
}

DigitWord encode(const BigInt& n) {
  if (sgn(n) < 0) throw std::domain_error("encode: negative integer " + zeck::to_string(n));
  if (fits_u64(n)) return encode_u64(to_u64(n));
  int k = fib_index_floor(n);
  std::vector<std::uint8_t> d(static_cast<std::size_t>(k - 1), 0);
  BigInt rest = n;
  for (; sgn(rest) > 0 && k >= 2; --k) {
    const BigInt f = fib(k);
    if (f <= rest) {
      d[static_cast<std::size_t>(k - 2)] = 1;
      rest -= f;
      --k;
    }
  }
  return DigitWord::from_low_digits(std::move(d));
}

BigInt decode(const DigitWord& w) {
  BigInt n = 0;
  const auto d = w.low_digits();
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i]) n += fib(static_cast<int>(i) + 2);
  }
  return n;
}

std::uint64_t decode_u64(const DigitWord& w) {
  std::uint64_t n = 0;
  const auto d = w.low_digits();
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i]) n += fib_u64(static_cast<int>(i) + 2);
  }
  return n;
}

int digit_sum(const DigitWord& w) {
  int s = 0;
  for (auto v : w.low_digits()) s += v;
  return s;
}

int digit_sum_of(const BigInt& n) { return digit_sum(encode(n)); }

}  // namespace zeck
