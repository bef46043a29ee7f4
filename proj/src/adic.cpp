#include "zecklab/adic.hpp"

#include <algorithm>
#include <string>

namespace zeck {

namespace {

// Position-addressed view of a low-first buffer. Reads below position 2 see
// the virtual 0 at position 1; reads above the horizon are unknown and
// throw.
class Digits {
 public:
  explicit Digits(std::span<std::uint8_t> d) : d_(d) {}

  int horizon() const noexcept { return static_cast<int>(d_.size()) + 1; }

  int at(int pos) const {
    if (pos < 2) return 0;
    if (pos > horizon()) {
      throw HorizonExhausted("carry reached position " + std::to_string(pos) +
                             " beyond horizon " + std::to_string(horizon()));
    }
    return d_[static_cast<std::size_t>(pos - 2)];
  }

  void set(int pos, int v) {
    auto& cell = d_[static_cast<std::size_t>(pos - 2)];
    change_ += v - cell;
    cell = static_cast<std::uint8_t>(v);
  }

  void clear(int from, int to) {
    for (int p = std::max(from, 2); p <= to; ++p) set(p, 0);
  }

  int change() const noexcept { return change_; }

 private:
  std::span<std::uint8_t> d_;
  int change_ = 0;
};

// Leftward carry: walks p = start, start+2, ... over a run (01)* until
// x_{p+1} = 0, then writes the 1 at p and clears [clear_from, p-1].
void carry_left(Digits& x, int start, int clear_from) {
  int p = start;
  while (x.at(p + 1) == 1) p += 2;
  x.clear(clear_from, p - 1);
  x.set(p, 1);
}

// Lowest position e of the alternating run k, k-2, ... of ones.
int run_bottom(const Digits& x, int k) {
  int e = k;
  while (e - 2 >= 2 && x.at(e - 2) == 1) e -= 2;
  return e;
}

AddFibCase classify(const Digits& x, int k) {
  if (x.at(k) == 0) {
    if (x.at(k + 1) == 1) return AddFibCase::LeftRun;
    if (x.at(k - 1) == 1) return AddFibCase::AbsorbBelow;
    return AddFibCase::Isolated;
  }
  // x_{k+1} must be read even though only the left carry needs it, so that
  // classification and application fail identically at the horizon.
  (void)x.at(k + 1);
  const int e = run_bottom(x, k);
  if (e == 2) return AddFibCase::RightEdgeFull;
  if (e == 3) return AddFibCase::RightEdge0;
  if (e == 4) return AddFibCase::RightEdge00;
  if (x.at(e - 3) == 0) return AddFibCase::RightStop000;
  if (e == 5) return AddFibCase::RightEdge001;
  return AddFibCase::RightStop0010;
}

void check_index(int k, int horizon) {
  if (k < 2 || k > horizon) {
    throw std::out_of_range("Fibonacci index " + std::to_string(k) + " outside [2, " +
                            std::to_string(horizon) + "]");
  }
}

std::vector<int> one_positions(const BigInt& r) {
  std::vector<int> pos;
  const DigitWord w = encode(r);
  const auto d = w.low_digits();
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i]) pos.push_back(static_cast<int>(i) + 2);
  }
  return pos;
}

// Smallest p >= from with d_p = d_{p+1} = 0 and p+1 <= horizon.
bool has_double_zero_from(std::span<const std::uint8_t> d, int from) {
  const int horizon = static_cast<int>(d.size()) + 1;
  for (int p = std::max(from, 2); p + 1 <= horizon; ++p) {
    if (d[static_cast<std::size_t>(p - 2)] == 0 && d[static_cast<std::size_t>(p - 1)] == 0) {
      return true;
    }
  }
  return false;
}

bool safe_for_top(std::span<const std::uint8_t> d, std::optional<int> top) {
  if (!top) return true;
  return has_double_zero_from(d, *top + 2);
}

}  // namespace

namespace detail {

int add_fib_inplace(std::span<std::uint8_t> d, int k) {
  Digits x(d);
  check_index(k, x.horizon());
  const AddFibCase c = classify(x, k);
  switch (c) {
    case AddFibCase::Isolated:
      x.set(k, 1);
      break;
    case AddFibCase::LeftRun:
      carry_left(x, k + 2, k + 1);
      break;
    case AddFibCase::AbsorbBelow:
      carry_left(x, k + 1, k - 1);
      break;
    default: {
      // x_k = 1: F_k + F_k = F_{k+1} + F_{k-2}, so a carry goes left from k
      // and the run of ones below k flips until a stopping pattern.
      const int e = run_bottom(x, k);
      carry_left(x, k + 1, k);
      for (int p = e; p <= k - 1; ++p) x.set(p, (k - 1 - p) % 2 == 0 ? 1 : 0);
      switch (c) {
        case AddFibCase::RightEdgeFull:
          break;
        case AddFibCase::RightEdge0:
          x.set(2, 1);
          break;
        case AddFibCase::RightEdge00:
          x.set(3, 0);
          x.set(2, 1);
          break;
        case AddFibCase::RightStop000:
          x.set(e - 1, 0);
          x.set(e - 2, 1);
          x.set(e - 3, 0);
          break;
        default:  // RightStop0010, RightEdge001
          x.set(e - 1, 1);
          x.set(e - 2, 0);
          x.set(e - 3, 0);
          break;
      }
    }
  }
  return x.change();
}

int successor_inplace(std::span<std::uint8_t> d) {
  if (d.empty()) throw HorizonExhausted("empty prefix has no successor");
  return add_fib_inplace(d, 2);
}

}  // namespace detail

AdicPrefix::AdicPrefix(int horizon) {
  if (horizon < 2) throw std::invalid_argument("horizon must be >= 2, got " + std::to_string(horizon));
  digits_.assign(static_cast<std::size_t>(horizon - 1), 0);
}

AdicPrefix::AdicPrefix(std::vector<std::uint8_t> low_first) : digits_(std::move(low_first)) {
  if (digits_.empty()) throw std::invalid_argument("prefix needs at least one digit");
  validate_admissible(digits_);
}

AdicPrefix AdicPrefix::from_word(const DigitWord& w, int horizon) {
  AdicPrefix x(horizon);
  const auto d = w.low_digits();
  const auto top = w.highest_one();
  if (top && *top > horizon) {
    throw std::invalid_argument("word does not fit below horizon " + std::to_string(horizon));
  }
  for (std::size_t i = 0; i < d.size() && i < x.digits_.size(); ++i) x.digits_[i] = d[i];
  return x;
}

AdicPrefix AdicPrefix::for_sum(const BigInt& n, const BigInt& r) {
  const DigitWord w = encode(n);
  const int top_n = w.highest_one().value_or(1);
  const int top_r = sgn(r) > 0 ? encode(r).highest_one().value_or(1) : 1;
  // Zeros at top+1..top+3 leave a double zero at top+2 >= top(r)+2.
  return from_word(w, std::max(top_n, top_r) + 3);
}

int AdicPrefix::digit(int position) const {
  if (position < 2 || position > horizon()) {
    throw std::out_of_range("position " + std::to_string(position) + " outside [2, " +
                            std::to_string(horizon()) + "]");
  }
  return digits_[static_cast<std::size_t>(position - 2)];
}

AdicPrefix AdicPrefix::extended(std::span<const std::uint8_t> more) const {
  std::vector<std::uint8_t> d = digits_;
  d.insert(d.end(), more.begin(), more.end());
  return AdicPrefix(std::move(d));
}

int AdicPrefix::digit_sum() const noexcept {
  int s = 0;
  for (auto v : digits_) s += v;
  return s;
}

AddFibCase classify_add_fib(const AdicPrefix& x, int k) {
  check_index(k, x.horizon());
  std::vector<std::uint8_t> copy(x.low_digits().begin(), x.low_digits().end());
  return classify(Digits(copy), k);
}

AdicPrefix successor(const AdicPrefix& x) { return add_fib(x, 2); }

AdicPrefix add_fib(const AdicPrefix& x, int k) {
  std::vector<std::uint8_t> d(x.low_digits().begin(), x.low_digits().end());
  detail::add_fib_inplace(d, k);
  return AdicPrefix(std::move(d));
}

bool is_addition_safe(const AdicPrefix& x, const BigInt& r) {
  if (sgn(r) < 0) throw std::domain_error("negative increment");
  if (sgn(r) == 0) return true;
  return safe_for_top(x.low_digits(), encode(r).highest_one());
}

namespace {

// Adds r (given by its one positions) into d, highest digit first; once the
// prefix is safe, each F_k addition keeps its carries inside the buffer.
int add_positions_inplace(std::span<std::uint8_t> d, const std::vector<int>& ones) {
  int change = 0;
  for (auto it = ones.rbegin(); it != ones.rend(); ++it) change += detail::add_fib_inplace(d, *it);
  return change;
}

void require_safe(const AdicPrefix& x, const BigInt& r) {
  if (!is_addition_safe(x, r)) {
    throw HorizonExhausted("prefix of horizon " + std::to_string(x.horizon()) +
                           " is not safe for adding " + zeck::to_string(r));
  }
}

}  // namespace

AdicPrefix add_int(const AdicPrefix& x, const BigInt& r) {
  require_safe(x, r);
  std::vector<std::uint8_t> d(x.low_digits().begin(), x.low_digits().end());
  add_positions_inplace(d, one_positions(r));
  return AdicPrefix(std::move(d));
}

std::optional<StoppingPattern> find_stopping_pattern(const AdicPrefix& x, int k) {
  const auto d = x.low_digits();
  auto at = [&](int pos) { return static_cast<int>(d[static_cast<std::size_t>(pos - 2)]); };
  for (int j = std::min(k + 1, x.horizon()); j - 4 >= 2; --j) {
    const int a = at(j), b = at(j - 1), c = at(j - 2), e = at(j - 3), f = at(j - 4);
    if (a == 0 && b == 1 && c == 0 && e == 0 && f == 0) return StoppingPattern{StoppingKind::W0, j};
    if (a == 1 && b == 0 && c == 0 && e == 1 && f == 0) return StoppingPattern{StoppingKind::W1, j};
  }
  return std::nullopt;
}

int delta_k(const AdicPrefix& x, const BigInt& r, int k) {
  if (k < 2 || k > x.horizon()) {
    throw std::out_of_range("delta_k: order " + std::to_string(k) + " beyond horizon " +
                            std::to_string(x.horizon()));
  }
  const AdicPrefix y = add_int(x, r);
  int s = 0;
  for (int p = 2; p <= k; ++p) s += y.digit(p) - x.digit(p);
  return s;
}

int delta(const AdicPrefix& x, const BigInt& r) {
  require_safe(x, r);
  std::vector<std::uint8_t> d(x.low_digits().begin(), x.low_digits().end());
  return add_positions_inplace(d, one_positions(r));
}

int delta(const BigInt& n, const BigInt& r) {
  if (sgn(n) < 0 || sgn(r) < 0) throw std::domain_error("delta: negative argument");
  return delta(AdicPrefix::for_sum(n, r), r);
}

DeltaScanner::DeltaScanner(const BigInt& r, const BigInt& first, const BigInt& last)
    : r_positions_(sgn(r) > 0 ? one_positions(r) : std::vector<int>{}), n_(first), last_(last) {
  if (sgn(r) < 0 || sgn(first) < 0) throw std::invalid_argument("DeltaScanner: negative argument");
  if (first > last) throw std::invalid_argument("DeltaScanner: empty range");
  const int top_last = encode(last).highest_one().value_or(1);
  const int top_r = r_positions_.empty() ? 1 : r_positions_.back();
  // Every n in range, and n + r, fit with a double zero to spare.
  const int horizon = std::max(top_last, top_r) + 4;
  const AdicPrefix start = AdicPrefix::from_word(encode(first), horizon);
  x_.assign(start.low_digits().begin(), start.low_digits().end());
  scratch_.resize(x_.size());
}

int DeltaScanner::value() {
  std::copy(x_.begin(), x_.end(), scratch_.begin());
  return add_positions_inplace(scratch_, r_positions_);
}

void DeltaScanner::advance() {
  if (n_ >= last_) throw std::out_of_range("DeltaScanner: advanced past the end of its range");
  detail::successor_inplace(x_);
  ++n_;
}

}  // namespace zeck
