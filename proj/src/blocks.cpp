#include "zecklab/blocks.hpp"

#include <algorithm>
#include <string>

namespace zeck {

BigInt BlockDecomposition::block_value(std::size_t i) const {
  return i == 0 ? partial_sums[0] : partial_sums[i] - partial_sums[i - 1];
}

BlockDecomposition decompose(const BigInt& r) {
  if (sgn(r) < 0) throw std::domain_error("decompose: r must be >= 0");
  BlockDecomposition dec;
  dec.r = r;
  if (sgn(r) == 0) return dec;
  const DigitWord w = encode(r);
  const int top = *w.highest_one();
  // Ones two apart continue a block; any wider gap starts a new one whose
  // zero sits just below its first one.
  int pos = 2;
  while (pos <= top) {
    if (w.digit(pos) == 0) {
      ++pos;
      continue;
    }
    Block b;
    b.low = pos - 1;
    b.patterns = 0;
    int q = pos;
    while (q <= top && w.digit(q) == 1) {
      ++b.patterns;
      q += 2;
    }
    dec.blocks.push_back(b);
    pos = q;
  }
  BigInt acc = 0;
  for (const auto& b : dec.blocks) {
    for (int i = 0; i < b.patterns; ++i) acc += fib(b.low + 1 + 2 * i);
    dec.partial_sums.push_back(acc);
  }
  return dec;
}

std::string render(const BlockDecomposition& dec) {
  if (dec.blocks.empty()) return "0";
  const DigitWord w = encode(dec.r);
  const int top = *w.highest_one();
  std::string out;
  int pos = top;
  auto block_at_top = [&](int p) -> const Block* {
    for (const auto& b : dec.blocks) {
      if (b.top() == p) return &b;
    }
    return nullptr;
  };
  while (pos >= 2) {
    if (const Block* b = block_at_top(pos)) {
      out += '[';
      const int bottom = std::max(b->low, 2);
      for (int p = pos; p >= bottom; --p) out += static_cast<char>('0' + w.digit(p));
      if (b->uses_virtual_zero()) out += "(conv)";
      out += ']';
      pos = bottom - 1;
    } else {
      out += static_cast<char>('0' + w.digit(pos));
      --pos;
    }
  }
  return out;
}

std::vector<int> block_process(const AdicPrefix& x, const BlockDecomposition& dec) {
  if (!is_addition_safe(x, dec.r)) {
    throw HorizonExhausted("block_process: prefix is not safe for " + to_string(dec.r));
  }
  std::vector<std::uint8_t> y(x.low_digits().begin(), x.low_digits().end());
  std::vector<int> out;
  out.reserve(dec.blocks.size());
  for (const auto& b : dec.blocks) {
    int change = 0;
    for (int i = b.patterns - 1; i >= 0; --i) change += detail::add_fib_inplace(y, b.low + 1 + 2 * i);
    out.push_back(change);
  }
  return out;
}

std::vector<int> admissible_window(const BlockDecomposition& dec, std::size_t i) {
  if (i >= dec.blocks.size()) throw std::out_of_range("admissible_window: no block " + std::to_string(i));
  const Block& b = dec.blocks[i];
  std::vector<int> pos;
  auto add_range = [&](int lo, int hi) {
    for (int p = std::max(lo, 2); p <= hi; ++p) pos.push_back(p);
  };
  if (b.patterns == 1) {
    add_range(b.low - 2, b.low + 3);
  } else {
    add_range(b.low - 2, b.low + 1);
    add_range(b.low + 2 * b.patterns - 2, b.low + 2 * b.patterns + 1);
  }
  return pos;
}

bool stopping_condition_holds(const AdicPrefix& x, const BlockDecomposition& dec, std::size_t i) {
  const auto window = admissible_window(dec, i);
  if (!window.empty() && window.back() > x.horizon()) {
    throw HorizonExhausted("Adm window reaches position " + std::to_string(window.back()) +
                           " beyond horizon " + std::to_string(x.horizon()));
  }
  return std::all_of(window.begin(), window.end(), [&](int p) { return x.digit(p) == 0; });
}

IsolationBounds isolation_bounds(const Block& b) {
  if (b.patterns == 1) return {b.low, b.low + 2};
  return {b.low + 2 * b.patterns - 4, b.low + 2 * b.patterns + 1};
}

}  // namespace zeck
