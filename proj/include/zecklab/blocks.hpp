#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "zecklab/adic.hpp"
#include "zecklab/bigint.hpp"

namespace zeck {

// A maximal run 0(10)^l... read from the bottom: the block's 0 sits at
// position `low` and its ones at low+1, low+3, ..., low+2*patterns-1.
// A block that owns the units digit (r_2 = 1) uses the virtual 0 at
// position 1, so its low is 1.
struct Block {
  int low = 0;       // n_i
  int patterns = 0;  // l_i
  int top() const noexcept { return low + 2 * patterns - 1; }
  bool uses_virtual_zero() const noexcept { return low == 1; }
};

// r split into blocks, lowest first. partial_sums[i] = r[i], the integer
// formed by blocks 0..i, so partial_sums.back() == r.
struct BlockDecomposition {
  BigInt r;
  std::vector<Block> blocks;
  std::vector<BigInt> partial_sums;

  int rho() const noexcept { return static_cast<int>(blocks.size()); }

  // Integer carried by block i alone.
  BigInt block_value(std::size_t i) const;
};

// Throws std::domain_error for r < 0. decompose(0) has no blocks.
BlockDecomposition decompose(const BigInt& r);

// MSB-first rendering with each block bracketed, e.g. "[10]00[10]" for 15.
// A units block has no real bottom 0 and is tagged, e.g. "[101(conv)]".
std::string render(const BlockDecomposition& dec);

// X_i = s(x + r[i]) - s(x + r[i-1]) for every block, lowest first. The prefix
// must be safe for r. Sums to delta(x, r).
std::vector<int> block_process(const AdicPrefix& x,
                               const BlockDecomposition& dec);

// Positions of the admissibility window of block i, clipped below at 2,
// increasing.
std::vector<int> admissible_window(const BlockDecomposition& dec, std::size_t i);

// True iff x is 0 at every Adm(i) position. Throws HorizonExhausted if the
// window reaches past the horizon.
bool stopping_condition_holds(const AdicPrefix& x,
                              const BlockDecomposition& dec, std::size_t i);

// When the stopping condition holds for block i: x + r and x + r[i] agree
// at positions <= low_bound, and x + r[i] agrees with x at positions
// >= high_bound.
struct IsolationBounds {
  int low_bound = 0;
  int high_bound = 0;
};
IsolationBounds isolation_bounds(const Block& b);

}  // namespace zeck
