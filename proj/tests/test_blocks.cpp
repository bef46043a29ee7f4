#include <cmath>
#include <random>
#include <regex>

#include "doctest.h"
#include "zecklab/blocks.hpp"
#include "zecklab/measure.hpp"
#include "zecklab/mudist.hpp"

using namespace zeck;

namespace {

// Independent block count: peel a units block matching (10)*1 at the end,
// then count maximal runs of (10)+ in what is left.
int oracle_rho(const BigInt& r) {
  if (sgn(r) == 0) return 0;
  std::string s = encode(r).to_string();
  int count = 0;
  std::smatch m;
  if (std::regex_search(s, m, std::regex("(10)*1$"))) {
    ++count;
    s = s.substr(0, s.size() - m.length(0));
  }
  const std::regex run("(10)+");
  count += static_cast<int>(std::distance(std::sregex_iterator(s.begin(), s.end(), run), std::sregex_iterator()));
  return count;
}

AdicPrefix sampled(DigitSampler& rng, const BigInt& r, int horizon) {
  return extend_until_safe(rng, sample_prefix(rng, horizon), r);
}

}  // namespace

TEST_CASE("decomposition examples") {
  const auto four = decompose(4);
  CHECK(four.rho() == 1);
  CHECK(four.blocks[0].low == 1);
  CHECK(four.blocks[0].patterns == 2);
  CHECK(render(four) == "[101(conv)]");

  const auto fifteen = decompose(15);
  REQUIRE(fifteen.rho() == 2);
  CHECK(fifteen.partial_sums[0] == 2);
  CHECK(fifteen.partial_sums[1] == 15);
  CHECK(render(fifteen) == "[10]00[10]");

  CHECK(decompose(0).rho() == 0);
  CHECK(render(decompose(0)) == "0");
  for (int k = 2; k <= 40; ++k) CHECK(decompose(fib(k)).rho() == 1);
  CHECK(render(decompose(fib(6) + fib(4))) == "[1010]0");
  CHECK(render(decompose(fib(7) + fib(5))) == "[1010]00");
  CHECK_THROWS_AS(decompose(-3), std::domain_error);
}

TEST_CASE("decomposition structure") {
  for (std::uint64_t r = 1; r < 20000; ++r) {
    const auto dec = decompose(from_u64(r));
    REQUIRE(dec.rho() == oracle_rho(from_u64(r)));
    REQUIRE(dec.partial_sums.back() == from_u64(r));
    for (std::size_t i = 0; i < dec.blocks.size(); ++i) {
      const Block& b = dec.blocks[i];
      // The block alone: ones at low+1, low+3, ..., nothing else.
      const DigitWord w = encode(dec.block_value(i));
      REQUIRE(*w.highest_one() == b.top());
      REQUIRE(digit_sum(w) == b.patterns);
      if (i > 0) REQUIRE(b.low >= dec.blocks[i - 1].top() + 2);
      if (b.uses_virtual_zero()) REQUIRE(i == 0);
    }
  }
}

TEST_CASE("block process telescopes to the whole variation") {
  for (std::uint64_t n = 0; n < 3000; n += 7) {
    for (std::uint64_t r = 0; r < 1000; r += 17) {
      const auto dec = decompose(from_u64(r));
      const auto x = AdicPrefix::for_sum(from_u64(n), from_u64(r));
      const auto xs = block_process(x, dec);
      REQUIRE(static_cast<int>(xs.size()) == dec.rho());
      int sum = 0;
      for (int v : xs) sum += v;
      REQUIRE(sum == digit_sum_of(from_u64(n + r)) - digit_sum_of(from_u64(n)));
    }
  }
  DigitSampler rng(5);
  for (int t = 0; t < 300; ++t) {
    const BigInt r = fib(3 + t % 30);
    const auto x = sampled(rng, r, 10);
    const auto xs = block_process(x, decompose(r));
    REQUIRE(xs.size() == 1);
    CHECK(xs[0] == delta(x, r));
  }
  CHECK(block_process(AdicPrefix(5), decompose(0)).empty());
}

TEST_CASE("admissibility windows") {
  // 15 = [10]00[10]: blocks with low 2 and low 6, one pattern each.
  const auto dec = decompose(15);
  CHECK(admissible_window(dec, 0) == std::vector<int>{2, 3, 4, 5});
  CHECK(admissible_window(dec, 1) == std::vector<int>{4, 5, 6, 7, 8, 9});
  // F_9 + F_7 + F_5: one block, low 4, three patterns.
  const auto wide = decompose(fib(9) + fib(7) + fib(5));
  REQUIRE(wide.rho() == 1);
  CHECK(admissible_window(wide, 0) == std::vector<int>{2, 3, 4, 5, 8, 9, 10, 11});
  CHECK(stopping_condition_holds(AdicPrefix(20), wide, 0));
  const AdicPrefix x = AdicPrefix::from_word(DigitWord::parse("1000000000"), 20);  // a 1 at position 11
  CHECK_FALSE(stopping_condition_holds(x, wide, 0));
  CHECK_THROWS_AS(stopping_condition_holds(AdicPrefix(9), wide, 0), HorizonExhausted);
  CHECK_THROWS_AS(admissible_window(wide, 1), std::out_of_range);
}

TEST_CASE("carry isolation under the stopping condition") {
  DigitSampler rng(17);
  std::mt19937_64 gen(18);
  int checked = 0;
  for (int t = 0; t < 4000; ++t) {
    BigInt r = 0;
    for (int p = 2; p < 70; ++p) {
      if (gen() % 4 == 0) {
        r += fib(p);
        ++p;
      }
    }
    if (sgn(r) == 0) continue;
    const auto dec = decompose(r);
    const AdicPrefix x = sampled(rng, r, *encode(r).highest_one() + 3);
    const AdicPrefix full = add_int(x, r);
    for (std::size_t i = 0; i < dec.blocks.size(); ++i) {
      const Block& b = dec.blocks[i];
      if (b.uses_virtual_zero()) continue;
      if (!stopping_condition_holds(x, dec, i)) continue;
      const AdicPrefix part = add_int(x, dec.partial_sums[i]);
      const IsolationBounds ib = isolation_bounds(b);
      for (int p = 2; p <= ib.low_bound; ++p) REQUIRE(full.digit(p) == part.digit(p));
      for (int p = ib.high_bound; p <= x.horizon(); ++p) REQUIRE(part.digit(p) == x.digit(p));
      ++checked;
    }
  }
  CHECK(checked > 500);
}

TEST_CASE("first block action for r = F_k follows mu^(1)") {
  DigitSampler rng(23);
  const BigInt r = fib(12);
  const auto dec = decompose(r);
  const MuDistribution mu1 = compute_mu(1);
  const int n = 100000;
  std::map<int, long> hist;
  for (int s = 0; s < n; ++s) ++hist[block_process(sampled(rng, r, 16), dec)[0]];
  for (int d = -3; d <= 1; ++d) {
    const double p = mu_mass(mu1, d).to_double();
    CHECK(std::abs(static_cast<double>(hist[d]) / n - p) <= 4 * std::sqrt(p * (1 - p) / n));
  }
}
