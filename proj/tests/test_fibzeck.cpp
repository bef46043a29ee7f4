#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "zecklab/fibzeck.hpp"

using namespace zeck;

namespace {

// Every admissible MSB-first string of length `len`, built by recursion on
// the leading digit rather than through encode.
void admissible_strings(int len, std::string prefix, std::vector<std::string>& out) {
  if (static_cast<int>(prefix.size()) == len) {
    out.push_back(prefix);
    return;
  }
  admissible_strings(len, prefix + '0', out);
  if (prefix.empty() || prefix.back() == '0') admissible_strings(len, prefix + '1', out);
}

}  // namespace

TEST_CASE("fib values") {
  CHECK(fib(1) == 1);
  CHECK(fib(2) == 1);
  CHECK(fib(7) == 13);
  CHECK(fib(18) == 2584);
  CHECK(fib(93) == BigInt("12200160415121876738"));
  CHECK(fib(100) == BigInt("354224848179261915075"));
  CHECK(fib(200) == fib(199) + fib(198));
  CHECK(fib0(0) == 0);
  CHECK_THROWS_AS(fib(0), std::domain_error);
  CHECK_THROWS_AS(fib_u64(94), std::domain_error);
}

TEST_CASE("fib_index_floor brackets r") {
  CHECK(fib_index_floor(1) == 2);
  CHECK(fib_index_floor(4) == 4);
  CHECK(fib_index_floor(13) == 7);
  for (int r = 1; r < 5000; ++r) {
    const int l = fib_index_floor(r);
    CHECK(fib(l) <= r);
    CHECK(r < fib(l + 1));
  }
  const BigInt big = fib(150) + 7;
  CHECK(fib_index_floor(big) == 150);
  CHECK_THROWS_AS(fib_index_floor(0), std::domain_error);
}

TEST_CASE("encode examples") {
  CHECK(encode(0).empty());
  CHECK(encode(0).to_string() == "0");
  CHECK(encode(1).to_string() == "1");
  CHECK(encode(4).to_string() == "101");
  CHECK(encode(12).to_string() == "10101");
  CHECK(encode(fib(20)).to_string() == "1" + std::string(18, '0'));
  CHECK_THROWS_AS(encode(-1), std::domain_error);
}

TEST_CASE("parse rejects inadmissible words") {
  CHECK(decode(DigitWord::parse("101")) == 4);
  try {
    DigitWord::parse("0110");
    FAIL("expected a ValidationError");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("adjacent ones") != std::string::npos);
  }
  CHECK_THROWS_AS(DigitWord::parse("1021"), ValidationError);
  CHECK_THROWS_AS(DigitWord::from_low_digits({1, 1}), ValidationError);
}

TEST_CASE("uniqueness: encode(decode(w)) == w for canonical words up to length 25") {
  long checked = 0;
  for (int len = 1; len <= 25; ++len) {
    std::vector<std::string> words;
    admissible_strings(len, "", words);
    CHECK(static_cast<long>(words.size()) == static_cast<long>(fib_u64(len + 2)));
    for (const auto& s : words) {
      if (s[0] != '1') continue;
      const DigitWord w = DigitWord::parse(s);
      REQUIRE(encode(decode(w)) == w);
      ++checked;
    }
  }
  CHECK(checked == static_cast<long>(fib_u64(27)) - 1);
}

TEST_CASE("round trip and greedy structure on random big integers") {
  std::mt19937_64 gen(11);
  gmp_randclass rnd(gmp_randinit_default);
  rnd.seed(12345);
  for (int i = 0; i < 300; ++i) {
    const BigInt n = rnd.get_z_bits(1 + static_cast<unsigned long>(gen() % 700));
    const DigitWord w = encode(n);
    CHECK(w.is_canonical());
    CHECK(decode(w) == n);
    CHECK_NOTHROW(validate_admissible(w.low_digits()));
  }
  for (std::uint64_t n = 0; n < 100000; ++n) {
    REQUIRE(decode_u64(encode_u64(n)) == n);
  }
}

TEST_CASE("encoding is monotone in lexicographic order") {
  for (std::uint64_t n = 0; n + 1 < 20000; ++n) {
    const DigitWord a = encode_u64(n), b = encode_u64(n + 1);
    const std::size_t len = std::max(a.length(), b.length());
    REQUIRE(a.padded(len).to_string() < b.padded(len).to_string());
  }
}

TEST_CASE("digit sums") {
  CHECK(digit_sum(encode(4)) == 2);
  CHECK(digit_sum_of(12) == 3);
  CHECK(digit_sum(DigitWord()) == 0);
  // Popcount of the rendering as an independent count.
  for (std::uint64_t n = 0; n < 3000; ++n) {
    const std::string s = encode_u64(n).to_string();
    REQUIRE(digit_sum(encode_u64(n)) == static_cast<int>(std::count(s.begin(), s.end(), '1')));
  }
}

TEST_CASE("word accessors") {
  const DigitWord w = DigitWord::parse("00101");
  CHECK(w.length() == 5);
  CHECK(w.digit(2) == 1);
  CHECK(w.digit(3) == 0);
  CHECK(w.digit(4) == 1);
  CHECK(w.digit(40) == 0);
  CHECK(*w.highest_one() == 4);
  CHECK_FALSE(w.is_canonical());
  CHECK(w.canonical().to_string() == "101");
  CHECK(w.canonical() != w);
  CHECK(decode(w) == decode(w.canonical()));
  CHECK(encode(4).padded(6).to_string() == "000101");
  CHECK_THROWS_AS(encode(4).padded(2), std::invalid_argument);
}
