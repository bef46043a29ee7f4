#include <cmath>
#include <map>
#include <optional>

#include "doctest.h"
#include "zecklab/adic.hpp"
#include "zecklab/mudist.hpp"

using namespace zeck;

namespace {

int oracle_delta(std::uint64_t n, std::uint64_t r) {
  return digit_sum(encode_u64(n + r)) - digit_sum(encode_u64(n));
}

// D on the order-k cylinder of n if D agrees on every extension of the name
// by five further digits; nullopt otherwise.
std::optional<int> decided_value(std::uint64_t n, int k, std::uint64_t r) {
  std::optional<int> v;
  const bool top_one = encode_u64(n).digit(k + 1) == 1;
  for (const auto& ext : admissible_words(5)) {
    if (top_one && ext.digit(2) == 1) continue;
    std::uint64_t m = n;
    for (int p = 2; p <= 6; ++p) {
      if (ext.digit(p)) m += fib_u64(k + p);
    }
    const int d = oracle_delta(m, r);
    if (v && *v != d) return std::nullopt;
    v = d;
  }
  return v;
}

GoldenNumber mu1_closed_form(int d) {
  if (d >= 2) return GoldenNumber();
  if (d == 1) return phi_pow(-2);
  return phi_pow(-(2 - 2 * d));
}

}  // namespace

TEST_CASE("mu^(4) matches the worked table") {
  const MuDistribution mu = compute_mu(4);
  CHECK(mu.ell == 4);
  CHECK(mu.tail_threshold == -1);
  CHECK(mu.max_value == 2);
  CHECK(mu_mass(mu, 3) == GoldenNumber());
  CHECK(mu_mass(mu, 2) == phi_pow(-4));
  CHECK(mu_mass(mu, 1) == phi_pow(-3));
  CHECK(mu_mass(mu, 0) == GoldenNumber(2) * phi_pow(-4));
  CHECK(mu_mass(mu, -1) == phi_pow(-4) + phi_pow(-6));
  for (int d = -1; d > -12; --d) CHECK(mu_mass(mu, d - 1) == mu_mass(mu, d) * phi_pow(-2));
  CHECK(mu.evaluations == 12);
}

TEST_CASE("mu^(1) closed form and mu^(F_l) = mu^(1)") {
  const MuDistribution mu = compute_mu(1);
  for (int d = -30; d <= 5; ++d) REQUIRE(mu_mass(mu, d) == mu1_closed_form(d));
  for (int l = 2; l <= 16; ++l) CHECK(verify_fib_identity(l).empty());
  CHECK(same_law(compute_mu(13), mu));
  CHECK_FALSE(same_law(compute_mu(4), mu));
  CHECK(verify_fib_identity(2).empty());
}

TEST_CASE("r = 0 is a point mass") {
  const MuDistribution mu = compute_mu(0);
  CHECK(mu_mass(mu, 0) == GoldenNumber(1));
  CHECK(mu_mass(mu, -1) == GoldenNumber());
  CHECK(mu_mass(mu, 1) == GoldenNumber());
  CHECK(total_mass(mu) == GoldenNumber(1));
  CHECK(moment(mu, 1).is_zero());
  CHECK_FALSE(mu.geometric_tail);
  CHECK_THROWS_AS(compute_mu(-1), std::domain_error);
}

TEST_CASE("masses are bracketed by brute-force cylinder enumeration") {
  for (std::uint64_t r = 1; r <= 40; ++r) {
    const MuDistribution mu = compute_mu(from_u64(r));
    const int k = mu.ell + 8;
    std::map<int, double> decided;
    double undecided = 0;
    for (std::uint64_t n = 0; n < fib_u64(k + 2); ++n) {
      const double mass = cylinder_measure(encode_u64(n).padded(static_cast<std::size_t>(k))).to_double();
      if (const auto v = decided_value(n, k, r)) {
        decided[*v] += mass;
      } else {
        undecided += mass;
      }
    }
    CHECK(undecided < 0.03);
    for (const auto& [d, lower] : decided) {
      const double m = mu_mass(mu, d).to_double();
      REQUIRE_MESSAGE(lower <= m + 1e-12, "r=", r, " d=", d);
      REQUIRE_MESSAGE(m <= lower + undecided + 1e-12, "r=", r, " d=", d);
    }
  }
}

TEST_CASE("normalization, zero mean and the evaluation count") {
  for (std::uint64_t r = 1; r <= 120; ++r) {
    const MuDistribution mu = compute_mu(from_u64(r));
    REQUIRE(total_mass(mu) == GoldenNumber(1));
    REQUIRE(moment(mu, 1).is_zero());
    REQUIRE(mu.evaluations == fib_u64(mu.ell + 2) + r);
    for (int d = mu.tail_threshold; d > mu.tail_threshold - 5; --d) {
      REQUIRE(mu_mass(mu, d - 1) * phi_pow(2) == mu_mass(mu, d));
    }
  }
}

TEST_CASE("higher moments against a truncated float sum") {
  for (std::uint64_t r : {1, 4, 7, 12, 33}) {
    const MuDistribution mu = compute_mu(from_u64(r));
    for (int p = 0; p <= 4; ++p) {
      double sum = 0;
      for (int d = mu.max_value; d >= mu.tail_threshold - 400; --d) sum += std::pow(d, p) * mu_mass(mu, d).to_double();
      const double exact = moment(mu, p).to_double();
      CHECK(exact == doctest::Approx(sum).epsilon(1e-9));
    }
  }
  // phi^-2 (1 + sum_j j^2 phi^-2j) = phi^-2 (1 + sqrt 5) = 2 phi - 2.
  CHECK(moment(compute_mu(1), 2) == GoldenNumber(-2, 2));
}

TEST_CASE("level re-evaluation finds constant values") {
  MuOptions opts;
  opts.recheck_levels = true;
  for (std::uint64_t r = 1; r <= 80; ++r) CHECK_NOTHROW(compute_mu(from_u64(r), opts));
}

TEST_CASE("NIZ levels agree with brute-force decidedness") {
  for (std::uint64_t r = 1; r <= 30; ++r) {
    const int ell = fib_index_floor(from_u64(r));
    for (int k = 2; k <= ell + 4; ++k) {
      std::vector<std::uint64_t> expected;
      for (std::uint64_t n = 0; n < fib_u64(k + 2); ++n) {
        if (!decided_value(n, k, r)) continue;
        // New at order k: its order-(k-1) parent was not decided yet.
        const DigitWord name = encode_u64(n).padded(static_cast<std::size_t>(k));
        const auto low = name.low_digits();
        const std::uint64_t parent = decode_u64(DigitWord::from_low_digits({low.begin(), low.end() - 1}));
        if (k > 2 && decided_value(parent, k - 1, r)) continue;
        expected.push_back(n);
      }
      const auto levels = niz_levels(from_u64(r), k);
      std::vector<std::uint64_t> got;
      for (const auto& lvl : levels) {
        got.push_back(to_u64(lvl.base));
        REQUIRE(lvl.value == *decided_value(to_u64(lvl.base), k, r));
        REQUIRE(lvl.cylinder.order() == k);
      }
      REQUIRE_MESSAGE(got == expected, "r=", r, " k=", k);
    }
  }
}

TEST_CASE("NIZ values for r = F_l") {
  for (int l = 3; l <= 14; ++l) {
    const BigInt r = fib(l);
    const auto a = niz_levels(r, l);
    CHECK(a.size() == fib_u64(l - 1));
    for (const auto& lvl : a) CHECK(lvl.value == 1);
    const auto b = niz_levels(r, l + 1);
    CHECK(b.size() == fib_u64(l));
    long zeros = 0, ones = 0;
    for (const auto& lvl : b) (lvl.value == 0 ? zeros : ones) += 1;
    CHECK(zeros == static_cast<long>(fib_u64(l - 1)));
    CHECK(ones == static_cast<long>(fib_u64(l - 2)));
    for (const auto& lvl : niz_levels(r, l + 2)) CHECK(lvl.value == 0);
    CHECK(niz_levels(r, l - 1).empty());
  }
}

TEST_CASE("Rokhlin towers") {
  const RokhlinTowers t = make_towers(4);
  REQUIRE(t.large.size() == 5);
  REQUIRE(t.small.size() == 3);
  CHECK(t.large.front().to_string() == "0000");
  CHECK(t.large.back().to_string() == "0101");
  CHECK(t.small.front().to_string() == "1000");
  CHECK(t.small.back().to_string() == "1010");
  for (int k = 1; k <= 14; ++k) {
    const RokhlinTowers a = make_towers(k), b = make_towers(k + 1);
    REQUIRE(a.large.size() == fib_u64(k + 1));
    REQUIRE(a.small.size() == fib_u64(k));
    // Cut and stack: the large tower of order k+1 is the large tower of
    // order k stacked under the small one, each name grown by a 0.
    std::vector<DigitWord> stacked;
    for (const auto* part : {&a.large, &a.small}) {
      for (const auto& w : *part) stacked.push_back(w.padded(static_cast<std::size_t>(k + 1)));
    }
    REQUIRE(stacked == b.large);
    for (std::size_t i = 0; i < b.small.size(); ++i) {
      REQUIRE(b.small[i].to_string() == "1" + a.large[i].to_string());
    }
  }
}

TEST_CASE("tower dump values are decided values") {
  for (std::uint64_t r = 0; r <= 20; ++r) {
    for (int k = 2; k <= 8; ++k) {
      const TowerDump dump = tower_dump(k, from_u64(r));
      REQUIRE(dump.levels.size() == fib_u64(k + 2));
      for (std::size_t i = 0; i < dump.levels.size(); ++i) {
        const auto& lvl = dump.levels[i];
        if (lvl.value) REQUIRE(decided_value(i, k, r) == lvl.value);
        if (lvl.in_niz) REQUIRE(lvl.value);
      }
    }
  }
  const TowerDump plain = tower_dump(4, std::nullopt);
  CHECK_FALSE(plain.levels[0].value);
  CHECK(plain.levels[5].small_tower);
  CHECK(plain.levels[5].index == 1);
  CHECK(plain.levels[5].parent->to_string() == "000");
  CHECK_THROWS_AS(tower_dump(21, std::nullopt), std::invalid_argument);
}
