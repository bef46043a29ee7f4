#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "zecklab/bigint.hpp"
#include "zecklab/fibzeck.hpp"
#include "zecklab/golden.hpp"
#include "zecklab/measure.hpp"

namespace zeck {

// An internal consistency check failed; indicates a bug, not bad input.
class InvariantBreach : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Rokhlin towers of order k: the large tower stacks the cylinders of the
// integers 0..F_{k+1}-1, the small one those of F_{k+1}..F_{k+2}-1, each as a
// k-digit name from bottom to top.
struct RokhlinTowers {
  int order = 0;
  std::vector<DigitWord> large;
  std::vector<DigitWord> small;
};

// 1 <= k <= 30.
RokhlinTowers make_towers(int k);

// One level of the order-k partition on which D^(r) is already decided at
// order k but not at order k-1.
struct NizLevel {
  int order = 0;
  BigInt base;        // integer at the bottom of the level's cylinder
  Cylinder cylinder;  // name of length `order`
  int value = 0;      // D^(r) on the whole level
};

// Levels of order k for r >= 1, k >= 2, ordered by base.
std::vector<NizLevel> niz_levels(const BigInt& r, int k);

// Law of D^(r) = s(x + r) - s(x) under the Parry measure. The finite part
// holds masses for d in [tail_threshold, max_value]; below the threshold the
// mass decays geometrically: mu(d - j) = mu(d) phi^-2j.
struct MuDistribution {
  BigInt r;
  int ell = 0;  // F_ell <= r < F_{ell+1}; 0 when r = 0
  int tail_threshold = 0;
  int max_value = 0;
  bool geometric_tail = false;
  std::vector<GoldenNumber> finite;     // finite[i] is mu(tail_threshold + i)
  std::size_t evaluations = 0;          // D evaluations spent

  std::vector<std::pair<int, GoldenNumber>> entries() const;
};

struct MuOptions {
  // Re-evaluates every level on a second representative and throws
  // InvariantBreach if the values differ.
  bool recheck_levels = false;
};

// Throws std::domain_error for r < 0 and std::length_error when r is too
// large to enumerate (F_{ell+3} must fit in 64 bits).
MuDistribution compute_mu(const BigInt& r, const MuOptions& opts = {});

GoldenNumber mu_mass(const MuDistribution& mu, int d);

// Exact total mass (finite part plus the closed-form tail sum).
GoldenNumber total_mass(const MuDistribution& mu);

// E[D^p] for p >= 0, exact, including the geometric tail.
GoldenNumber moment(const MuDistribution& mu, int p);

bool same_law(const MuDistribution& a, const MuDistribution& b);

// Compares mu^(F_ell) with mu^(1) entry by entry. Returns an empty string when
// they agree, otherwise a description of the first difference.
std::string verify_fib_identity(int ell);

// The position of every order-k level in the towers, with parents at order
// k-1 and, when r is given, the value of D^(r) on levels where it is
// already determined at order k.
struct TowerLevel {
  DigitWord name;
  bool small_tower = false;
  std::size_t index = 0;  // 1-based height within its tower
  std::optional<DigitWord> parent;
  bool parent_small_tower = false;
  bool in_niz = false;
  std::optional<int> value;
};

struct TowerDump {
  int order = 0;
  std::optional<BigInt> r;
  std::vector<TowerLevel> levels;
};

// 2 <= k <= 20.
TowerDump tower_dump(int k, const std::optional<BigInt>& r);

}  // namespace zeck
