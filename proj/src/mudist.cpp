#include "zecklab/mudist.hpp"

#include <algorithm>
#include <string>

#include "zecklab/adic.hpp"

namespace zeck {

namespace {

void require_order(int k, int lo, int hi, const char* what) {
  if (k < lo || k > hi) {
    throw std::invalid_argument(std::string(what) + ": order " + std::to_string(k) +
                                " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
}

// Half-open range of bases of the order-k NIZ levels, as integers.
struct BaseRange {
  BigInt first;
  BigInt end;
};

std::optional<BaseRange> niz_range(const BigInt& r, int ell, int k) {
  if (k < ell) return std::nullopt;
  if (k == ell) return BaseRange{0, fib(ell + 1) - r};
  if (k == ell + 1) return BaseRange{fib(ell + 1) - r, fib(ell + 2) - r};
  return BaseRange{fib(k) - r, fib(k)};
}

// Integer coefficients of phi^-j = (-1)^j (F_{j+1} - F_j phi).
struct InversePowers {
  std::vector<mpz_class> a, b;
  explicit InversePowers(int max_j) {
    for (int j = 0; j <= max_j; ++j) {
      mpz_class fa = fib(j + 1), fb = -fib0(j);
      if (j % 2 == 1) {
        fa = -fa;
        fb = -fb;
      }
      a.push_back(fa);
      b.push_back(fb);
    }
  }
};

// S_q = sum_{j>=1} j^q x^j at x = phi^-2, for q = 0..p.
std::vector<GoldenNumber> geometric_power_sums(int p) {
  const GoldenNumber x = phi_pow(-2);
  const GoldenNumber inv_one_minus_x = (GoldenNumber(1) - x).inverse();
  std::vector<GoldenNumber> s;
  s.push_back(x * inv_one_minus_x);
  std::vector<mpz_class> binom{1};
  for (int q = 1; q <= p; ++q) {
    std::vector<mpz_class> next(q + 1, 1);
    for (int i = 1; i < q; ++i) next[i] = binom[i - 1] + binom[i];
    binom = next;
    GoldenNumber acc;
    for (int i = 0; i < q; ++i) {
      const int sign = (q - i + 1) % 2 == 0 ? 1 : -1;
      acc += GoldenNumber(mpq_class(binom[i] * sign), 0) * s[i];
    }
    s.push_back(acc * inv_one_minus_x);
  }
  return s;
}

}  // namespace

RokhlinTowers make_towers(int k) {
  require_order(k, 1, 30, "make_towers");
  RokhlinTowers t;
  t.order = k;
  const std::uint64_t f1 = fib_u64(k + 1), f2 = fib_u64(k + 2);
  for (std::uint64_t n = 0; n < f2; ++n) {
    auto w = encode_u64(n).padded(static_cast<std::size_t>(k));
    (n < f1 ? t.large : t.small).push_back(std::move(w));
  }
  return t;
}

std::vector<NizLevel> niz_levels(const BigInt& r, int k) {
  if (r < 1) throw std::domain_error("niz_levels: r must be >= 1");
  if (k < 2) throw std::invalid_argument("niz_levels: order must be >= 2");
  const int ell = fib_index_floor(r);
  const auto range = niz_range(r, ell, k);
  std::vector<NizLevel> out;
  if (!range || range->first >= range->end) return out;
  DeltaScanner scan(r, range->first, range->end - 1);
  for (BigInt n = range->first; n < range->end; ++n) {
    NizLevel lvl;
    lvl.order = k;
    lvl.base = n;
    lvl.cylinder = Cylinder{encode(n).padded(static_cast<std::size_t>(k))};
    lvl.value = scan.value();
    out.push_back(std::move(lvl));
    if (n + 1 < range->end) scan.advance();
  }
  return out;
}

std::vector<std::pair<int, GoldenNumber>> MuDistribution::entries() const {
  std::vector<std::pair<int, GoldenNumber>> out;
  for (std::size_t i = 0; i < finite.size(); ++i) {
    out.emplace_back(tail_threshold + static_cast<int>(i), finite[i]);
  }
  return out;
}

MuDistribution compute_mu(const BigInt& r, const MuOptions& opts) {
  if (sgn(r) < 0) throw std::domain_error("compute_mu: r must be >= 0");
  MuDistribution mu;
  mu.r = r;
  if (sgn(r) == 0) {
    mu.finite = {GoldenNumber(1)};
    return mu;
  }
  const int ell = fib_index_floor(r);
  if (ell + 3 > kMaxU64FibIndex) throw std::length_error("compute_mu: r too large to enumerate");
  const std::uint64_t rr = to_u64(r);
  const std::uint64_t f1 = fib_u64(ell + 1), f2 = fib_u64(ell + 2), f3 = fib_u64(ell + 3);
  mu.ell = ell;

  // values[o - ell] holds D on the order-o levels, o = ell .. ell+3.
  std::vector<int> values[4];
  auto recheck = [&](std::uint64_t n, int order, int v) {
    if (!opts.recheck_levels) return;
    const BigInt other = from_u64(n) + fib(order + 3);
    if (delta(other, r) != v) {
      throw InvariantBreach("D not constant on the order-" + std::to_string(order) +
                            " level of " + std::to_string(n));
    }
  };

  {
    DeltaScanner scan(r, 0, from_u64(f2 - 1));
    for (std::uint64_t n = 0; n < f2; ++n) {
      const int v = scan.value();
      ++mu.evaluations;
      const int slot = n < f1 - rr ? 0 : (n < f2 - rr ? 1 : 2);
      values[slot].push_back(v);
      recheck(n, ell + slot, v);
      if (n + 1 < f2) scan.advance();
    }
  }
  {
    DeltaScanner scan(r, from_u64(f3 - rr), from_u64(f3 - 1));
    for (std::uint64_t n = f3 - rr; n < f3; ++n) {
      const int v = scan.value();
      ++mu.evaluations;
      values[3].push_back(v);
      recheck(n, ell + 3, v);
      if (n + 1 < f3) scan.advance();
    }
  }

  int m = values[2].empty() ? values[3].front() : values[2].front();
  int dmax = m;
  for (const auto& vs : values) {
    for (int v : vs) dmax = std::max(dmax, v);
  }
  for (int s : {2, 3}) {
    for (int v : values[s]) m = std::min(m, v);
  }
  for (int s : {0, 1}) {
    for (int v : values[s]) {
      if (v <= m) {
        throw InvariantBreach("value " + std::to_string(v) + " of an order-" +
                              std::to_string(ell + s) + " level is not above the tail threshold " +
                              std::to_string(m));
      }
    }
  }

  // counts[d - m][j]: number of phi^-j contributions to mu(d). A level of
  // order o carries mass phi^-o; the lower tower slices of orders ell+2 and
  // ell+3 spread their mass down the geometric ladder d = v, v-1, ..., m.
  const int width = dmax - m + 1;
  const int max_j = ell + 3 + 2 * (dmax - m);
  std::vector<std::vector<long>> counts(width, std::vector<long>(max_j + 1, 0));
  for (int s = 0; s < 2; ++s) {
    for (int v : values[s]) ++counts[v - m][ell + s];
  }
  for (int s = 2; s < 4; ++s) {
    for (int v : values[s]) {
      for (int d = v; d >= m; --d) ++counts[d - m][ell + s + 2 * (v - d)];
    }
  }
  const InversePowers pw(max_j);
  for (int i = 0; i < width; ++i) {
    mpz_class a = 0, b = 0;
    for (int j = 0; j <= max_j; ++j) {
      if (counts[i][j] == 0) continue;
      a += pw.a[j] * counts[i][j];
      b += pw.b[j] * counts[i][j];
    }
    mu.finite.emplace_back(mpq_class(a), mpq_class(b));
  }
  mu.tail_threshold = m;
  mu.max_value = dmax;
  mu.geometric_tail = true;
  return mu;
}

GoldenNumber mu_mass(const MuDistribution& mu, int d) {
  if (d > mu.max_value) return GoldenNumber();
  if (d >= mu.tail_threshold) return mu.finite[static_cast<std::size_t>(d - mu.tail_threshold)];
  if (!mu.geometric_tail) return GoldenNumber();
  return mu.finite.front() * phi_pow(-2 * (mu.tail_threshold - d));
}

GoldenNumber total_mass(const MuDistribution& mu) { return moment(mu, 0); }

GoldenNumber moment(const MuDistribution& mu, int p) {
  if (p < 0) throw std::invalid_argument("moment: order must be >= 0");
  GoldenNumber acc;
  for (const auto& [d, mass] : mu.entries()) {
    mpz_class dp = 1;
    for (int i = 0; i < p; ++i) dp *= d;
    acc += GoldenNumber(mpq_class(dp), 0) * mass;
  }
  if (!mu.geometric_tail) return acc;
  // sum_{j>=1} (m - j)^p mu(m) x^j, expanded binomially in j.
  const auto s = geometric_power_sums(p);
  const int m = mu.tail_threshold;
  GoldenNumber tail;
  mpz_class binom = 1;
  for (int i = 0; i <= p; ++i) {
    mpz_class mp = 1;
    for (int t = 0; t < p - i; ++t) mp *= m;
    const mpz_class coef = binom * mp * (i % 2 == 0 ? 1 : -1);
    tail += GoldenNumber(mpq_class(coef), 0) * s[i];
    binom = binom * (p - i) / (i + 1);
  }
  return acc + tail * mu.finite.front();
}

bool same_law(const MuDistribution& a, const MuDistribution& b) {
  if (a.geometric_tail != b.geometric_tail) return false;
  const int lo = std::min(a.tail_threshold, b.tail_threshold);
  const int hi = std::max(a.max_value, b.max_value);
  for (int d = lo; d <= hi; ++d) {
    if (!(mu_mass(a, d) == mu_mass(b, d))) return false;
  }
  return true;
}

std::string verify_fib_identity(int ell) {
  if (ell < 2) throw std::invalid_argument("verify_fib_identity: ell must be >= 2");
  const MuDistribution one = compute_mu(1);
  const MuDistribution fl = compute_mu(fib(ell));
  if (same_law(one, fl)) return {};
  const int lo = std::min(one.tail_threshold, fl.tail_threshold);
  const int hi = std::max(one.max_value, fl.max_value);
  for (int d = lo; d <= hi; ++d) {
    if (!(mu_mass(one, d) == mu_mass(fl, d))) {
      return "mass at d=" + std::to_string(d) + " differs: " + to_string(mu_mass(fl, d)) +
             " vs " + to_string(mu_mass(one, d));
    }
  }
  return "tail behaviour differs";
}

TowerDump tower_dump(int k, const std::optional<BigInt>& r) {
  require_order(k, 2, 20, "tower_dump");
  if (r && sgn(*r) < 0) throw std::domain_error("tower_dump: r must be >= 0");
  TowerDump dump;
  dump.order = k;
  dump.r = r;
  const std::uint64_t f1 = fib_u64(k + 1), f2 = fib_u64(k + 2);
  std::optional<BaseRange> niz;
  std::uint64_t rr = 0;
  if (r && sgn(*r) > 0) {
    niz = niz_range(*r, fib_index_floor(*r), k);
    rr = fits_u64(*r) ? to_u64(*r) : f2;
  }
  for (std::uint64_t n = 0; n < f2; ++n) {
    TowerLevel lvl;
    lvl.name = encode_u64(n).padded(static_cast<std::size_t>(k));
    lvl.small_tower = n >= f1;
    lvl.index = static_cast<std::size_t>(lvl.small_tower ? n - f1 + 1 : n + 1);
    const auto low = lvl.name.low_digits();
    std::vector<std::uint8_t> parent(low.begin(), low.end() - 1);
    lvl.parent_small_tower = !parent.empty() && parent.back() == 1;
    lvl.parent = DigitWord::from_low_digits(std::move(parent));
    if (r) {
      if (niz) {
        const BigInt bn = from_u64(n);
        lvl.in_niz = niz->first <= bn && bn < niz->end;
      }
      // D is decided at order k exactly when n + r stays inside the tower
      // that holds n.
      const bool decided = rr < f2 && (lvl.small_tower ? n + rr < f2 : n + rr < f1);
      if (decided) lvl.value = delta(from_u64(n), *r);
    }
    dump.levels.push_back(std::move(lvl));
  }
  return dump;
}

}  // namespace zeck
