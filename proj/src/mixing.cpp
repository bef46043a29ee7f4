#include "zecklab/mixing.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <string>
#include <thread>
#include <unordered_map>

#include "zecklab/blocks.hpp"
#include "zecklab/measure.hpp"

namespace zeck {

namespace {

const double kPhi = (1.0 + std::sqrt(5.0)) / 2.0;
constexpr long kMinSamples = 10'000;
constexpr int kWindow = 3;

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t worker_seed(std::uint64_t seed, int worker) {
  return splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(worker) + 1));
}

// Runs fill(worker_rng, first_row, end_row) over contiguous row chunks, one
// chunk per worker, so output depends only on (seed, threads).
template <class Fill>
void parallel_rows(long n, std::uint64_t seed, int threads, Fill fill) {
  threads = std::max(1, threads);
  if (threads > n) threads = static_cast<int>(std::max<long>(1, n));
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
  const long chunk = (n + threads - 1) / threads;
  for (int w = 0; w < threads; ++w) {
    const long lo = std::min(n, w * chunk), hi = std::min(n, lo + chunk);
    auto job = [&, w, lo, hi]() {
      try {
        DigitSampler rng(worker_seed(seed, w));
        fill(rng, lo, hi);
      } catch (...) {
        errors[static_cast<std::size_t>(w)] = std::current_exception();
      }
    };
    if (threads == 1) {
      job();
    } else {
      pool.emplace_back(job);
    }
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

// Past and future windows per row: past holds the newest `pw` values in
// chronological order, future the oldest `fw` values of the future part.
struct Windows {
  int pw = 0;
  int fw = 0;
  long n = 0;
  std::vector<int> past;
  std::vector<int> future;
};

std::uint64_t pack(const int* v, int count) {
  std::uint64_t key = static_cast<std::uint64_t>(count);
  for (int i = 0; i < count; ++i) key = (key << 16) | static_cast<std::uint16_t>(v[i] + 0x8000);
  return key;
}

struct Best {
  double estimate = 0.0;
  double stderr_ = 0.0;
};

enum class Coefficient { Alpha, Phi };

void consider(Best& best, double est, double se) {
  if (est > best.estimate || (est == best.estimate && se < best.stderr_)) best = {est, se};
}

// Delta-method standard error of P(AB) - P(A)P(B).
double alpha_stderr(double a, double b, double c, long n) {
  const double ez2 = c + b * b * a + a * a * b - 2 * b * c - 2 * a * c + 2 * a * b * c;
  const double mean = c - 2 * a * b;
  const double var = std::max(0.0, ez2 - mean * mean);
  return std::max(std::sqrt(var / static_cast<double>(n)), 1.0 / static_cast<double>(n));
}

// Add-one smoothed binomial error of P_A(B) - P(B).
double phi_stderr(long n_a, long n_ab, long n_b, long n) {
  const double pa = (static_cast<double>(n_ab) + 1) / (static_cast<double>(n_a) + 2);
  const double pb = (static_cast<double>(n_b) + 1) / (static_cast<double>(n) + 2);
  return std::sqrt(pa * (1 - pa) / static_cast<double>(n_a) + pb * (1 - pb) / static_cast<double>(n));
}

Best search(const Windows& w, Coefficient coef) {
  Best best;
  const long n = w.n;
  const double dn = static_cast<double>(n);
  for (int wa = 1; wa <= w.pw; ++wa) {
    for (int wb = 1; wb <= w.fw; ++wb) {
      std::unordered_map<std::uint64_t, long> ca, cb;
      std::unordered_map<std::uint64_t, std::unordered_map<std::uint64_t, long>> cab;
      for (long s = 0; s < n; ++s) {
        const auto ka = pack(&w.past[static_cast<std::size_t>(s) * w.pw + (w.pw - wa)], wa);
        const auto kb = pack(&w.future[static_cast<std::size_t>(s) * w.fw], wb);
        ++ca[ka];
        ++cb[kb];
        ++cab[ka][kb];
      }
      // Fixed iteration order keeps tie-breaking reproducible.
      std::map<std::uint64_t, long> sa(ca.begin(), ca.end()), sb(cb.begin(), cb.end());
      for (const auto& [ka, na] : sa) {
        const auto& row = cab[ka];
        for (const auto& [kb, nb] : sb) {
          const auto it = row.find(kb);
          const long nab = it == row.end() ? 0 : it->second;
          if (coef == Coefficient::Alpha) {
            const double a = na / dn, b = nb / dn, c = nab / dn;
            consider(best, std::abs(c - a * b), alpha_stderr(a, b, c, n));
          } else {
            const double pb = nb / dn;
            consider(best, std::abs(static_cast<double>(nab) / na - pb), phi_stderr(na, nab, nb, n));
            const long nac = n - na;
            if (nac > 0) {
              const long nacb = nb - nab;
              consider(best, std::abs(static_cast<double>(nacb) / nac - pb), phi_stderr(nac, nacb, nb, n));
            }
          }
        }
      }
    }
  }
  return best;
}

void require_args(int k, int p, long n) {
  if (k < 1) throw std::invalid_argument("gap k must be >= 1");
  if (p < 1) throw std::invalid_argument("prefix length p must be >= 1");
  if (n < kMinSamples) throw std::invalid_argument("at least 10000 samples are required");
}

Windows block_windows(const SampleMatrix& s, int k, int p) {
  Windows w;
  w.n = s.rows;
  w.pw = std::min(kWindow, p);
  const int first_future = k + p - 1;  // 0-based index of X_{k+p}
  w.fw = std::min(kWindow, s.width - first_future);
  w.past.resize(static_cast<std::size_t>(w.n) * w.pw);
  w.future.resize(static_cast<std::size_t>(w.n) * w.fw);
  for (long r = 0; r < w.n; ++r) {
    for (int i = 0; i < w.pw; ++i) w.past[static_cast<std::size_t>(r) * w.pw + i] = s.at(r, p - w.pw + i);
    for (int i = 0; i < w.fw; ++i) w.future[static_cast<std::size_t>(r) * w.fw + i] = s.at(r, first_future + i);
  }
  return w;
}

MixingEstimate block_estimate(const SampleMatrix& s, int k, int p, Coefficient coef) {
  require_args(k, p, s.rows);
  if (p > s.width) throw std::invalid_argument("prefix length p exceeds the number of blocks");
  MixingEstimate e;
  e.k = k;
  e.p = p;
  e.theorem_bound = block_alpha_bound(k);
  e.event_family = "value tuples of X_" + std::to_string(std::max(1, p - kWindow + 1)) + ".." +
                   std::to_string(p) + " (<=3) x value tuples of X_" + std::to_string(k + p) +
                   ".. (<=3)" + (coef == Coefficient::Phi ? ", with complements" : "");
  if (k + p > s.width) {
    e.event_family = "trivial future sigma-algebra";
    return e;
  }
  const Best b = search(block_windows(s, k, p), coef);
  e.estimate = b.estimate;
  e.stderr_ = b.stderr_;
  e.n_samples = s.rows;
  return e;
}

}  // namespace

double coordinate_phi_bound(int k) { return 2.0 / std::pow(kPhi, 2.0 * k); }

double block_alpha_bound(int k) {
  return 12.0 * std::pow(1.0 - std::pow(kPhi, -8.0), k / 6.0) + std::pow(kPhi, -2.0 * k);
}

int default_threads() {
  if (const char* env = std::getenv("ZECKLAB_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0 && v <= 1024) return static_cast<int>(v);
  }
  return 1;
}

MixingEstimate estimate_phi_coordinates(int k, int p, long n, std::uint64_t seed, int threads) {
  require_args(k, p, n);
  Windows w;
  w.n = n;
  w.pw = std::min(kWindow, p);
  w.fw = kWindow;
  w.past.resize(static_cast<std::size_t>(n) * w.pw);
  w.future.resize(static_cast<std::size_t>(n) * w.fw);
  // Row s draws positions 2..k+p+3; the past window ends at p+1 and the
  // future one starts at k+p+1.
  const int horizon = k + p + kWindow;
  parallel_rows(n, seed, threads, [&](DigitSampler& rng, long lo, long hi) {
    for (long s = lo; s < hi; ++s) {
      const AdicPrefix x = sample_prefix(rng, horizon);
      for (int i = 0; i < w.pw; ++i) {
        w.past[static_cast<std::size_t>(s) * w.pw + i] = x.digit(p + 1 - w.pw + 1 + i);
      }
      for (int i = 0; i < w.fw; ++i) w.future[static_cast<std::size_t>(s) * w.fw + i] = x.digit(k + p + 1 + i);
    }
  });
  const Best b = search(w, Coefficient::Phi);
  MixingEstimate e;
  e.k = k;
  e.p = p;
  e.estimate = b.estimate;
  e.stderr_ = b.stderr_;
  e.n_samples = n;
  e.theorem_bound = coordinate_phi_bound(k);
  e.event_family = "cylinders on x_" + std::to_string(p + 2 - w.pw) + ".." + std::to_string(p + 1) +
                   " and complements x cylinders on x_" + std::to_string(k + p + 1) + ".." +
                   std::to_string(k + p + kWindow);
  return e;
}

SampleMatrix sample_block_process(const BigInt& r, long n, std::uint64_t seed, int threads) {
  if (r < 1) throw std::invalid_argument("sample_block_process: r must be >= 1");
  if (n < 1) throw std::invalid_argument("sample_block_process: n must be >= 1");
  const BlockDecomposition dec = decompose(r);
  SampleMatrix s;
  s.width = dec.rho();
  s.rows = n;
  s.values.resize(static_cast<std::size_t>(n) * s.width);
  const int horizon = *encode(r).highest_one() + 3;
  parallel_rows(n, seed, threads, [&](DigitSampler& rng, long lo, long hi) {
    for (long row = lo; row < hi; ++row) {
      const AdicPrefix x = extend_until_safe(rng, sample_prefix(rng, horizon), r);
      const auto xs = block_process(x, dec);
      std::copy(xs.begin(), xs.end(), s.values.begin() + static_cast<std::ptrdiff_t>(row) * s.width);
    }
  });
  return s;
}

MixingEstimate estimate_alpha_blocks(const SampleMatrix& s, int k, int p) {
  return block_estimate(s, k, p, Coefficient::Alpha);
}

MixingEstimate estimate_alpha_blocks(const BigInt& r, int k, int p, long n, std::uint64_t seed,
                                     int threads) {
  require_args(k, p, n);
  return estimate_alpha_blocks(sample_block_process(r, n, seed, threads), k, p);
}

MixingEstimate estimate_phi_blocks(const SampleMatrix& s, int k, int p) {
  return block_estimate(s, k, p, Coefficient::Phi);
}

double DensityHistogram::density(int d) const {
  for (const auto& [v, c] : bins) {
    if (v == d) return static_cast<double>(c) / static_cast<double>(count);
  }
  return 0.0;
}

DensityHistogram density_histogram(const BigInt& r, std::uint64_t count) {
  if (count < 1) throw std::invalid_argument("density needs at least one integer");
  if (sgn(r) < 0) throw std::domain_error("density: r must be >= 0");
  DensityHistogram h;
  h.r = r;
  h.count = count;
  std::map<int, std::uint64_t> bins;
  DeltaScanner scan(r, 0, from_u64(count - 1));
  for (std::uint64_t n = 0; n < count; ++n) {
    ++bins[scan.value()];
    if (n + 1 < count) scan.advance();
  }
  h.bins.assign(bins.begin(), bins.end());
  return h;
}

double empirical_density(const BigInt& r, int d, std::uint64_t count) {
  return density_histogram(r, count).density(d);
}

}  // namespace zeck
