// zecklab: command-line front end for the Zeckendorf digit-sum toolkit.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "zecklab/adic.hpp"
#include "zecklab/blocks.hpp"
#include "zecklab/fibzeck.hpp"
#include "zecklab/golden.hpp"
#include "zecklab/json_io.hpp"
#include "zecklab/measure.hpp"
#include "zecklab/mixing.hpp"
#include "zecklab/mudist.hpp"

namespace {

using json = nlohmann::ordered_json;
using zeck::BigInt;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerify = 2;
constexpr int kExitInternal = 3;

constexpr std::uint64_t kDefaultSeed = 20240601;

BigInt non_negative(const std::string& text, const char* what) {
  const BigInt v = zeck::parse_bigint(text);
  if (sgn(v) < 0) throw std::invalid_argument(std::string(what) + " must be non-negative");
  return v;
}

void print_json(const json& j) { std::cout << j.dump() << '\n'; }

void print_golden(const zeck::GoldenNumber& g, const std::string& format) {
  if (format == "plain") {
    std::cout << zeck::to_string(g) << '\n';
  } else {
    print_json(zeck::golden_to_json(g));
  }
}

struct Options {
  std::string format = "json";
  int threads = 0;
  // encode / decode / delta / add
  std::string a, b;
  // mu
  std::optional<int> d, moment_p;
  std::vector<int> range;
  bool verify = false;
  bool recheck = false;
  // mu-empirical
  std::string count;
  // towers
  int k = 0;
  std::optional<std::string> r_opt;
  // mixing
  std::optional<int> mk, mp;
  long samples = 100000;
  std::uint64_t seed = kDefaultSeed;
  bool integer_x = false;
  std::optional<int> horizon;
};

int cmd_mu(const Options& o) {
  const BigInt r = non_negative(o.a, "r");
  zeck::MuOptions mo;
  mo.recheck_levels = o.recheck || o.verify;
  const auto mu = zeck::compute_mu(r, mo);
  int status = kExitOk;
  if (o.verify) {
    const bool norm = zeck::total_mass(mu) == zeck::GoldenNumber(1);
    const bool mean = zeck::moment(mu, 1).is_zero();
    bool tail = true;
    if (mu.geometric_tail) {
      for (int j = 1; j <= 8; ++j) {
        const int d = mu.tail_threshold - j;
        tail = tail && zeck::mu_mass(mu, d) * zeck::phi_pow(2) == zeck::mu_mass(mu, d + 1);
      }
    }
    if (!(norm && mean && tail)) {
      std::cerr << "verification failed:" << (norm ? "" : " total mass") << (mean ? "" : " mean")
                << (tail ? "" : " tail") << '\n';
      status = kExitVerify;
    }
  }
  if (o.d) {
    print_golden(zeck::mu_mass(mu, *o.d), o.format);
  } else if (o.moment_p) {
    print_golden(zeck::moment(mu, *o.moment_p), o.format);
  } else if (o.format == "csv") {
    const int lo = o.range.size() == 2 ? o.range[0] : mu.tail_threshold - 4;
    const int hi = o.range.size() == 2 ? o.range[1] : mu.max_value;
    std::cout << zeck::mu_to_csv(mu, lo, hi);
  } else if (o.format == "plain") {
    const int lo = o.range.size() == 2 ? o.range[0] : mu.tail_threshold;
    const int hi = o.range.size() == 2 ? o.range[1] : mu.max_value;
    for (int d = lo; d <= hi; ++d) {
      const auto m = zeck::mu_mass(mu, d);
      std::cout << d << ' ' << zeck::to_string(m) << ' ' << zeck::format_float(m.to_double()) << '\n';
    }
    if (mu.geometric_tail) std::cout << "below " << mu.tail_threshold << ": ratio 2-phi\n";
  } else {
    json j = zeck::mu_to_json(mu);
    if (o.range.size() == 2) {
      json entries = json::array();
      for (int d = o.range[0]; d <= o.range[1]; ++d) {
        entries.push_back(json{{"d", d}, {"mass", zeck::golden_to_json(zeck::mu_mass(mu, d))}});
      }
      j["entries"] = entries;
    }
    print_json(j);
  }
  return status;
}

int cmd_towers(const Options& o) {
  std::optional<BigInt> r;
  if (o.r_opt) r = non_negative(*o.r_opt, "r");
  const auto dump = zeck::tower_dump(o.k, r);
  if (o.format != "plain") {
    print_json(zeck::tower_dump_to_json(dump));
    return kExitOk;
  }
  for (bool small : {false, true}) {
    std::cout << (small ? "small" : "large") << " tower (top first):\n";
    for (auto it = dump.levels.rbegin(); it != dump.levels.rend(); ++it) {
      if (it->small_tower != small) continue;
      std::cout << "  " << it->index << ' ' << it->name.to_string();
      if (it->value) std::cout << " D=" << *it->value;
      if (it->in_niz) std::cout << " niz";
      std::cout << '\n';
    }
  }
  return kExitOk;
}

int cmd_blocks(const Options& o) {
  const auto dec = zeck::decompose(non_negative(o.a, "r"));
  if (o.format == "plain") {
    std::cout << zeck::encode(dec.r).to_string() << " -> " << zeck::render(dec) << " (rho=" << dec.rho()
              << ")\n";
  } else {
    print_json(zeck::blocks_to_json(dec));
  }
  return kExitOk;
}

int cmd_mixing(const std::string& which, const Options& o) {
  const int threads = o.threads > 0 ? o.threads : zeck::default_threads();
  const int p = o.mp.value_or(which == "coords" ? 1 : 2);
  const int k_lo = o.mk.value_or(1), k_hi = o.mk.value_or(which == "coords" ? 10 : 12);
  std::vector<zeck::MixingEstimate> rows;
  if (which == "coords") {
    for (int k = k_lo; k <= k_hi; ++k) rows.push_back(zeck::estimate_phi_coordinates(k, p, o.samples, o.seed, threads));
  } else {
    if (!o.r_opt) throw std::invalid_argument("mixing blocks needs --r");
    const BigInt r = non_negative(*o.r_opt, "r");
    if (o.samples < 10000) throw std::invalid_argument("at least 10000 samples are required");
    const auto s = zeck::sample_block_process(r, o.samples, o.seed, threads);
    for (int k = k_lo; k <= k_hi; ++k) rows.push_back(zeck::estimate_alpha_blocks(s, k, p));
  }
  if (o.format == "json") {
    json out = json::array();
    for (const auto& e : rows) {
      out.push_back(json{{"k", e.k},
                         {"p", e.p},
                         {"estimate", json::parse(zeck::format_float(e.estimate))},
                         {"stderr", json::parse(zeck::format_float(e.stderr_))},
                         {"n_samples", e.n_samples},
                         {"event_family", e.event_family},
                         {"theorem_bound", json::parse(zeck::format_float(e.theorem_bound))},
                         {"pass", e.consistent_with_bound()}});
    }
    print_json(out);
  } else {
    std::cout << zeck::mixing_csv_header() << '\n';
    for (const auto& e : rows) std::cout << zeck::mixing_csv_row(e) << '\n';
  }
  bool ok = true;
  for (const auto& e : rows) ok = ok && e.consistent_with_bound();
  return ok ? kExitOk : kExitVerify;
}

// Fast consistency battery; each line is "PASS <name>" or "FAIL <name>".
int cmd_verify_all() {
  bool all = true;
  auto report = [&](const std::string& name, bool ok) {
    std::cout << (ok ? "PASS " : "FAIL ") << name << '\n';
    all = all && ok;
  };
  using zeck::GoldenNumber;
  using zeck::phi_pow;
  {
    const auto mu = zeck::compute_mu(4);
    report("mu(4) table", zeck::mu_mass(mu, 2) == phi_pow(-4) && zeck::mu_mass(mu, 1) == phi_pow(-3) &&
                              zeck::mu_mass(mu, 0) == GoldenNumber(2) * phi_pow(-4) &&
                              zeck::mu_mass(mu, -1) == phi_pow(-4) + phi_pow(-6) &&
                              mu.tail_threshold == -1);
  }
  {
    bool ok = true;
    for (int l = 3; l <= 14; ++l) ok = ok && zeck::verify_fib_identity(l).empty();
    report("mu(F_l) = mu(1), l = 3..14", ok);
  }
  {
    bool ok = true;
    for (int r = 1; r <= 100; ++r) {
      const auto mu = zeck::compute_mu(r);
      ok = ok && zeck::total_mass(mu) == GoldenNumber(1) && zeck::moment(mu, 1).is_zero();
    }
    report("normalization and zero mean, r = 1..100", ok);
  }
  {
    bool ok = true;
    for (std::uint64_t n = 0; n < 3000 && ok; n += 7) {
      for (std::uint64_t r = 0; r < 300 && ok; r += 11) {
        const auto x = zeck::AdicPrefix::for_sum(zeck::from_u64(n), zeck::from_u64(r));
        ok = zeck::decode(zeck::add_int(x, zeck::from_u64(r)).to_word()) == zeck::from_u64(n + r);
      }
    }
    report("carry engine against integer addition", ok);
  }
  {
    bool ok = true;
    for (int m = 0; m <= 14; ++m) ok = ok && zeck::measure_where(m, [](const zeck::DigitWord&) { return true; }) == GoldenNumber(1);
    report("cylinder masses sum to 1, orders 0..14", ok);
  }
  return all ? kExitOk : kExitVerify;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Zeckendorf digit-sum variation toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv", "plain"}));
  app.add_option("--threads", o.threads, "Worker threads (default: ZECKLAB_THREADS or 1)")->check(CLI::PositiveNumber);

  auto* enc = app.add_subcommand("encode", "Zeckendorf digits of n");
  enc->add_option("n", o.a)->required();
  auto* dec = app.add_subcommand("decode", "Integer named by a digit word");
  dec->add_option("word", o.a)->required();
  auto* add = app.add_subcommand("add", "Add r to a digit prefix (positions 2..len+1)");
  add->add_option("x", o.a, "Digit word, or an integer with --integer")->required();
  add->add_option("r", o.b)->required();
  add->add_flag("--integer", o.integer_x, "Read x as an integer");
  add->add_option("--horizon", o.horizon, "Use exactly positions 2..H instead of zero padding");
  auto* del = app.add_subcommand("delta", "s(n + r) - s(n)");
  del->add_option("n", o.a)->required();
  del->add_option("r", o.b)->required();
  auto* mu = app.add_subcommand("mu", "Exact law of the digit-sum variation for r");
  mu->add_option("r", o.a)->required();
  mu->add_option("--d", o.d, "Mass at a single value");
  mu->add_option("--range", o.range, "Value range A B")->expected(2);
  mu->add_option("--moment", o.moment_p, "Exact moment of order P")->check(CLI::NonNegativeNumber);
  mu->add_flag("--verify", o.verify, "Check normalization, mean and tail; exit 2 on failure");
  mu->add_flag("--recheck", o.recheck, "Re-evaluate each level on a second representative");
  auto* emp = app.add_subcommand("mu-empirical", "Density of n < N with s(n + r) - s(n) = d");
  emp->add_option("r", o.a)->required();
  emp->add_option("d", o.b)->required();
  emp->add_option("N", o.count)->required();
  auto* tow = app.add_subcommand("towers", "Rokhlin towers of order k");
  tow->add_option("k", o.k)->required();
  tow->add_option("--r", o.r_opt, "Annotate levels with the variation for r");
  auto* blk = app.add_subcommand("blocks", "Block decomposition of r");
  blk->add_option("r", o.a)->required();
  auto* mix = app.add_subcommand("mixing", "Monte Carlo mixing estimates");
  mix->require_subcommand(1);
  for (const char* which : {"coords", "blocks"}) {
    auto* sub = mix->add_subcommand(which, which == std::string("coords") ? "phi-mixing of the digits"
                                                                          : "alpha-mixing of the block process");
    sub->add_option("--k", o.mk, "Gap (default: a range)")->check(CLI::PositiveNumber);
    sub->add_option("--p", o.mp, "Prefix length")->check(CLI::PositiveNumber);
    sub->add_option("--samples", o.samples, "Number of samples");
    sub->add_option("--seed", o.seed, "Seed (default 20240601)");
    if (which == std::string("blocks")) sub->add_option("--r", o.r_opt, "Integer whose blocks are added")->required();
  }
  auto* all = app.add_subcommand("verify-all", "Quick consistency battery");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }
  if (mix->parsed()) {
    if (o.format == "json" && app.get_option("--format")->count() == 0) o.format = "csv";
  }

  try {
    if (enc->parsed()) {
      const std::string w = zeck::encode(non_negative(o.a, "n")).to_string();
      o.format == "plain" ? void(std::cout << w << '\n') : print_json(json(w));
    } else if (dec->parsed()) {
      std::cout << zeck::decode(zeck::DigitWord::parse(o.a)).get_str() << '\n';
    } else if (add->parsed()) {
      const BigInt r = non_negative(o.b, "r");
      const zeck::DigitWord w =
          o.integer_x ? zeck::encode(non_negative(o.a, "x")) : zeck::DigitWord::parse(o.a);
      // Without --horizon the word is a finite integer, so zero padding is
      // exact and makes the addition safe.
      const zeck::AdicPrefix x =
          o.horizon ? zeck::AdicPrefix::from_word(w, *o.horizon)
                    : zeck::AdicPrefix::from_word(
                          w, std::max<int>(static_cast<int>(w.length()) + 1,
                                           zeck::encode(r).highest_one().value_or(1)) + 3);
      const auto y = zeck::add_int(x, r);
      if (o.format == "plain") {
        std::cout << y.to_word().to_string() << '\n';
      } else {
        print_json(json{{"x", x.to_word().to_string()},
                        {"r", r.get_str()},
                        {"sum", y.to_word().to_string()},
                        {"delta", y.digit_sum() - x.digit_sum()}});
      }
    } else if (del->parsed()) {
      std::cout << zeck::delta(non_negative(o.a, "n"), non_negative(o.b, "r")) << '\n';
    } else if (mu->parsed()) {
      return cmd_mu(o);
    } else if (emp->parsed()) {
      const BigInt n = non_negative(o.count, "N");
      if (n < 1 || !zeck::fits_u64(n)) throw std::invalid_argument("N must be a positive 64-bit integer");
      const int d = std::stoi(o.b);
      const double v = zeck::empirical_density(non_negative(o.a, "r"), d, zeck::to_u64(n));
      o.format == "plain" ? void(std::cout << zeck::format_float(v) << '\n')
                          : print_json(json::parse(zeck::format_float(v)));
    } else if (tow->parsed()) {
      return cmd_towers(o);
    } else if (blk->parsed()) {
      return cmd_blocks(o);
    } else if (mix->parsed()) {
      for (auto* sub : mix->get_subcommands()) return cmd_mixing(sub->get_name(), o);
    } else if (all->parsed()) {
      return cmd_verify_all();
    }
  } catch (const zeck::InvariantBreach& e) {
    std::cerr << "internal invariant breach: " << e.what() << '\n';
    return kExitInternal;
  } catch (const zeck::HorizonExhausted& e) {
    std::cerr << "horizon exhausted: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {  // includes ValidationError
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::length_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitOk;
}
