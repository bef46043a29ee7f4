#include "zecklab/json_io.hpp"

#include <cstdio>
#include <sstream>

namespace zeck {


namespace {

// Emits the float as a raw JSON number token with 12 significant digits.
Json float_json(double v) { return Json::parse(format_float(v)); }

}  // namespace

std::string format_float(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  std::string s(buf);
  if (s == "-0") s = "0";
  return s;
}

Json golden_to_json(const GoldenNumber& g) {
  return Json{{"a", g.a().get_str()}, {"b", g.b().get_str()}, {"approx", float_json(g.to_double())}};
}

GoldenNumber golden_from_json(const Json& j) {
  mpq_class a(j.at("a").get<std::string>()), b(j.at("b").get<std::string>());
  return GoldenNumber(a, b);
}

Json mu_to_json(const MuDistribution& mu) {
  Json entries = Json::array();
  for (const auto& [d, mass] : mu.entries()) {
    Json e = golden_to_json(mass);
    entries.push_back(Json{{"d", d}, {"mass", e}});
  }
  Json out{{"r", mu.r.get_str()},
           {"ell", mu.ell},
           {"tail_threshold", mu.tail_threshold},
           {"entries", entries}};
  if (mu.geometric_tail) {
    // mu(d - 1) / mu(d) = phi^-2 = 2 - phi.
    const GoldenNumber ratio = phi_pow(-2);
    out["tail_ratio"] = Json{{"a", ratio.a().get_str()}, {"b", ratio.b().get_str()}};
  } else {
    out["tail_ratio"] = Json{{"a", "0"}, {"b", "0"}};
  }
  out["checksums"] = Json{{"total_mass", to_string(total_mass(mu))}, {"mean", to_string(moment(mu, 1))}};
  out["evaluations"] = mu.evaluations;
  return out;
}

std::string mu_to_csv(const MuDistribution& mu, int lo, int hi) {
  std::ostringstream os;
  os << "d,mass_a,mass_b,mass_float\n";
  for (int d = lo; d <= hi; ++d) {
    const GoldenNumber m = mu_mass(mu, d);
    os << d << ',' << m.a().get_str() << ',' << m.b().get_str() << ',' << format_float(m.to_double()) << '\n';
  }
  return os.str();
}

Json tower_dump_to_json(const TowerDump& dump) {
  Json levels = Json::array();
  for (const auto& lvl : dump.levels) {
    Json j{{"name", lvl.name.to_string()},
           {"tower", lvl.small_tower ? "small" : "large"},
           {"index", lvl.index}};
    if (lvl.parent) {
      j["parent"] = lvl.parent->to_string();
      j["parent_tower"] = lvl.parent_small_tower ? "small" : "large";
    }
    if (dump.r) {
      j["in_niz"] = lvl.in_niz;
      j["value"] = lvl.value ? Json(*lvl.value) : Json(nullptr);
    }
    levels.push_back(std::move(j));
  }
  Json out{{"order", dump.order}, {"levels", levels}};
  if (dump.r) out["r"] = dump.r->get_str();
  return out;
}

Json blocks_to_json(const BlockDecomposition& dec) {
  Json blocks = Json::array();
  for (std::size_t i = 0; i < dec.blocks.size(); ++i) {
    const Block& b = dec.blocks[i];
    blocks.push_back(Json{{"low", b.low},
                          {"patterns", b.patterns},
                          {"units_convention", b.uses_virtual_zero()},
                          {"value", dec.block_value(i).get_str()},
                          {"partial_sum", dec.partial_sums[i].get_str()}});
  }
  return Json{{"r", dec.r.get_str()},
              {"digits", encode(dec.r).to_string()},
              {"rho", dec.rho()},
              {"rendering", render(dec)},
              {"blocks", blocks}};
}

std::string mixing_csv_header() { return "k,p,estimate,stderr,theorem_bound,pass"; }

std::string mixing_csv_row(const MixingEstimate& e) {
  return std::to_string(e.k) + "," + std::to_string(e.p) + "," + format_float(e.estimate) + "," +
         format_float(e.stderr_) + "," + format_float(e.theorem_bound) + "," +
         (e.consistent_with_bound() ? "true" : "false");
}

}  // namespace zeck
