#pragma once

#include <string>

#include "json.hpp"
#include "zecklab/blocks.hpp"
#include "zecklab/golden.hpp"
#include "zecklab/mixing.hpp"
#include "zecklab/mudist.hpp"

namespace zeck {

using Json = nlohmann::ordered_json;

// Shortest rendering with 12 significant digits.
std::string format_float(double v);

// {"a": "p/q", "b": "p/q", "approx": float}
Json golden_to_json(const GoldenNumber& g);
GoldenNumber golden_from_json(const Json& j);

Json mu_to_json(const MuDistribution& mu);

// Header "d,mass_a,mass_b,mass_float"; rows for d in [lo, hi].
std::string mu_to_csv(const MuDistribution& mu, int lo, int hi);

Json tower_dump_to_json(const TowerDump& dump);

Json blocks_to_json(const BlockDecomposition& dec);

// Header "k,p,estimate,stderr,theorem_bound,pass".
std::string mixing_csv_header();
std::string mixing_csv_row(const MixingEstimate& e);

}  // namespace zeck
