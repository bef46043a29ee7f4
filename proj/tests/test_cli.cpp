#include <array>
#include <cmath>
#include <cstdio>
#include <string>
#include <sys/wait.h>

#include "doctest.h"

namespace {

struct Run {
  int status = -1;
  std::string out;
};

// stdout and stderr merged.
Run run(const std::string& args) {
  const std::string cmd = std::string(ZECKLAB_BIN) + " " + args + " 2>&1";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  while (const std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) r.out.append(buf.data(), n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  while (!r.out.empty() && r.out.back() == '\n') r.out.pop_back();
  return r;
}

bool contains(const std::string& s, const std::string& needle) { return s.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("encode, decode, add, delta") {
  CHECK(run("encode 4").out == "\"101\"");
  CHECK(run("encode 4 --format plain").out == "101");
  CHECK(run("encode 0 --format plain").out == "0");
  CHECK(run("decode 1001 --format plain").out == "6");
  const Run bad = run("decode 11");
  CHECK(bad.status == 1);
  CHECK(contains(bad.out, "adjacent ones"));
  CHECK(run("encode -4").status == 1);
  CHECK(run("delta 3 1 --format plain").out == "1");
  CHECK(run("delta 7 4 --format plain").out == "0");
  CHECK(run("delta 12345678901234567890 1 --format plain").status == 0);
  const Run sum = run("add 101 1");
  CHECK(sum.status == 0);
  CHECK(contains(sum.out, "\"sum\":\"001000\""));
  CHECK(contains(sum.out, "\"delta\":-1"));
  CHECK(run("add 101 1 --horizon 4").status != 0);
  CHECK(run("bogus").status == 1);
}

TEST_CASE("mu subcommand") {
  CHECK(run("mu 4 --d 1").out == "{\"a\":\"-3\",\"b\":\"2\",\"approx\":0.2360679775}");
  CHECK(run("mu 1 --moment 1 --format plain").out == "0");
  const Run csv = run("mu 4 --range -2 2 --format csv");
  CHECK(contains(csv.out, "d,mass_a,mass_b,mass_float\n-2,47,-29,"));
  const Run full = run("mu 4 --verify");
  CHECK(full.status == 0);
  CHECK(contains(full.out, "\"checksums\":{\"total_mass\":\"1\",\"mean\":\"0\"}"));
  CHECK(contains(full.out, "\"tail_ratio\":{\"a\":\"2\",\"b\":\"-1\"}"));
  // r = 13 = F_7 has the law of r = 1.
  const auto entries = [](const std::string& s) { return s.substr(s.find("\"entries\"")); };
  const std::string thirteen = run("mu 13").out, one = run("mu 1").out;
  CHECK(entries(thirteen).substr(0, entries(thirteen).find("\"evaluations\"")) ==
        entries(one).substr(0, entries(one).find("\"evaluations\"")));
  const double emp = std::stod(run("mu-empirical 1 1 1000000 --format plain").out);
  CHECK(std::abs(emp - 0.38196601125) < 2e-3);
}

TEST_CASE("towers, blocks, mixing") {
  const Run towers = run("towers 4 --r 4");
  CHECK(towers.status == 0);
  CHECK(contains(towers.out, "\"name\":\"0000\""));
  CHECK(run("towers 30").status == 1);
  const Run blocks = run("blocks 15");
  CHECK(contains(blocks.out, "\"rho\":2"));
  CHECK(contains(blocks.out, "\"rendering\":\"[10]00[10]\""));
  const Run mix = run("mixing coords --k 1 --p 1 --samples 10000");
  CHECK(mix.status == 0);
  CHECK(contains(mix.out, "k,p,estimate,stderr,theorem_bound,pass\n1,1,"));
  CHECK(contains(mix.out, ",true"));
  CHECK(mix.out == run("mixing coords --k 1 --p 1 --samples 10000").out);
  CHECK(mix.out != run("mixing coords --k 1 --p 1 --samples 10000 --seed 3").out);
  CHECK(run("mixing blocks --k 1 --p 1 --samples 10000").status == 1);
  const Run blk = run("mixing blocks --r 1000000 --k 1 --p 1 --samples 10000 --threads 2");
  CHECK(blk.status == 0);
  CHECK(contains(blk.out, ",true"));
}

TEST_CASE("verify-all") {
  const Run v = run("verify-all");
  CHECK(v.status == 0);
  CHECK_FALSE(contains(v.out, "FAIL"));
  CHECK(contains(v.out, "PASS"));
}
