#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "normlab/config.hpp"
#include "normlab/experiments.hpp"
#include "normlab/records.hpp"

using namespace normlab;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("config parse, lookup and round trip") {
  const Config c = Config::parse(
      "# pilot\n"
      "seed = 4\n"
      "[assumption1-scan]\n"
      "n = 256   # trailing comment\n"
      "bad = 25x\n"
      "N_min=2\n"
      "[linear-inflation]\n"
      "eps = 0.1, 0.05,0.025\n");
  CHECK(c.integer("assumption1-scan", "N_min", 0) == 2);
  CHECK(c.integer("linear-inflation", "seed", 0) == 4);
  CHECK(c.integer("linear-inflation", "missing", 9) == 9);
  CHECK(c.numbers("linear-inflation", "eps", {}) == std::vector<double>{0.1, 0.05, 0.025});
  CHECK(c.integer("assumption1-scan", "n", 0) == 256);
  CHECK_THROWS_AS(c.number("assumption1-scan", "bad", 0.0), std::invalid_argument);
  CHECK(Config::parse(c.emit()) == c);
  CHECK_THROWS(Config::parse("[open\n"));
  CHECK_THROWS(Config::parse("no equals sign\n"));
}

TEST_CASE("FNV-1a reference values") {
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
  CHECK(fnv1a_hex("foobar") == "85944171f73967e8");
}

TEST_CASE("CSV quoting follows RFC 4180") {
  CHECK(csv_field("plain") == "plain");
  CHECK(csv_field("a,b") == "\"a,b\"");
  CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
  std::ostringstream out;
  write_csv(out, Table{"t", {"x", "y,z"}, {{1.0, 0.1}, {2.0, 1e-300}}});
  CHECK(out.str() == "x,\"y,z\"\r\n1,0.1\r\n2,1e-300\r\n");
  CHECK(format_number(0.1 + 0.2) == "0.30000000000000004");
}

TEST_CASE("checks and report status") {
  CHECK(check_le("a", 1.0, 1.0).pass);
  CHECK_FALSE(check_lt("a", 1.0, 1.0).pass);
  CHECK(check_in("a", 0.5, 0.5, 2.0).pass);
  CHECK_FALSE(check_gt("a", std::nan(""), 0.0).pass);
  Report r;
  r.checks = {check_ge("a", 2.0, 1.0)};
  CHECK(r.passed());
  r.checks.push_back(check_ge("b", 0.0, 1.0));
  CHECK_FALSE(r.passed());
}

TEST_CASE("registry lists every subcommand") {
  for (const char* name : {"assumption1-scan", "linear-inflation", "euler-inflation", "exp-growth", "c1-inflation",
                           "commutator-scan", "calibrate"}) {
    CHECK(experiments::find(name).name == name);
  }
  CHECK_THROWS(experiments::find("nope"));
}

TEST_CASE("empty N-range gives an empty table and passes") {
  const Config c = Config::parse("[assumption1-scan]\nN_min = 5\nN_max = 4\nn = 64\n");
  const Report r = experiments::assumption1_scan(c);
  REQUIRE(r.tables.size() == 1);
  CHECK(r.tables[0].rows.empty());
  CHECK(r.passed());
}

TEST_CASE("reports are reproducible file for file") {
  const Config c = Config::parse("[hilbert-toy]\nn = 512\n");
  const auto dir = std::filesystem::temp_directory_path() / "normlab_test_repro";
  std::filesystem::remove_all(dir);
  const Report a = experiments::hilbert_toy(c);
  const Report b = experiments::hilbert_toy(c);
  CHECK(a.config_hash == b.config_hash);
  CHECK(a.config_hash != experiments::hilbert_toy(Config::parse("[hilbert-toy]\nn = 1024\n")).config_hash);
  const auto fa = write_report(a, dir / "a");
  const auto fb = write_report(b, dir / "b");
  REQUIRE(fa.size() == fb.size());
  for (std::size_t i = 0; i < fa.size(); ++i) {
    if (fa[i].extension() != ".csv") continue;
    CHECK(slurp(fa[i]) == slurp(fb[i]));
  }
  std::filesystem::remove_all(dir);
}
