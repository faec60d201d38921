#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "doctest.h"
#include "muhs/initspec.hpp"
#include "muhs/spectral.hpp"

using namespace muhs;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

int run(const std::string& args) {
  const std::string cmd = std::string(MUHS_CLI_PATH) + " " + args +
                          " > /dev/null 2> /dev/null";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("muhs_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("init grammar: parsing") {
  const InitSpec a = parse_init("0.2 + cos(1)");
  REQUIRE(a.terms.size() == 2);
  CHECK(a.terms[0].kind == InitTerm::Kind::Const);
  CHECK(a.terms[0].amp == 0.2);
  CHECK(a.terms[1].kind == InitTerm::Kind::Cos);
  CHECK(a.terms[1].k == 1);
  CHECK(a.terms[1].amp == 1.0);
  CHECK(a.terms[1].phase == 0.0);

  const InitSpec b = parse_init("39.478 + cos(1)");
  CHECK(b.terms[0].amp == 39.478);

  const InitSpec c = parse_init("4pi2 + cos(1)");
  CHECK(c.terms[0].amp == 4.0 * std::numbers::pi * std::numbers::pi);

  const InitSpec d = parse_init("-0.5 + 2*sin(3, 0.25, -1.5) - cos(2)");
  REQUIRE(d.terms.size() == 3);
  CHECK(d.terms[0].amp == -0.5);
  CHECK(d.terms[1].kind == InitTerm::Kind::Sin);
  CHECK(d.terms[1].k == 3);
  CHECK(d.terms[1].amp == 0.5);
  CHECK(d.terms[1].phase == -1.5);
  CHECK(d.terms[2].amp == -1.0);
}

TEST_CASE("init grammar: errors carry byte offsets") {
  try {
    parse_init("cos(1");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 5);
  }
  CHECK_THROWS_AS(parse_init(""), ParseError);
  CHECK_THROWS_AS(parse_init("0.2 +"), ParseError);
  CHECK_THROWS_AS(parse_init("cos(x)"), ParseError);
  CHECK_THROWS_AS(parse_init("1 2"), ParseError);
  CHECK_THROWS_AS(parse_init("tan(1)"), ParseError);
}

TEST_CASE("init grammar: build evaluates the term sum") {
  const PeriodicGrid g(64);
  const RealField u = parse_init("0.3 + cos(2, 0.5, 0.1) - sin(1)").build(g);
  for (int j = 0; j < g.n; j += 7) {
    const double x = g.node(j);
    const double expected = 0.3 +
                            0.5 * std::cos(4 * std::numbers::pi * x + 0.1) -
                            std::sin(2 * std::numbers::pi * x);
    CHECK(u[j] == doctest::Approx(expected).epsilon(1e-14));
  }
}

TEST_CASE("init grammar: render/parse round trip") {
  std::mt19937_64 rng(12345);
  std::uniform_int_distribution<int> nterms(1, 5), kindd(0, 2), kdist(0, 9);
  std::uniform_real_distribution<double> coef(-5.0, 5.0);
  for (int i = 0; i < 100; ++i) {
    InitSpec spec;
    const int nt = nterms(rng);
    for (int j = 0; j < nt; ++j) {
      InitTerm t;
      const int kd = kindd(rng);
      t.kind = kd == 0 ? InitTerm::Kind::Const
                       : (kd == 1 ? InitTerm::Kind::Cos : InitTerm::Kind::Sin);
      t.k = t.kind == InitTerm::Kind::Const ? 0 : kdist(rng);
      t.amp = coef(rng);
      t.phase = t.kind == InitTerm::Kind::Const ? 0.0 : coef(rng);
      spec.terms.push_back(t);
    }
    const InitSpec reparsed = parse_init(spec.render());
    CHECK(reparsed.terms == spec.terms);
    // idempotence of the canonical rendering
    CHECK(reparsed.render() == spec.render());
  }
}

TEST_CASE("cli: exit-code contract") {
  CHECK(run("classify --init \"0.2 + cos(1)\"") == 0);
  CHECK(run("classify --init \"cos(1\"") == 2);
  CHECK(run("nonsense") == 2);
  CHECK(run("simulate --init \"1\"") == 2);  // missing required flags
  // no period-one smooth wave exists at this anchor for c = 1
  CHECK(run("wave --c 1 --family smooth --m-anchor 0.3 --out " +
            (fresh_dir("nobracket")).string()) == 4);
  CHECK(run("wave --c 1 --family plateau --m-anchor 0.3") == 2);
}

TEST_CASE("cli: simulate writes the declared outputs deterministically") {
  const fs::path d1 = fresh_dir("sim_a");
  const fs::path d2 = fresh_dir("sim_b");
  const std::string base =
      "simulate --init \"0.2 + cos(1)\" --n 128 --t-end 0.05 --out ";
  REQUIRE(run(base + d1.string()) == 0);
  REQUIRE(run(base + d2.string()) == 0);

  for (const char* f : {"diagnostics.csv", "snapshots.csv"}) {
    CAPTURE(f);
    const std::string a = slurp(d1 / f);
    CHECK(!a.empty());
    CHECK(a == slurp(d2 / f));
  }
  const std::string manifest = slurp(d1 / "manifest.json");
  for (const char* key : {"\"command\"", "\"version\"", "\"config\"",
                          "\"inputs\"", "\"outputs\"", "\"summary\"",
                          "\"verdict\"", "diagnostics.csv", "snapshots.csv",
                          "manifest.json"}) {
    CAPTURE(key);
    CHECK(manifest.find(key) != std::string::npos);
  }
  // CSV floats round-trip at 17 significant digits
  const std::string diag = slurp(d1 / "diagnostics.csv");
  CHECK(diag.find("0.20000000000000001") != std::string::npos);
}

TEST_CASE("cli: wave output is deterministic and self-consistent") {
  const fs::path d1 = fresh_dir("wave_a");
  const fs::path d2 = fresh_dir("wave_b");
  const std::string base =
      "wave --c 1 --family cusped --m-anchor 0.3 --samples 512 --out ";
  REQUIRE(run(base + d1.string()) == 0);
  REQUIRE(run(base + d2.string()) == 0);
  CHECK(slurp(d1 / "profile.csv") == slurp(d2 / "profile.csv"));
  const std::string manifest = slurp(d1 / "manifest.json");
  CHECK(manifest.find("\"period\"") != std::string::npos);
  CHECK(manifest.find("profile.csv") != std::string::npos);
}

TEST_CASE("cli: selftest passes") { CHECK(run("selftest --seed 12345") == 0); }
