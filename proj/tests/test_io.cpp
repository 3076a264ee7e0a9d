#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "posalg/cli.hpp"
#include "posalg/fixtures.hpp"
#include "posalg/io.hpp"

using namespace posalg;

namespace {

std::string write_temp(const std::string& name, const std::string& text) {
  const auto dir = std::filesystem::temp_directory_path() / "posalg_tests";
  std::filesystem::create_directories(dir);
  const auto path = dir / name;
  std::ofstream(path) << text;
  return path.string();
}

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string poset_file(const char* fixture) {
  return write_temp(std::string(fixture) + ".json", to_json(*fixtures::by_name(fixture)).dump(2));
}

std::size_t count(const std::string& s, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = s.find(needle); pos != std::string::npos; pos = s.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST(Io, PosetRoundTrip) {
  for (const char* name : {"empty", "chain3", "diamond", "zigzag2", "ladder2"}) {
    const auto p = *fixtures::by_name(name);
    EXPECT_EQ(poset_from_json(Json::parse(to_json(p).dump())), p) << name;
  }
}

TEST(Io, LoadChainFile) {
  const auto p = load_poset(write_temp("c.json", R"({"name":"c","elements":["a","b"],"le":[["a","b"]]})"));
  EXPECT_EQ(maximal_chains(p).size(), 1U);
}

TEST(Io, SchemaErrors) {
  try {
    load_poset(write_temp("cyc.json", R"({"elements":["a","b"],"le":[["a","b"],["b","a"]]})"));
    FAIL() << "cycle accepted";
  } catch (const SchemaError& e) {
    EXPECT_NE(std::string(e.what()).find("Cycle"), std::string::npos);
  }
  EXPECT_THROW(load_poset(write_temp("bad.json", "{ not json")), SchemaError);
  EXPECT_THROW(load_poset(write_temp("noel.json", R"({"le":[]})")), SchemaError);
  EXPECT_THROW(load_poset(write_temp("unk.json", R"({"elements":["a"],"le":[["a","z"]]})")), SchemaError);
}

TEST(Io, MorphismRoundTrip) {
  auto one = share(Poset::make("b", {"b"}, {}));
  auto c2 = share(fixtures::chain(2));
  const auto f = PosetMorphism::make(one, c2, {{"b", "b"}});
  EXPECT_EQ(morphism_from_json(Json::parse(to_json(f).dump())), f);
}

TEST(Io, HahnRoundTrip) {
  auto p = share(fixtures::diamond());
  HahnElement<BigInt> x(p);
  x.set(0, BigInt(-7));
  x.set(3, BigInt("123456789012345678901234567890"));
  EXPECT_EQ(hahn_from_json(p, Json::parse(to_json(x).dump())), x);
  EXPECT_THROW(hahn_from_json(p, Json::parse(R"({"coeffs":{"q":1}})")), SchemaError);
}

TEST(Io, ReportRoundTrip) {
  auto p = share(fixtures::vee());
  const auto r = analyze(p);
  EXPECT_TRUE(r.all_passed());
  EXPECT_EQ(report_from_json(Json::parse(to_json(r).dump())), r);
}

TEST(Io, DiamondDot) {
  const auto dot = hasse_dot(fixtures::diamond());
  EXPECT_EQ(count(dot, "->"), 4U);
  auto d = share(fixtures::diamond());
  EXPECT_EQ(count(ideal_lattice_dot(ideal_lattice(AlgebraHandle::whole(d))), "->"), 6U);
}

TEST(Cli, AnalyzeDiamond) {
  const auto r = cli({"analyze", poset_file("diamond"), "--json"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  const auto j = Json::parse(r.out);
  EXPECT_EQ(j["ideals"].size(), 6U);
}

TEST(Cli, HahnPrimes) {
  const auto r = cli({"hahn", poset_file("lambda"), "--check", "primes", "--bound", "3"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(Json::parse(r.out)["primes"], Json::parse(R"(["a","b"])"));
}

TEST(Cli, TruncateIndependence) {
  const auto r = cli({"truncate", poset_file("chain2"), "--n", "2", "--verify", "independence"});
  EXPECT_EQ(r.code, kExitCounterexample);
}

TEST(Cli, OtherCommands) {
  EXPECT_EQ(cli({"spectrum", poset_file("chain2")}).code, kExitOk);
  EXPECT_EQ(cli({"k0", poset_file("chain2")}).code, kExitOk);
  EXPECT_EQ(cli({"truncate", poset_file("V"), "--verify", "unit"}).code, kExitOk);
  EXPECT_EQ(cli({"fixtures", "list"}).code, kExitOk);
  EXPECT_EQ(cli({"fixtures", "emit", "diamond"}).code, kExitOk);
  auto one = share(Poset::make("a", {"a"}, {}));
  auto c2 = share(fixtures::chain(2));
  const auto bad = write_temp("m.json", to_json(PosetMorphism::make(one, c2, {{"a", "a"}})).dump());
  EXPECT_EQ(cli({"morphism", bad, "--check", "pos"}).code, kExitCounterexample);
  EXPECT_EQ(cli({"morphism", bad, "--check", "gstar"}).code, kExitCounterexample);
}

TEST(Cli, InputErrors) {
  EXPECT_EQ(cli({"analyze", "/nonexistent/x.json"}).code, kExitInputError);
  EXPECT_EQ(cli({"analyze", write_temp("cyc2.json", R"({"elements":["a","b"],"le":[["a","b"],["b","a"]]})")}).code,
            kExitInputError);
  EXPECT_EQ(cli({"bogus"}).code, kExitInputError);
  EXPECT_EQ(cli({"truncate", poset_file("chain2"), "--n", "1"}).code, kExitInputError);
  EXPECT_EQ(cli({"fixtures", "emit", "nope"}).code, kExitInputError);
}

TEST(Cli, Deterministic) {
  const auto file = poset_file("zigzag1");
  const auto a = cli({"analyze", file, "--json", "--seed", "7"});
  const auto b = cli({"analyze", file, "--json", "--seed", "7"});
  EXPECT_EQ(a.out, b.out);
  const auto c = cli({"truncate", file, "--verify", "all"});
  const auto d = cli({"truncate", file, "--verify", "all"});
  EXPECT_EQ(c.out, d.out);
  EXPECT_EQ(c.code, d.code);
}
