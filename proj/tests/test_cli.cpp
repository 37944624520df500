#include <gtest/gtest.h>
#include <json.hpp>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "arith_lab/major_arc.hpp"
#include "arith_lab/series.hpp"
#include "arith_lab/sieve.hpp"

using namespace arith_lab;
using json = nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(ARITH_LAB_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int st = pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "arith_lab_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Cli, MangoldtQTwoAlternates) {
  const auto r = run("weight --model mangoldt --q 2 --n 16");
  ASSERT_EQ(r.code, 0);
  std::stringstream ss(r.out);
  const auto s = io::read_csv(ss);
  ASSERT_EQ(s.size(), 16u);
  for (std::int64_t n = 1; n <= 16; ++n) EXPECT_EQ(s[n], cplx(n % 2 ? 1.0 : -1.0, 0.0));
}

TEST(Cli, GowersBothMethodsAgree) {
  const auto f = scratch("f.csv");
  {
    std::ofstream os(f);
    io::write_csv(os, von_mangoldt_series(FactorSieve(60), 60));
  }
  for (int s : {2, 3}) {
    const auto r = run("gowers --s " + std::to_string(s) + " --input " + f.string() + " --method both");
    ASSERT_EQ(r.code, 0);
    const auto j = json::parse(r.out);
    EXPECT_EQ(j["s"], s);
    EXPECT_TRUE(j["agree"].get<bool>());
    EXPECT_NEAR(j["brute"].get<double>(), j["fft"].get<double>(), 1e-8 * j["brute"].get<double>());
    EXPECT_TRUE(j.contains("raw_power"));
    EXPECT_TRUE(j.contains("normalized"));
  }
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("bogus").code, 2);
  EXPECT_EQ(run("weight --n notanumber").code, 2);
  EXPECT_EQ(run("gowers --s 4 --input /nonexistent.csv").code, 2);
  EXPECT_EQ(run("spectra --what grid --k0 8 --grid-delta 4 --n 64").code, 2);
  EXPECT_EQ(run("arcs --q 12000").code, 1);
  EXPECT_EQ(run("--help").code, 0);
}

TEST(Cli, VerifyFastSuitePasses) {
  const auto r = run("verify --suite fast");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("0 criteria failed"), std::string::npos);
}

TEST(Cli, EmittedCsvMatchesInMemorySeries) {
  const auto p = scratch("w.csv");
  ASSERT_EQ(run("weight --model two_squares --mode cumulative --q 9 --n 700 --out " + p.string()).code, 0);
  std::ifstream is(p);
  const auto s = io::read_csv(is);
  const auto want = weight_series(MajorArcWeight(ArcModel::two_squares(), 9, ArcMode::Cumulative), 700);
  ASSERT_EQ(s.size(), want.size());
  for (std::size_t k = 0; k < s.size(); ++k) EXPECT_EQ(s.values()[k], want.values()[k]);

  const auto m = run("sieve --what mangoldt --n 500");
  std::stringstream ss(m.out);
  EXPECT_EQ(io::read_csv(ss).values(), von_mangoldt_series(FactorSieve(500), 500).values());
}

TEST(Cli, DeterministicRunsAreByteIdentical) {
  const std::vector<std::string> cmds = {
      "ps --what stats --c 1.1 --log2n 10 --samples 64 --seed 5 --deterministic",
      "osc --what lepingle --n 128 --trials 20 --r 3 --seed 9 --deterministic",
      "ergodic --n 20000 --seed 3 --deterministic",
      "arcs --q 12 --i 2",
  };
  for (const auto& c : cmds) {
    const auto a = run(c), b = run(c);
    EXPECT_EQ(a.code, 0) << c;
    EXPECT_EQ(a.out, b.out) << c;
    EXPECT_FALSE(a.out.empty());
  }
  const auto f1 = scratch("d1.csv"), f2 = scratch("d2.csv");
  run("weight --model divisor --q 7 --n 300 --deterministic --out " + f1.string());
  run("weight --model divisor --q 7 --n 300 --deterministic --threads 4 --out " + f2.string());
  EXPECT_EQ(slurp(f1), slurp(f2));
}

TEST(Cli, ConfigFileIsOverriddenByFlags) {
  const auto cfg = scratch("run.ini");
  {
    std::ofstream os(cfg);
    os << "n = 8\nq = 2\nmodel = mangoldt\n";
  }
  const auto a = run("weight --config " + cfg.string());
  ASSERT_EQ(a.code, 0);
  std::stringstream sa(a.out);
  EXPECT_EQ(io::read_csv(sa).size(), 8u);
  const auto b = run("weight --config " + cfg.string() + " --n 3");
  std::stringstream sb(b.out);
  EXPECT_EQ(io::read_csv(sb).size(), 3u);
}

TEST(Cli, ArcsAndCoefficientTables) {
  const auto a = json::parse(run("arcs --q 4 --i 2").out);
  EXPECT_EQ(a["fractions"], json::parse("[[1,4],[3,4]]"));
  EXPECT_EQ(a["lcm"], "4");
  const auto t = json::parse(run("weight --what coefficients --model mangoldt --q 4").out);
  ASSERT_EQ(t.size(), 4u);
  EXPECT_EQ(t[0]["a"], 1);
  EXPECT_EQ(t[0]["q"], 3);
  EXPECT_DOUBLE_EQ(t[0]["re"].get<double>(), -0.5);
}

TEST(Cli, SpectraAndOscillationOutputs) {
  const auto g = json::parse(run("spectra --what grid --k0 3 --grid-delta 3 --shift 1 --n 200").out);
  EXPECT_EQ(g["nesting_violations"], 0);
  EXPECT_FALSE(g["intervals"].empty());
  const auto p = scratch("t.csv");
  {
    std::ofstream os(p);
    os << "n,re,im\n0,0,0\n1,1,0\n2,0,0\n3,1,0\n4,0,0\n";
  }
  const auto o = json::parse(run("osc --input " + p.string() + " --lambda 1 --r 2").out);
  EXPECT_EQ(o["jumps"]["count"], 4);
  EXPECT_DOUBLE_EQ(o["variation"].get<double>(), 2.0);
}
