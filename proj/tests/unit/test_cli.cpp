#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "app.hpp"
#include "json.hpp"

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "solvagen");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = solvagen::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::size_t columns(const std::string& csv_line) {
  return static_cast<std::size_t>(std::count(csv_line.begin(), csv_line.end(), ',')) + 1;
}

// Keeps SOLVAGEN_CONFIG from leaking between tests.
class Cli : public ::testing::Test {
 protected:
  void SetUp() override { unsetenv("SOLVAGEN_CONFIG"); }
  void TearDown() override { unsetenv("SOLVAGEN_CONFIG"); }
};

}  // namespace

TEST_F(Cli, ListHasEverySystem) {
  auto r = run({"list"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = json::parse(r.out);
  EXPECT_GE(doc["systems"].size(), 10u);
  bool alias_noted = false;
  for (const auto& s : doc["systems"]) {
    EXPECT_TRUE(s.contains("family"));
    EXPECT_TRUE(s.contains("status"));
    EXPECT_TRUE(s.contains("constraints"));
    if (s["alias_of"].is_string()) alias_noted = true;
  }
  EXPECT_TRUE(alias_noted);
}

TEST_F(Cli, ExitCodes) {
  EXPECT_EQ(run({"list", "--bogus"}).code, 2);
  EXPECT_EQ(run({"info", "no_such_system"}).code, 2);
  EXPECT_EQ(run({"energies", "morse_like", "--param", "gamma=1"}).code, 2);
  EXPECT_EQ(run({"energies", "morse_like", "--param", "beta"}).code, 2);
  EXPECT_EQ(run({"verify"}).code, 2);
  EXPECT_EQ(run({"schwartzian-check", "exp(-2*"}).code, 2);
  EXPECT_EQ(run({"energies", "coulomb", "--output", "/nonexistent-dir/x.json"}).code, 3);
  // An unattainable tolerance turns every row into a failure.
  EXPECT_EQ(run({"verify", "harmonic_oscillator", "--tol", "1e-30"}).code, 1);
  EXPECT_EQ(run({"verify", "harmonic_oscillator"}).code, 0);
}

TEST_F(Cli, EnergiesExamples) {
  auto c = run({"energies", "coulomb", "--n-max", "3", "--format", "csv"});
  ASSERT_EQ(c.code, 0);
  EXPECT_EQ(lines(c.out), (std::vector<std::string>{"index,nodes,energy,bound", "0,0,-1,true", "1,1,-0.25,true",
                                                     "2,2,-0.111111111111,true", "3,3,-0.0625,true"}));

  auto h = json::parse(run({"energies", "harmonic_oscillator", "--n-max", "4"}).out);
  std::vector<double> e;
  for (const auto& s : h["states"]) e.push_back(s["energy"]);
  EXPECT_EQ(e, (std::vector<double>{1.5, 3.5, 5.5}));

  auto m = run({"energies", "morse_like", "--param", "beta=2.5", "--n-max", "5"});
  ASSERT_EQ(m.code, 0);
  const auto doc = json::parse(m.out);
  ASSERT_EQ(doc["states"].size(), 3u);
  EXPECT_EQ(doc["excluded"][0]["index"], 3);
}

TEST_F(Cli, SampleOscillator) {
  auto r = run({"sample", "harmonic_oscillator", "--param", "omega=2", "--grid", "0,2,101", "--n-max", "4",
                "--format", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 102u);
  EXPECT_EQ(rows[0], "r,V,psi_0,psi_2,psi_4");
  for (const auto& row : rows) EXPECT_EQ(columns(row), 2u + 3u) << row;
  EXPECT_EQ(rows[51].substr(0, 4), "1,1,");  // r = 1: V = omega^2 r^2 / 4 = 1
}

TEST_F(Cli, SampleMorseDecays) {
  auto r = run({"sample", "morse_like", "--grid", "0,40,201"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = json::parse(r.out);
  const auto& last = doc["rows"].back();
  EXPECT_NEAR(last[1].get<double>(), 0.0, 1e-12);
}

TEST_F(Cli, VerifyReport) {
  auto r = run({"verify", "sech_poschl_teller"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = json::parse(r.out);
  const auto& states = doc["systems"][0]["states"];
  ASSERT_EQ(states.size(), 3u);
  for (const auto& s : states) {
    EXPECT_TRUE(s["pass"].get<bool>());
    EXPECT_LT(s["rel_error"].get<double>(), 1e-6);
  }
  EXPECT_EQ(doc["summary"]["pass"], 1);

  auto coul = run({"verify", "coulomb", "--n-max", "3", "--tol", "1e-5"});
  EXPECT_EQ(coul.code, 0) << coul.err;
}

TEST_F(Cli, AmbiguousSystemsSkipUnlessStrict) {
  auto loose = run({"verify", "trig_scarf"});
  const auto doc = json::parse(loose.out);
  EXPECT_EQ(loose.code, 0);
  EXPECT_EQ(doc["systems"][0]["outcome"], "skipped");
  EXPECT_EQ(run({"verify", "trig_scarf", "--strict"}).code, 1);
}

TEST_F(Cli, SchwartzianCheckExamples) {
  auto e = run({"schwartzian-check", "exp(-2*r)"});
  ASSERT_EQ(e.code, 0);
  const auto doc = json::parse(e.out);
  EXPECT_LT(doc["max_deviation"].get<double>(), 1e-6);
  for (const auto& s : doc["samples"]) EXPECT_NEAR(s["symbolic"].get<double>(), -2.0, 1e-12);

  auto lin = json::parse(run({"schwartzian-check", "3*r+1"}).out);
  for (const auto& s : lin["samples"]) EXPECT_EQ(s["symbolic"].get<double>(), 0.0);
  EXPECT_EQ(run({"schwartzian-check", "tanh(r)"}).code, 0);
}

TEST_F(Cli, ConfigFileIsOverriddenByFlags) {
  const auto path = fs::temp_directory_path() / "solvagen_test.conf";
  {
    std::ofstream f(path);
    f << "# test config\ndimension = 5\nn_max = 1\nformat = csv\n";
  }
  setenv("SOLVAGEN_CONFIG", path.c_str(), 1);
  auto from_file = run({"energies", "coulomb"});
  ASSERT_EQ(from_file.code, 0) << from_file.err;
  EXPECT_EQ(lines(from_file.out), (std::vector<std::string>{"index,nodes,energy,bound", "0,0,-0.25,true",
                                                            "1,1,-0.111111111111,true"}));
  auto flagged = run({"energies", "coulomb", "--dimension", "3"});
  EXPECT_EQ(lines(flagged.out)[1], "0,0,-1,true");

  setenv("SOLVAGEN_CONFIG", (path.string() + ".missing").c_str(), 1);
  EXPECT_EQ(run({"list"}).code, 3);
  fs::remove(path);
}

TEST_F(Cli, OutputFile) {
  const auto path = fs::temp_directory_path() / "solvagen_test_out.json";
  auto r = run({"energies", "coulomb", "--output", path.string()});
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(json::parse(slurp(path))["system"], "coulomb");
  fs::remove(path);
}

TEST_F(Cli, OutputIsDeterministic) {
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"verify", "--all", "--n-max", "2"}, {"list"}, {"sample", "rosen_morse_rederived"}}) {
    EXPECT_EQ(run(args).out, run(args).out);
  }
}

// Regression snapshots of the data-emitting commands.
class Golden : public Cli, public ::testing::WithParamInterface<std::pair<const char*, std::vector<std::string>>> {};

TEST_P(Golden, MatchesStoredOutput) {
  const auto& [file, args] = GetParam();
  EXPECT_EQ(run(args).out, slurp(fs::path(SOLVAGEN_GOLDEN_DIR) / file)) << file;
}

INSTANTIATE_TEST_SUITE_P(
    Files, Golden,
    ::testing::Values(std::pair<const char*, std::vector<std::string>>{"list.json", {"list"}},
                      std::pair<const char*, std::vector<std::string>>{
                          "energies_coulomb.csv", {"energies", "coulomb", "--n-max", "3", "--format", "csv"}},
                      std::pair<const char*, std::vector<std::string>>{
                          "energies_morse_like.json", {"energies", "morse_like", "--param", "beta=2.5", "--n-max", "5"}},
                      std::pair<const char*, std::vector<std::string>>{
                          "energies_harmonic_oscillator.csv",
                          {"energies", "harmonic_oscillator", "--n-max", "4", "--format", "csv"}},
                      std::pair<const char*, std::vector<std::string>>{"info_sech_poschl_teller.json",
                                                                       {"info", "sech_poschl_teller"}}));
