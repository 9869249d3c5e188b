#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "ioconf/cli.hpp"
#include "support/fixtures.hpp"

using namespace ioconf;
using namespace ioconf::test;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "ioconf");
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("ioconf-cli-" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    write_file(dir_ / "m1.iolts", kM1);
    write_file(dir_ / "m3.iolts", kM3);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  static std::string model(const std::string& name) {
    return std::string(IOCONF_MODELS_DIR) + "/" + name;
  }

  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, IocoConforms) {
  const auto r = cli({"check-ioco", "--spec", path("m1.iolts"), "--iut", path("m1.iolts")});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("conforms"), std::string::npos);
}

TEST_F(CliTest, IocoFault) {
  const auto r = cli({"check-ioco", "--spec", path("m1.iolts"), "--iut", path("m3.iolts")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("witness: x\n"), std::string::npos) << r.out;
}

TEST_F(CliTest, IocoJsonReport) {
  const auto r = cli({"check-ioco", "--spec", path("m1.iolts"), "--iut", path("m3.iolts"),
                      "--json", "-"});
  EXPECT_EQ(r.code, 1);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["relation"], "ioco");
  EXPECT_EQ(j["conforms"], false);
  EXPECT_EQ(j["witnesses"], nlohmann::json::parse(R"([["x"]])"));
  EXPECT_NE(r.err.find("witness: x"), std::string::npos);
}

TEST_F(CliTest, MissingFileAndBadUsage) {
  EXPECT_EQ(cli({"check-ioco", "--spec", path("nope.iolts"), "--iut", path("m1.iolts")}).code, 2);
  EXPECT_EQ(cli({"check-ioco", "--spec", path("m1.iolts")}).code, 2);
  EXPECT_EQ(cli({}).code, 2);
  EXPECT_EQ(cli({"frobnicate"}).code, 2);
  EXPECT_EQ(cli({"--help"}).code, 0);
  write_file(path("bad.iolts"), "states: s0\ninitial: s0\ninputs: a\noutputs: a\ntransitions:\n");
  const auto r = cli({"check-ioco", "--spec", path("bad.iolts"), "--iut", path("m1.iolts")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("alphabets not disjoint"), std::string::npos);
}

TEST_F(CliTest, LanguageScenario) {
  const auto spec = model("lang_spec.iolts"), iut = model("lang_iut.iolts");
  EXPECT_EQ(cli({"check-ioco", "--spec", spec, "--iut", iut}).code, 0);
  const auto r = cli({"check-lang", "--spec", spec, "--iut", iut, "--desirable",
                      model("desirable_ax.regex")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("witness: b a x\n"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("within"), std::string::npos);
  EXPECT_EQ(cli({"check-lang", "--spec", spec, "--iut", iut}).code, 0);
}

TEST_F(CliTest, LanguageSingleSequence) {
  write_file(path("seq.lang"), "b a x\n");
  write_file(path("seq2.lang"), "a x\n");
  const auto spec = model("lang_spec.iolts"), iut = model("lang_iut.iolts");
  EXPECT_EQ(cli({"check-lang", "--spec", spec, "--iut", iut, "--desirable", path("seq.lang")}).code, 1);
  // Specified behaviour: not a fault.
  EXPECT_EQ(cli({"check-lang", "--spec", spec, "--iut", iut, "--desirable", path("seq2.lang")}).code, 0);
  // Unspecified, but the IUT does not implement it either.
  EXPECT_EQ(cli({"check-lang", "--spec", spec, "--iut", spec, "--desirable", path("seq.lang")}).code, 0);
}

TEST_F(CliTest, LanguageJsonStats) {
  const auto r = cli({"check-lang", "--spec", model("lang_spec.iolts"), "--iut",
                      model("lang_iut.iolts"), "--desirable", model("desirable_ax.regex"),
                      "--json", path("v.json")});
  EXPECT_EQ(r.code, 1);
  const auto j = nlohmann::json::parse(read_file(path("v.json")));
  EXPECT_EQ(j["relation"], "lang");
  EXPECT_LE(j["stats"]["suite_states"].get<std::size_t>(), j["stats"]["suite_bound"].get<std::size_t>());
}

TEST_F(CliTest, SuiteRoundTrip) {
  auto r = cli({"gen-suite", "--spec", model("four_state.iolts"), "-m", "4", "--limit", "50",
                "-o", path("suite4")});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("levels: 17"), std::string::npos);
  EXPECT_NE(r.err.find("truncated"), std::string::npos);
  const auto manifest = nlohmann::json::parse(read_file(path("suite4") + "/manifest.json"));
  EXPECT_EQ(manifest["levels"], 17);
  EXPECT_EQ(manifest["files"].size(), 50u);
  EXPECT_TRUE(manifest["truncated"].get<bool>());

  r = cli({"gen-suite", "--spec", path("m1.iolts"), "-m", "2", "-o", path("suite1")});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("levels: 5"), std::string::npos);
  EXPECT_TRUE(r.err.empty()) << r.err;
  const auto fm = read_fault_model(path("suite1"));
  EXPECT_EQ(fm.tps.size(), generate_fault_model(m1(), 2).tps.size());

  EXPECT_EQ(cli({"run-suite", "--iut", path("m1.iolts"), "--suite", path("suite1")}).code, 0);
  r = cli({"run-suite", "--iut", path("m3.iolts"), "--suite", path("suite1"), "--parallel", "2",
           "--json", "-"});
  EXPECT_EQ(r.code, 1);
  const auto report = nlohmann::json::parse(r.out);
  EXPECT_EQ(report["overall"], "fail");
  EXPECT_EQ(report["tps"].size(), fm.tps.size());
  r = cli({"run-suite", "--iut", path("m3.iolts"), "--suite", path("suite1"), "--fail-fast"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(cli({"run-suite", "--iut", path("m1.iolts"), "--suite", path("missing")}).code, 2);
}

TEST_F(CliTest, GenModelIsSeeded) {
  const std::vector<std::string> args{"gen-model", "--states", "10", "--inputs", "2",
                                      "--outputs", "10", "--seed", "1"};
  auto a = args, b = args;
  a.insert(a.end(), {"-o", path("a.iolts")});
  b.insert(b.end(), {"-o", path("b.iolts")});
  EXPECT_EQ(cli(a).code, 0);
  EXPECT_EQ(cli(b).code, 0);
  EXPECT_EQ(read_file(path("a.iolts")), read_file(path("b.iolts")));
  const auto m = load_model(path("a.iolts"));
  EXPECT_EQ(m.size(), 10u);
  EXPECT_EQ(m.outputs.size(), 10u);
  EXPECT_TRUE(m.is_deterministic());
  EXPECT_TRUE(m.is_input_enabled());
  EXPECT_EQ(cli({"gen-model", "--states", "3", "--inputs", "1", "--seed", "1", "--density", "0"}).code, 2);
  const auto named = cli({"gen-model", "--states", "2", "--input-names", "a,b", "--output-names",
                          "x", "--seed", "4"});
  EXPECT_EQ(named.code, 0);
  EXPECT_EQ(parse_model(named.out).inputs, (std::vector<std::string>{"a", "b"}));
}

TEST_F(CliTest, MutateSubmachineComplete) {
  auto r = cli({"mutate", "--model", path("m1.iolts"), "--rate", "0.5", "--seed", "3"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("edits=1"), std::string::npos) << r.out;
  EXPECT_NO_THROW(parse_model(r.out));
  EXPECT_EQ(cli({"mutate", "--model", path("m1.iolts"), "--rate", "0", "--seed", "3"}).code, 2);

  r = cli({"submachine", "--model", path("m1.iolts"), "--keep", "1", "--seed", "2", "-o",
           path("sub.iolts")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(cli({"check-ioco", "--spec", path("m1.iolts"), "--iut", path("sub.iolts")}).code, 0);

  r = cli({"complete", "--model", path("m1.iolts"), "--mode", "quiescence"});
  EXPECT_EQ(r.code, 0);
  const auto completed = parse_model(r.out, kUserModel);
  EXPECT_TRUE(completed.is_quiescence_completed());
  write_file(path("m1q.iolts"), r.out);
  // A completed model is accepted as a spec, but cannot be completed twice.
  EXPECT_EQ(cli({"check-ioco", "--spec", path("m1q.iolts"), "--iut", path("m3.iolts")}).code, 1);
  EXPECT_EQ(cli({"complete", "--model", path("m1q.iolts"), "--mode", "quiescence"}).code, 2);

  r = cli({"complete", "--model", path("m1.iolts"), "--mode", "input-enable"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(parse_model(r.out).is_input_enabled());
  EXPECT_EQ(cli({"complete", "--model", path("m1.iolts"), "--mode", "bogus"}).code, 2);
}
