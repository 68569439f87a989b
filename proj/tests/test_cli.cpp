// Runs the built command-line tool and checks outputs and exit codes.

#include "simplex_operad.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

namespace so = simplex_operad;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CliRun {
  int code;
  std::string out;
};

CliRun cli(const std::string& args) {
  std::string cmd = std::string(SIMPLEX_OPERAD_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, {}};
  std::string out;
  std::array<char, 4096> buf;
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

fs::path scratch(const std::string& name, const std::string& content) {
  fs::path p = fs::temp_directory_path() / ("simplex_operad_cli_" + name);
  std::ofstream(p) << content;
  return p;
}

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

const std::string kDice = "1/6,1/6,1/6,1/6,1/6,1/6";

}  // namespace

TEST(Cli, Compose) {
  CliRun r = cli("compose --p " + kDice + " --q 1/2,1/2 --at 3");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "1/6,1/6,1/12,1/12,1/6,1/6,1/6\n");
  EXPECT_EQ(so::parse_dist(r.out.substr(0, r.out.size() - 1)),
            so::compose_at(so::Dist::uniform(6), so::Dist::uniform(2), 3));
}

TEST(Cli, ComposeJsonAndFileInput) {
  CliRun r = cli("compose --json --p 1/2,1/2 --q 1/3,2/3 --at 2");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(json::parse(r.out), json::parse(R"({"probs": ["1/2", "1/6", "1/3"]})"));
  fs::path f = scratch("compose.json", R"({"p": ["1/2", "1/2"], "q": {"probs": ["1/3", "2/3"]}, "at": 2})");
  EXPECT_EQ(cli("compose --file " + f.string()).out, "1/2,1/6,1/3\n");
}

TEST(Cli, ComposeMulti) {
  CliRun r = cli("compose-multi --p 1/2,1/2 --q 1 --q 1/2,1/2");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "1/2,1/4,1/4\n");
  EXPECT_EQ(cli("compose-multi --p 1/2,1/2 --q 1").code, 2);
}

TEST(Cli, Entropy) {
  EXPECT_EQ(cli("entropy --p 1/2,1/2").out, "0.693147180559945\n");
  EXPECT_EQ(cli("entropy --p 1").out, "0\n");
  EXPECT_EQ(cli("entropy --p 1/2,1/2 --base 2").out, "1\n");
  CliRun j = cli("entropy --json --p 1/6,1/6,1/12,1/12,1/6,1/6,1/6");
  EXPECT_NEAR(json::parse(j.out).at("entropy").get<double>(), 1.9072839993, 1e-9);
}

TEST(Cli, InputErrorsExitTwo) {
  EXPECT_EQ(cli("compose --p 1/2,1/3 --q 1 --at 1").code, 2);
  EXPECT_EQ(cli("compose --p 1/2,1/2 --q 1 --at 3").code, 2);
  EXPECT_EQ(cli("compose --p 1/2,x --q 1 --at 1").code, 2);
  EXPECT_EQ(cli("compose --file /nonexistent/in.json").code, 2);
  EXPECT_EQ(cli("compose --file " + scratch("bad.json", "{").string()).code, 2);
  EXPECT_EQ(cli("entropy --p 1/2,1/2 --base 3").code, 2);
  EXPECT_EQ(cli("frobnicate").code, 2);
  EXPECT_EQ(cli("").code, 2);
  EXPECT_EQ(cli("--help").code, 0);
}

TEST(Cli, CheckEtaLeibniz) {
  CliRun r = cli("check --law eta-leibniz --samples 1000 --seed 7");
  ASSERT_EQ(r.code, 0);
  json j = json::parse(r.out);
  EXPECT_EQ(j.at("violations"), 0);
  EXPECT_EQ(j.at("seed"), 7);
  EXPECT_EQ(j.at("samples"), 1000);
}

TEST(Cli, CheckOperadAssocExhaustive) {
  CliRun r = cli("check --law operad-assoc --max-arity 4");
  ASSERT_EQ(r.code, 0);
  json j = json::parse(r.out);
  EXPECT_EQ(j.at("violations"), 0);
  EXPECT_EQ(j.at("worst_residual"), 0.0);
}

TEST(Cli, CheckAllPasses) {
  CliRun r = cli("check --law all --samples 500 --seed 1");
  EXPECT_EQ(r.code, 0);
  json j = json::parse(r.out);
  ASSERT_TRUE(j.is_array());
  EXPECT_EQ(j.size(), 9u);
  for (const auto& rep : j) EXPECT_EQ(rep.at("violations"), 0) << rep.at("law");
}

TEST(Cli, InjectedFaultExitsOneWithWitness) {
  for (const char* law : {"operad-assoc", "leibniz", "representation", "oracle", "chain-rule"}) {
    CliRun r = cli(std::string("check --law ") + law + " --samples 100 --seed 1 --inject-fault 1e-6");
    EXPECT_EQ(r.code, 1) << law;
    json j = json::parse(r.out);
    EXPECT_GT(j.at("violations").get<int>(), 0) << law;
    EXPECT_FALSE(j.at("witness").is_null()) << law;
  }
  EXPECT_EQ(cli("check --law all --samples 100 --seed 1 --inject-fault 1e-6").code, 1);
}

TEST(Cli, CheckUnknownLawExitsTwo) { EXPECT_EQ(cli("check --law commutativity").code, 2); }

TEST(Cli, CheckIsDeterministic) {
  std::string args = "check --law module-assoc --samples 50 --seed 3";
  EXPECT_EQ(cli(args).out, cli(args).out);
}

TEST(Cli, CheckNonDerivationFails) {
  fs::path f = scratch("p1.tmpl", "(const $p1)");
  EXPECT_EQ(cli("check --law leibniz --samples 50 --derivation file:" + f.string()).code, 1);
}

TEST(Cli, Faddeev) {
  auto c_of = [](const std::string& spec) {
    CliRun r = cli("faddeev --json --derivation " + spec);
    EXPECT_EQ(r.code, 0) << spec;
    return json::parse(r.out).at("c").get<double>();
  };
  EXPECT_NEAR(c_of("entropy"), 1.0, 1e-9);
  EXPECT_NEAR(c_of("scaled:2.5"), 2.5, 1e-9);
  EXPECT_EQ(c_of("zero"), 0.0);
  EXPECT_NEAR(c_of("file:" + scratch("h.tmpl", "(sum (const $H) (const $H))").string()), 2.0, 1e-9);
  EXPECT_EQ(cli("faddeev --derivation entropy").out, "c = 1\nmax_deviation = 0\n");
}

TEST(Cli, FaddeevFailures) {
  EXPECT_EQ(cli("faddeev --derivation file:" + scratch("p1b.tmpl", "(const $p1)").string()).code, 1);
  EXPECT_EQ(cli("faddeev --derivation file:" + scratch("broken.tmpl", "(sum (const").string()).code, 2);
  EXPECT_EQ(cli("faddeev --derivation file:/nonexistent/t").code, 2);
  EXPECT_EQ(cli("faddeev --derivation entropyish").code, 2);
}

TEST(Cli, RenderDiceCoin) {
  CliRun r = cli("render --p " + kDice + " --q 1/2,1/2 --at 3");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(count(r.out, "shape=box"), 7u);
  EXPECT_EQ(count(r.out, "label=\"1/12\""), 2u);
  EXPECT_EQ(count(r.out, "label=\"1/6\""), 5u);
  fs::path tree = scratch("tree.json", R"(["node", "1/6", "1/6", ["node", {"paint": "1/6"}, "1/2", "1/2"], "1/6", "1/6", "1/6"])");
  EXPECT_EQ(cli("render --tree-file " + tree.string()).out, r.out);
}

TEST(Cli, RenderSingleLeafAndPlugs) {
  CliRun leaf = cli("render --tree 1");
  EXPECT_EQ(leaf.code, 0);
  EXPECT_EQ(count(leaf.out, "shape="), 1u);
  fs::path out = fs::temp_directory_path() / "simplex_operad_cli_plugs.dot";
  fs::remove(out);
  CliRun r = cli("render --expr '(lcomp 1/3 1/3 1/3 @2 (repr 1/2 1/2))' --out " + out.string());
  EXPECT_EQ(r.code, 0);
  std::ifstream in(out);
  std::string dot((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  EXPECT_EQ(count(dot, "style=filled"), 2u);
  EXPECT_EQ(cli("render --arity 4 --expr '(lcomp 1/3 1/3 1/3 @2 (proj 1))'").code, 0);
}

TEST(Cli, RenderParseFailureExitsTwo) {
  EXPECT_EQ(cli("render --expr '(lcomp 1/2'").code, 2);
  EXPECT_EQ(cli("render --tree '[\"node\"'").code, 2);
  EXPECT_EQ(cli("render").code, 2);
}
