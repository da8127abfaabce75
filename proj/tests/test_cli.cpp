#include "support.hpp"

#include "mvprob/cli/commands.hpp"

#include <array>
#include <cstdio>
#include <sys/wait.h>

using namespace mvt;
using mvp::cli::Document;
using mvp::cli::Options;

namespace {

const std::string kFixtures = MVPROB_FIXTURES;

std::string fixture(const std::string& name) { return kFixtures + "/" + name; }

struct Run {
  int code;
  std::string out;
};

Run run_cli(const std::string& args) {
  std::string cmd = std::string(MVPROB_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  std::string out;
  std::array<char, 4096> buf;
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

mvp::cli::json parse(const std::string& s) { return mvp::cli::json::parse(s); }

}  // namespace

TEST(Document, RoundTripsEveryFixture) {
  for (const char* f : {"algebras.json", "states.json", "moments.json", "holder.json", "product.json"}) {
    Document d = Document::load(fixture(f));
    Document again = Document::parse(d.to_json());
    EXPECT_TRUE(d == again) << f;
    EXPECT_EQ(d.to_json(), again.to_json()) << f;
  }
}

TEST(Document, CanonicalizesRationals) {
  Document d = Document::parse_text(R"({"version":"1","moments":{"m":["2/2","2/4","3/9"]}})");
  EXPECT_EQ(d.moments("m").values(), Rs({{1, 1}, {1, 2}, {1, 3}}));
  EXPECT_EQ(d.to_json()["moments"]["m"][2], "1/3");
}

TEST(Document, SchemaErrors) {
  const char* bad[] = {
      R"({"algebras":{}})",
      R"({"version":"2"})",
      R"({"version":"1","extra":{}})",
      R"({"version":"1","algebras":{"A":{"kind":"chain"}}})",
      R"({"version":"1","algebras":{"A":{"kind":"chain","n":2}},"elements":{"e":{"algebra":"A","value":"1/3"}}})",
      R"({"version":"1","elements":{"e":{"algebra":"missing","value":"0"}}})",
      R"({"version":"1","moments":{"m":["1","0.5"]}})",
      R"({"version":"1","measures":{"m":{"atoms":["a","b"],"weights":["1/2","1/3"]}}})",
      R"({"version":"1",)",
  };
  for (const char* text : bad) EXPECT_THROW(Document::parse_text(text), input_error) << text;
}

TEST(Commands, MomentsCheckOnLebesgue) {
  Document d = Document::load(fixture("moments.json"));
  Options o;
  o.moments = "lebesgue";
  auto r = mvp::cli::cmd_moments(d, "check", o);
  EXPECT_EQ(r.verdict, "pass");
  EXPECT_EQ(r.exit_code(), 0);
}

TEST(Commands, VerifyIndependenceCountsSixteenIdentities) {
  Document d = Document::load(fixture("product.json"));
  Options o;
  o.left = "sA";
  o.right = "sB";
  auto r = mvp::cli::cmd_product(d, "verify-independence", o);
  EXPECT_EQ(r.verdict, "pass");
  EXPECT_EQ(r.metrics["checks"], 16);
}

TEST(Commands, EmbedChangNotesNonInjectivity) {
  Document d = Document::load(fixture("states.json"));
  Options o;
  o.state = "chang";
  auto r = mvp::cli::cmd_embed(d, o);
  EXPECT_EQ(r.verdict, "pass");
  EXPECT_EQ(r.result["note"], "not injective: state not faithful");
}

TEST(Commands, FailuresAlwaysCarryWitnesses) {
  Document alg = Document::load(fixture("algebras.json"));
  for (const char* name : {"modular", "kleene", "bad_negation", "noncommutative"}) {
    Options o;
    o.algebra = name;
    auto r = mvp::cli::cmd_check_axioms(alg, o);
    EXPECT_EQ(r.verdict, "fail") << name;
    EXPECT_FALSE(r.witnesses.empty()) << name;
  }
  Document mom = Document::load(fixture("moments.json"));
  Options o;
  o.moments = "violating";
  o.grid = 4;
  auto fit = mvp::cli::cmd_moments(mom, "fit", o);
  EXPECT_EQ(fit.verdict, "infeasible");
  EXPECT_FALSE(fit.witnesses.empty());
}

TEST(Commands, SamplingNeedsSeed) {
  Document d = Document::load(fixture("algebras.json"));
  Options o;
  o.algebra = "U";
  o.level = "fMV";
  EXPECT_THROW(mvp::cli::cmd_check_axioms(d, o), input_error);
  o.seed = 5;
  o.count = 100;
  auto a = mvp::cli::cmd_check_axioms(d, o);
  auto b = mvp::cli::cmd_check_axioms(d, o);
  EXPECT_EQ(a.dump(), b.dump());
  EXPECT_EQ(a.to_json()["seed"], 5);
}

TEST(Binary, ExitCodes) {
  auto ok = run_cli("check-axioms --doc " + fixture("algebras.json") + " --algebra L3 --level MV");
  EXPECT_EQ(ok.code, 0);
  EXPECT_EQ(parse(ok.out)["verdict"], "pass");
  auto bad = run_cli("check-axioms --doc " + fixture("algebras.json") + " --algebra modular");
  EXPECT_EQ(bad.code, 1);
  EXPECT_FALSE(parse(bad.out)["witnesses"].empty());
  EXPECT_EQ(run_cli("check-axioms --doc " + fixture("algebras.json") + " --algebra missing").code, 2);
  EXPECT_EQ(run_cli("check-axioms --doc /nonexistent.json --algebra L3").code, 2);
  EXPECT_EQ(run_cli("no-such-command").code, 2);
  EXPECT_EQ(run_cli("moments fit --doc " + fixture("moments.json") + " --moments violating --grid 3").code, 1);
}

TEST(Binary, OutFlagWritesReport) {
  std::string path = ::testing::TempDir() + "mvprob_report.json";
  std::remove(path.c_str());
  auto r = run_cli("--out " + path + " moments check --doc " + fixture("moments.json") + " --moments lebesgue");
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  FILE* f = std::fopen(path.c_str(), "r");
  ASSERT_NE(f, nullptr);
  std::fclose(f);
}
