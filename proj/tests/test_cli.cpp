#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>
#include <sys/wait.h>

#include "scheme_forge/cli.hpp"
#include "scheme_forge/constructions.hpp"
#include "scheme_forge/json_io.hpp"

using namespace scheme_forge;

namespace {

struct Outcome {
  int code;
  Json doc;
  std::string raw;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "scheme-forge");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  Json doc;
  if (!out.str().empty() && out.str().front() == '{') doc = Json::parse(out.str());
  return {code, doc, out.str()};
}

std::string csv(const IndexPartition& p) {
  std::string s;
  for (std::size_t r = 0; r < p.parts.size(); ++r) {
    if (r) s += '|';
    for (std::size_t i = 0; i < p.parts[r].size(); ++i) s += (i ? "," : "") + std::to_string(p.parts[r][i]);
  }
  return s;
}

}  // namespace

TEST(Cli, VerifySongOrbitMember) {
  const auto member = song::primal().transformed(3, 0);
  const auto r = invoke({"verify", "--p", "37", "--f", "3", "--n", "28", "--parts", csv(member)});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.doc["schema"], "scheme-forge/1");
  EXPECT_EQ(r.doc["command"], "verify");
  EXPECT_TRUE(r.doc["report"]["is_scheme"].get<bool>());
  EXPECT_NO_THROW(validate_report_json(r.doc["report"]));
}

TEST(Cli, VerifyNonSchemeExitCodes) {
  const std::vector<std::string> base = {"verify", "--p", "3", "--f", "4", "--n", "8", "--parts", "0,1|2,3,4,5,6,7"};
  const auto plain = invoke(base);
  EXPECT_EQ(plain.code, kExitOk);
  EXPECT_FALSE(plain.doc["report"]["is_scheme"].get<bool>());
  auto expect = base;
  expect.push_back("--expect-scheme");
  EXPECT_EQ(invoke(expect).code, kExitRefuted);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(invoke({"verify", "--f", "3", "--n", "28", "--parts", "0|1"}).code, kExitUsage);
  EXPECT_EQ(invoke({}).code, kExitUsage);
  EXPECT_EQ(invoke({"construct", "--kind", "six_class"}).code, kExitUsage);
  EXPECT_EQ(invoke({"verify", "--p", "3", "--f", "4", "--n", "8", "--parts", "0,1|1"}).code, kExitUsage);
  EXPECT_EQ(invoke({"verify", "--p", "3", "--f", "4", "--n", "8", "--parts", "0|1", "--tol", "0"}).code, kExitUsage);
  const auto r = invoke({"construct", "--kind", "four_class_7mod8", "--p", "3", "--p1", "11"});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_EQ(r.doc["error"]["code"], "PreconditionViolated");
  EXPECT_EQ(invoke({"--help"}).code, kExitOk);
}

TEST(Cli, ResourceErrors) {
  const auto r = invoke({"verify", "--p", "3", "--f", "30", "--n", "2", "--parts", "0|1"});
  EXPECT_EQ(r.code, kExitResource);
  EXPECT_EQ(r.doc["error"]["code"], "FieldTooLarge");
  EXPECT_EQ(invoke({"search-nonexistence", "--p", "3", "--no-prune", "--budget", "5"}).code, kExitResource);
}

TEST(Cli, SearchP7) {
  const auto r = invoke({"search-nonexistence", "--p", "7"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_TRUE(r.doc["result"]["found"].empty());
  const auto sanity = invoke({"search-nonexistence", "--p", "3", "--allow-symmetric", "--allow-imprimitive"});
  EXPECT_EQ(sanity.code, kExitOk);
  EXPECT_EQ(sanity.doc["result"]["found"].size(), 19u);
}

TEST(Cli, ConstructKinds) {
  EXPECT_EQ(invoke({"construct", "--kind", "three_class_base", "--p", "3", "--p1", "11"}).code, kExitOk);
  const auto five = invoke({"construct", "--kind", "five_class_3mod8", "--p", "3", "--p1", "11"});
  EXPECT_EQ(five.code, kExitOk);
  EXPECT_EQ(five.doc["report"]["nonsymmetric_pair_count"], 2);
  const auto m2 = invoke({"construct", "--kind", "five_class_3mod8", "--p", "3", "--p1", "11", "--m", "2"});
  EXPECT_EQ(m2.code, kExitOk);
  EXPECT_FALSE(m2.doc.contains("report"));
  const auto conf =
      invoke({"construct", "--kind", "conference_7mod8", "--p", "37", "--p1", "7", "--i0", "0,1,2,3,4,5,6"});
  EXPECT_EQ(conf.code, kExitOk);
  EXPECT_TRUE(conf.doc["eigenvalues_match"].get<bool>());
  EXPECT_EQ(invoke({"construct", "--kind", "conference_7mod8", "--p", "37", "--p1", "7"}).code, kExitUsage);
}

TEST(Cli, GaussVerify) {
  const auto r = invoke({"gauss-verify", "--p", "11", "--p1", "7", "--tol", "1e-5"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_TRUE(r.doc["within_tolerance"].get<bool>());
}

TEST(Cli, EigenAndFuse) {
  const std::string parts = csv(four_class_7mod8(11, 7, 1).partition);
  const auto e = invoke({"eigen", "--p", "11", "--f", "3", "--n", "14", "--parts", parts});
  EXPECT_EQ(e.code, kExitOk);
  EXPECT_LT(e.doc["pq_max_error"].get<double>(), 1e-6);
  // Parts are S_1, S_2, S_3 = {0}, S_4 = {7}; the symmetrization merges S_3 and S_4.
  const auto f = invoke({"fuse", "--p", "11", "--f", "3", "--n", "14", "--parts", parts, "--lambda", "0|1|2|3,4"});
  EXPECT_EQ(f.code, kExitOk);
  EXPECT_TRUE(f.doc["fusion"]["matches_direct"].get<bool>());
  const auto g = invoke({"fuse", "--p", "11", "--f", "3", "--n", "14", "--parts", parts, "--lambda", "0|1,3|2,4"});
  EXPECT_EQ(g.code, kExitRefuted);
  EXPECT_TRUE(g.doc["fusion"].is_null());
}

TEST(Cli, SongReproduceDeterministic) {
  const auto a = invoke({"song-reproduce"});
  EXPECT_EQ(a.code, kExitOk);
  EXPECT_TRUE(a.doc["song"]["reproduced"].get<bool>());
  EXPECT_EQ(invoke({"song-reproduce"}).raw, a.raw);
}

TEST(Cli, BinaryExitCodes) {
  const std::string bin = SCHEME_FORGE_CLI;
  auto status = [&](const std::string& args) {
    const int s = std::system((bin + " " + args + " >/dev/null 2>&1").c_str());
    return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
  };
  EXPECT_EQ(status("verify --f 3 --n 28 --parts 0"), 2);
  EXPECT_EQ(status("construct --kind three_class_base --p 3 --p1 11"), 0);
  EXPECT_EQ(status("verify --p 3 --f 4 --n 8 --parts '0,1|2,3,4,5,6,7' --expect-scheme"), 1);
  EXPECT_EQ(status("verify --p 3 --f 30 --n 2 --parts '0|1'"), 3);
}
