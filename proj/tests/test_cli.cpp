#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

#include "ipw/io.hpp"
#include "ipw/suites.hpp"

using namespace ipw;

namespace {

struct CliRun {
  int status = -1;
  std::string out, err;
};

std::string tmp(const std::string& name) { return ::testing::TempDir() + "ipw_cli_" + name; }

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

CliRun cli(const std::string& args) {
  static int counter = 0;
  std::string o = tmp("stdout_" + std::to_string(counter)), e = tmp("stderr_" + std::to_string(counter));
  ++counter;
  std::string cmd = std::string("'") + IPW_CLI_PATH + "' " + args + " >'" + o + "' 2>'" + e + "'";
  int rc = std::system(cmd.c_str());
  CliRun r;
  r.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  r.out = slurp(o);
  r.err = slurp(e);
  std::remove(o.c_str());
  std::remove(e.c_str());
  return r;
}

}  // namespace

TEST(Cli, VerifyPassingSuite) {
  std::string path = tmp("qdr.json");
  CliRun r = cli("verify --suite qdr-identification --p 2 --depth 1 --dim 1 --window 2 --out '" + path + "'");
  ASSERT_EQ(r.status, 0) << r.err;
  Json c = Json::parse(slurp(path));
  std::vector<std::string> keys;
  for (auto it = c.begin(); it != c.end(); ++it) keys.push_back(it.key());
  EXPECT_EQ(keys, (std::vector<std::string>{"suite", "params", "checks", "pass", "toolVersion"}));
  EXPECT_EQ(c["suite"], "qdr-identification");
  EXPECT_EQ(c["toolVersion"], kToolVersion);
  EXPECT_TRUE(c["pass"].get<bool>());
  ASSERT_FALSE(c["checks"].empty());
  for (const auto& ch : c["checks"]) {
    std::vector<std::string> ck;
    for (auto it = ch.begin(); it != ch.end(); ++it) ck.push_back(it.key());
    EXPECT_EQ(ck, (std::vector<std::string>{"id", "expected", "observed", "pass"}));
    EXPECT_TRUE(ch["pass"].get<bool>());
  }
  EXPECT_NE(r.out.find("pass"), std::string::npos);
  std::remove(path.c_str());
}

TEST(Cli, WittSuiteWithSeed) {
  CliRun r = cli("verify --suite witt-identities --p 3 --r 3 --seed 7");
  ASSERT_EQ(r.status, 0) << r.err;
  Json c = Json::parse(r.out);
  EXPECT_TRUE(c["pass"].get<bool>());
  EXPECT_EQ(c["params"]["seed"], 7);
}

TEST(Cli, UsageErrors) {
  CliRun u = cli("verify --suite unknown-suite");
  EXPECT_EQ(u.status, 2);
  EXPECT_NE(u.err.find("UnknownSuite"), std::string::npos);
  CliRun p = cli("verify --suite eta-core --p 4");
  EXPECT_EQ(p.status, 2);
  EXPECT_NE(p.err.find("ParameterOutOfRange"), std::string::npos);
  EXPECT_EQ(cli("verify").status, 2);
  EXPECT_EQ(cli("frobnicate").status, 2);
  EXPECT_EQ(cli("verify --suite kunneth --dim 1").status, 2);
  EXPECT_EQ(cli("table --kind no-such-table").status, 2);
}

TEST(Cli, CertificatesAreDeterministic) {
  std::string a = tmp("det_a.json"), b = tmp("det_b.json");
  for (const char* suite : {"eta-core", "lz-lambda", "theta-maps"}) {
    std::string args = std::string("verify --suite ") + suite + " --p 2 --r 1 --seed 5 --samples 20 --out ";
    if (std::string(suite) == "theta-maps") args = "verify --suite theta-maps --p 2 --r 1 --depth 1 --seed 5 --out ";
    ASSERT_EQ(cli(args + "'" + a + "'").status, 0) << suite;
    ASSERT_EQ(cli(args + "'" + b + "'").status, 0) << suite;
    std::string x = slurp(a), y = slurp(b);
    EXPECT_FALSE(x.empty());
    EXPECT_EQ(x, y) << suite;
    // the library path writes the same bytes
    SuiteSpec s;
    s.suite = suite;
    s.p = 2;
    s.r = 1;
    s.seed = 5;
    if (std::string(suite) == "theta-maps")
      s.depth = 1;
    else
      s.samples = 20;
    EXPECT_EQ(dump_certificate(run_suite(s)), x) << suite;
  }
  std::remove(a.c_str());
  std::remove(b.c_str());
}

TEST(Cli, ComplexExportImportRoundTrip) {
  std::string path = tmp("cx.json");
  ASSERT_EQ(cli("complex export '" + path + "' --seed 9 --len 4 --max-rank 3").status, 0);
  FreeComplex C = import_complex(path);
  std::mt19937_64 rng(9);
  EXPECT_EQ(C, random_integer_complex(rng, 4, 3, 9));
  CliRun r = cli("complex import '" + path + "'");
  ASSERT_EQ(r.status, 0) << r.err;
  Json j = Json::parse(r.out);
  EXPECT_EQ(j["ranks"].get<std::vector<size_t>>(), C.ranks);
  ASSERT_EQ(j["cohomology"].size(), C.ranks.size());
  for (int n = C.lo; n <= C.hi(); ++n) EXPECT_EQ(j["cohomology"][n - C.lo], cohomology(C, n).str());

  ASSERT_EQ(cli("complex export '" + path + "' --weight 1,2 --p 3 --depth 1").status, 0);
  EXPECT_EQ(import_complex(path), qdr_piece(AinfTruncation(3, 1), {QRat{1, 0}, QRat{2, 0}}));
  EXPECT_EQ(cli("complex import '" + path + "'").status, 0);
  std::remove(path.c_str());
}

TEST(Cli, ImportShapeMismatch) {
  std::string path = tmp("bad.json");
  std::mt19937_64 rng(3);
  Json j = complex_to_json(random_integer_complex(rng, 3, 2, 5));
  j["ranks"][0] = j["ranks"][0].get<int>() + 1;
  write_json_file(path, j);
  CliRun r = cli("complex import '" + path + "'");
  EXPECT_EQ(r.status, 3);
  EXPECT_NE(r.err.find("SchemaMismatch"), std::string::npos);
  CliRun missing = cli("complex import '" + tmp("does_not_exist.json") + "'");
  EXPECT_EQ(missing.status, 3);
  EXPECT_NE(missing.err.find("IOError"), std::string::npos);
  std::remove(path.c_str());
}

TEST(Cli, LzRankTable) {
  CliRun r = cli("table --kind lz-ranks --p 2 --r 2 --dim 1");
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(r.out.rfind("weight,degree,partitions,u,predicted,observed,match\n", 0), 0u);
  EXPECT_NE(r.out.find("\n1/2,0,1,1,V^1 W_1(A),"), std::string::npos);
  EXPECT_NE(r.out.find("\n0,1,1,0,W_2(A),"), std::string::npos);
  EXPECT_NE(r.out.find(",,,,,yes\n"), std::string::npos);
  EXPECT_EQ(r.out.find(",no\n"), std::string::npos);
}
