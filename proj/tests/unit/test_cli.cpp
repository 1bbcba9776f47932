#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

namespace tstab::cli {
namespace {

namespace fs = std::filesystem;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / "tstab_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

std::string read_file(const fs::path& p) {
  std::ifstream f(p);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

TEST(Cli, ComputeBuiltins) {
  auto p2 = run_cli({"compute", "--variety", "P2", "--divisor", "1,1,1"});
  EXPECT_EQ(p2.code, 0) << p2.err;
  EXPECT_NE(p2.out.find("\"delta\": \"1/1\""), std::string::npos);
  auto dp1 = run_cli({"compute", "--variety", "dP1", "--divisor", "1,1,1,1"});
  EXPECT_EQ(dp1.code, 0);
  EXPECT_NE(dp1.out.find("\"delta\": \"6/7\""), std::string::npos);
  EXPECT_NE(dp1.out.find("\"beta\": \"6/7\""), std::string::npos);
  auto csv = run_cli({"compute", "--variety", "P1xP1", "--divisor", "1,2,0,0", "--format", "csv"});
  EXPECT_EQ(csv.code, 0);
  EXPECT_EQ(std::count(csv.out.begin(), csv.out.end(), '\n'), 2);
}

TEST(Cli, ComputeMatchesGoldenFile) {
  auto r = run_cli({"compute", "--variety", "dP1"});
  std::ifstream f(std::string(TSTAB_GOLDEN_DIR) + "/dP1.json", std::ios::binary);
  std::stringstream s;
  s << f.rdbuf();
  EXPECT_EQ(r.out, s.str());
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run_cli({"compute", "--variety", "P1xP1", "--divisor", "1,1,2"}).code, kParseFailure);
  EXPECT_EQ(run_cli({"compute", "--variety", "P2", "--divisor", "1,x,1"}).code, kParseFailure);
  EXPECT_EQ(run_cli({"compute", "--variety", "nowhere.txt"}).code, kParseFailure);
  EXPECT_EQ(run_cli({"compute"}).code, kParseFailure);
  EXPECT_EQ(run_cli({"frobnicate"}).code, kParseFailure);
  auto notbig = run_cli({"compute", "--variety", "P2", "--divisor", "0,0,0"});
  EXPECT_EQ(notbig.code, kPreconditionFailure);
  EXPECT_NE(notbig.err.find("NotBig"), std::string::npos);
  EXPECT_EQ(run_cli({"mt-probe", "--class", "1", "--c-values", "2,0.5"}).code, kPreconditionFailure);
  EXPECT_EQ(run_cli({"mt-probe", "--class", "1,1"}).code, kPreconditionFailure);
  EXPECT_EQ(run_cli({"--help"}).code, kPass);
}

TEST(Cli, VarietyFiles) {
  auto good = scratch("plane.txt");
  std::ofstream(good) << "dim 2\nray 1 0\nray 0 1\nray -1 -1\ncone 0 1\ncone 1 2\ncone 2 0\n";
  auto r = run_cli({"compute", "--variety", good.string()});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("\"alpha\": \"1/3\""), std::string::npos);
  auto bad = scratch("corrupt.txt");
  std::ofstream(bad) << "dim 2\nray 1 0\nray zero 1\n";
  EXPECT_EQ(run_cli({"check", "--suite", "scaling", "--variety", bad.string()}).code, kParseFailure);
  auto singular = scratch("singular.txt");
  std::ofstream(singular) << "dim 2\nray 1 0\nray 1 2\nray -1 -1\ncone 0 1\ncone 1 2\ncone 2 0\n";
  EXPECT_EQ(run_cli({"compute", "--variety", singular.string()}).code, kParseFailure);
}

TEST(Cli, SweepWritesDecimalAndExactTables) {
  auto out = scratch("sweep.csv");
  auto r = run_cli({"sweep", "--variety", "P1xP1", "--divisor", "1,1,1,1", "--direction", "1,0,0,0",
                    "--gamma-range", "0:1/2", "--steps", "11", "--out", out.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string csv = read_file(out);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "gamma,delta,delta_witness,alpha,s,beta,vol,flags");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 12);
  fs::path exact = out;
  exact.replace_extension(".exact.csv");
  EXPECT_NE(read_file(exact).find("4/5"), std::string::npos);
  EXPECT_FALSE(fs::exists(out.string() + ".tmp"));
  auto scaled = run_cli({"sweep", "--variety", "P2", "--direction", "1,1,1", "--gamma-range", "0:1", "--steps",
                         "3", "--format", "json"});
  EXPECT_EQ(scaled.code, 0);
  EXPECT_NE(scaled.out.find("\"delta\": \"2/3\""), std::string::npos);
  auto flagged = run_cli({"sweep", "--variety", "P1xP1", "--direction", "-1,0,0,0", "--gamma-range", "0:3",
                          "--steps", "4"});
  EXPECT_EQ(flagged.code, 0);
  EXPECT_NE(flagged.out.find(",1\n"), std::string::npos);
  EXPECT_EQ(run_cli({"sweep", "--variety", "P2", "--direction", "1,1,1", "--gamma-range", "0-1"}).code,
            kParseFailure);
}

TEST(Cli, CheckSuites) {
  for (const char* suite : {"scaling", "comparison", "bishop", "sandwich"}) {
    auto r = run_cli({"check", "--suite", suite, "--seed", "7"});
    EXPECT_EQ(r.code, 0) << suite << ": " << r.out;
    EXPECT_NE(r.out.find("pass"), std::string::npos);
  }
  EXPECT_EQ(run_cli({"check", "--suite", "scaling", "--seed", "7"}).out,
            run_cli({"check", "--suite", "scaling", "--seed", "7"}).out);
  EXPECT_EQ(run_cli({"check", "--suite", "nonsense"}).code, kParseFailure);
  EXPECT_EQ(run_cli({"check", "--suite", "bishop", "--variety", "dP1"}).code, 0);
}

int sign_of(double x, double tol) { return x > tol ? 1 : (x < -tol ? -1 : 0); }

std::vector<double> slopes(const std::string& csv) {
  std::vector<double> out;
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  double last_lambda = -1;
  while (std::getline(in, line)) {
    double lambda = std::stod(line.substr(0, line.find(',')));
    if (lambda == last_lambda) continue;
    last_lambda = lambda;
    out.push_back(std::stod(line.substr(line.rfind(',') + 1)));
  }
  return out;
}

TEST(Cli, MtProbeSlopes) {
  auto r = run_cli({"mt-probe", "--class", "1", "--lambdas", "1.8,2.0,2.2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "lambda,c,quotient,J,I,entropy,slope_fit");
  auto s = slopes(r.out);
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(sign_of(s[0], 0.05), -1);
  EXPECT_EQ(sign_of(s[1], 0.05), 0);
  EXPECT_EQ(sign_of(s[2], 0.05), 1);
}

TEST(Cli, MtProbeGridConvergence) {
  auto coarse = run_cli({"mt-probe", "--class", "1", "--lambdas", "1.8,2.0,2.2", "--grid", "128"});
  auto fine = run_cli({"mt-probe", "--class", "1", "--lambdas", "1.8,2.0,2.2", "--grid", "256"});
  ASSERT_EQ(coarse.code, 0) << coarse.err;
  ASSERT_EQ(fine.code, 0) << fine.err;
  auto a = slopes(coarse.out), b = slopes(fine.out);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_LT(std::abs(a[i] - b[i]), 0.02) << i;
}

TEST(Cli, MtChecks) {
  auto ding = run_cli({"mt-probe", "--class", "1,1", "--check", "ding"});
  EXPECT_EQ(ding.code, 0) << ding.out << ding.err;
  EXPECT_NE(ding.out.find("ding: pass"), std::string::npos);
  for (const char* check : {"sandwich", "cocycle", "comparison", "mabuchi"}) {
    auto r = run_cli({"mt-probe", "--class", "1", "--check", check, "--grid", "128", "--smax", "16"});
    EXPECT_EQ(r.code, 0) << check << ": " << r.out << r.err;
  }
  EXPECT_EQ(run_cli({"mt-probe", "--check", "bogus"}).code, kParseFailure);
}

TEST(Cli, SuiteSingleCriterion) {
  auto r = run_cli({"suite", "--criterion", "1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("[PASS] AC1 ", 0), 0u);
  EXPECT_EQ(run_cli({"suite", "--criterion", "13"}).code, kParseFailure);
}

}  // namespace
}  // namespace tstab::cli
