#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>
#include <sys/wait.h>

#include "commands.hpp"
#include "io.hpp"
#include "wl1proj/oracle.hpp"

using namespace wl1proj;
using namespace wl1proj::cli;
namespace fs = std::filesystem;

namespace {

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("wl1proj_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
             "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }

  std::string write(const std::string& name, const std::string& contents) const {
    const auto p = path_ / name;
    std::ofstream(p) << contents;
    return p.string();
  }
  std::string path(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
};

int run_binary(const std::string& args) {
  const std::string cmd = std::string(WL1PROJ_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

// ── File formats ────────────────────────────────────────────────────

TEST(VectorFile, ParsesCsvVariants) {
  EXPECT_EQ(io::parse_vector("1\n2.5\n-3e-2\n", io::FileFormat::csv),
            (std::vector<double>{1.0, 2.5, -0.03}));
  EXPECT_EQ(io::parse_vector("1, 2.5,-3e-2\r\n", io::FileFormat::csv),
            (std::vector<double>{1.0, 2.5, -0.03}));
  EXPECT_EQ(io::parse_vector("\n\n+4\n\n", io::FileFormat::csv), std::vector<double>{4.0});
  EXPECT_THROW(io::parse_vector("1,,2", io::FileFormat::csv), InvalidInput);
  EXPECT_THROW(io::parse_vector("1;2", io::FileFormat::csv), InvalidInput);
  EXPECT_THROW(io::parse_vector("1,5e", io::FileFormat::csv), InvalidInput);
  EXPECT_THROW(io::parse_vector("", io::FileFormat::csv), InvalidInput);
}

TEST(VectorFile, ParsesJson) {
  EXPECT_EQ(io::parse_vector("[0.9, 0.6, 1e-1]", io::FileFormat::json),
            (std::vector<double>{0.9, 0.6, 0.1}));
  EXPECT_THROW(io::parse_vector("{\"a\": 1}", io::FileFormat::json), InvalidInput);
  EXPECT_THROW(io::parse_vector("[1, \"x\"]", io::FileFormat::json), InvalidInput);
  EXPECT_THROW(io::parse_vector("[1, [2]]", io::FileFormat::json), InvalidInput);
  EXPECT_THROW(io::parse_vector("[NaN]", io::FileFormat::json), InvalidInput);
}

TEST(VectorFile, RoundTripIsLossless) {
  const auto p = random_problem(99, 200, 1e3, 0.0);
  const std::vector<double> values(p.y().begin(), p.y().end());
  for (auto fmt : {io::FileFormat::csv, io::FileFormat::json}) {
    EXPECT_EQ(io::parse_vector(io::serialize_vector(values, fmt), fmt), values);
  }
  EXPECT_EQ(io::format_number(0.1), "0.1");
}

TEST(MatrixFile, Parses) {
  const Matrix m = io::parse_matrix("1,2,3\n4,5,6\n", io::FileFormat::csv);
  EXPECT_EQ(m.rows(), 2u);
  EXPECT_EQ(m.cols(), 3u);
  EXPECT_EQ(m(1, 2), 6.0);
  const Matrix j = io::parse_matrix("[[1, 2], [3, 4], [5, 6]]", io::FileFormat::json);
  EXPECT_EQ(j.rows(), 3u);
  EXPECT_EQ(j(2, 0), 5.0);
  EXPECT_THROW(io::parse_matrix("1,2\n3\n", io::FileFormat::csv), InvalidInput);
  EXPECT_THROW(io::parse_matrix("[[1, 2], [3]]", io::FileFormat::json), InvalidInput);
  EXPECT_THROW(io::parse_matrix("1,nan\n", io::FileFormat::csv), InvalidInput);
}

TEST(FileFormat, FromExtension) {
  EXPECT_EQ(io::format_from_path("a/b.json"), io::FileFormat::json);
  EXPECT_EQ(io::format_from_path("B.JSON"), io::FileFormat::json);
  EXPECT_EQ(io::format_from_path("b.csv"), io::FileFormat::csv);
  EXPECT_EQ(io::format_from_path("b"), io::FileFormat::csv);
}

// ── project ─────────────────────────────────────────────────────────

TEST(CmdProject, GoldenInstance) {
  TempDir dir;
  ProjectOptions opt;
  opt.y_path = dir.write("y.csv", "0.9\n0.6\n0.1\n");
  opt.d_path = dir.write("d.json", "[0.1, 0.1, 0.1]");
  std::ostringstream out, err;
  ASSERT_EQ(cmd_project(opt, out, err), kSuccess) << err.str();
  const auto doc = nlohmann::json::parse(out.str());
  EXPECT_NEAR(doc["alpha"].get<double>(), 0.15, 1e-12);
  const auto x = doc["x"].get<std::vector<double>>();
  EXPECT_NEAR(x[0], 0.65, 1e-12);
  EXPECT_NEAR(x[1], 0.35, 1e-12);
  EXPECT_EQ(x[2], 0.0);
  EXPECT_EQ(doc["n_pos"].get<int>(), 2);
  EXPECT_EQ(doc["n_neg"].get<int>(), 0);
  EXPECT_LE(doc["kkt_max_residual"].get<double>(), 1e-12);

  opt.naive = true;
  std::ostringstream out2;
  ASSERT_EQ(cmd_project(opt, out2, err), kSuccess);
  EXPECT_NEAR(nlohmann::json::parse(out2.str())["alpha"].get<double>(), 0.15, 1e-12);
}

TEST(CmdProject, SerializedSolutionPassesKkt) {
  TempDir dir;
  const auto p = random_problem(5, 40, 10.0, 0.2);
  ProjectOptions opt;
  opt.y_path = dir.write("y.json", nlohmann::json(std::vector<double>(p.y().begin(), p.y().end())).dump());
  opt.d_path = dir.write("d.csv", io::serialize_vector({p.d().begin(), p.d().end()}, io::FileFormat::csv));
  opt.output_path = dir.path("out.json");
  std::ostringstream out, err;
  ASSERT_EQ(cmd_project(opt, out, err), kSuccess) << err.str();
  const auto doc = nlohmann::json::parse(io::read_file(opt.output_path));
  const auto x = doc["x"].get<std::vector<double>>();
  EXPECT_TRUE(kkt_residual(p, x, doc["alpha"].get<double>(), 1e-8).passed);
}

TEST(CmdProject, UniformZeroWeightKeepsFeasibleY) {
  TempDir dir;
  ProjectOptions opt;
  opt.y_path = dir.write("y.csv", "0.25,0.75");
  opt.uniform_weight = 0.0;
  std::ostringstream out, err;
  ASSERT_EQ(cmd_project(opt, out, err), kSuccess);
  EXPECT_EQ(nlohmann::json::parse(out.str())["x"].get<std::vector<double>>(),
            (std::vector<double>{0.25, 0.75}));
}

TEST(CmdProject, InputErrors) {
  TempDir dir;
  std::ostringstream out, err;
  ProjectOptions opt;
  opt.y_path = dir.write("y.csv", "0.5\nnan\n");
  opt.uniform_weight = 0.1;
  EXPECT_EQ(cmd_project(opt, out, err), kUsageError);
  EXPECT_NE(err.str().find("not finite"), std::string::npos);

  opt.y_path = dir.write("y2.csv", "1\n2\n");
  opt.uniform_weight.reset();
  opt.d_path = dir.write("d.csv", "1\n");
  EXPECT_EQ(cmd_project(opt, out, err), kUsageError);

  opt.d_path = dir.write("d2.csv", "1\n-1\n");
  EXPECT_EQ(cmd_project(opt, out, err), kUsageError);

  opt.d_path.reset();
  EXPECT_EQ(cmd_project(opt, out, err), kUsageError);  // neither d nor weight

  opt.y_path = dir.path("missing.csv");
  opt.uniform_weight = 0.0;
  EXPECT_EQ(cmd_project(opt, out, err), kUsageError);
}

// ── lcc ─────────────────────────────────────────────────────────────

TEST(CmdLcc, Instances) {
  TempDir dir;
  std::ostringstream out, err;
  LccOptions opt;
  opt.u_path = dir.write("u.csv", "0\n0\n");
  opt.v_path = dir.write("v.csv", "3\n4\n");
  opt.lambda = 1.0;
  ASSERT_EQ(cmd_lcc(opt, out, err), kSuccess) << err.str();
  auto doc = nlohmann::json::parse(out.str());
  EXPECT_EQ(doc["w"].get<std::vector<double>>(), std::vector<double>{1.0});
  EXPECT_TRUE(doc["converged"].get<bool>());

  opt.v_path = dir.write("v2.json", "[[1, -1], [0, 0]]");
  std::ostringstream out2;
  ASSERT_EQ(cmd_lcc(opt, out2, err), kSuccess);
  doc = nlohmann::json::parse(out2.str());
  const auto w = doc["w"].get<std::vector<double>>();
  EXPECT_NEAR(w[0], 0.5, 1e-6);
  EXPECT_NEAR(w[1], 0.5, 1e-6);
  EXPECT_TRUE(doc.contains("objective"));
  EXPECT_TRUE(doc.contains("iterations"));
}

TEST(CmdLcc, NonConvergenceStillSucceeds) {
  TempDir dir;
  std::ostringstream out, err;
  LccOptions opt;
  opt.u_path = dir.write("u.csv", "0,0");
  opt.v_path = dir.write("v.csv", "1,0\n0,2\n");
  opt.lambda = 1.0;
  opt.max_iterations = 1;
  opt.tolerance = 1e-15;
  ASSERT_EQ(cmd_lcc(opt, out, err), kSuccess);
  EXPECT_FALSE(nlohmann::json::parse(out.str())["converged"].get<bool>());
}

TEST(CmdLcc, DimensionMismatch) {
  TempDir dir;
  std::ostringstream out, err;
  LccOptions opt;
  opt.u_path = dir.write("u.csv", "0,0,0");
  opt.v_path = dir.write("v.csv", "1,0\n0,2\n");
  opt.lambda = 1.0;
  EXPECT_EQ(cmd_lcc(opt, out, err), kUsageError);
  opt.u_path = dir.write("u2.csv", "0,0");
  opt.lambda = -1.0;
  EXPECT_EQ(cmd_lcc(opt, out, err), kUsageError);
}

// ── verify ──────────────────────────────────────────────────────────

TEST(CmdVerify, SmallRunIsDeterministic) {
  VerifyOptions opt;
  opt.count = 300;
  std::ostringstream a, b, err;
  EXPECT_EQ(cmd_verify(opt, a, err), kSuccess) << err.str();
  EXPECT_EQ(cmd_verify(opt, b, err), kSuccess);
  EXPECT_EQ(a.str(), b.str());
  EXPECT_NE(a.str().find("instances: 300"), std::string::npos);
}

TEST(CmdVerify, ReportsDisagreementWithSeed) {
  VerifyOptions opt;
  opt.count = 20;
  // Bisection stops within ~1e-12 of the root, so a zero gap tolerance fails.
  opt.tolerance = 0.0;
  std::ostringstream out, err;
  EXPECT_EQ(cmd_verify(opt, out, err), kVerificationFailed);
  EXPECT_NE(err.str().find("seed=42"), std::string::npos);
}

TEST(CmdVerify, InvalidParameters) {
  std::ostringstream out, err;
  VerifyOptions opt;
  opt.count = 0;
  EXPECT_EQ(cmd_verify(opt, out, err), kUsageError);
  opt.count = 1;
  opt.n_min = 5;
  opt.n_max = 4;
  EXPECT_EQ(cmd_verify(opt, out, err), kUsageError);
  opt.n_min = 0;
  EXPECT_EQ(cmd_verify(opt, out, err), kUsageError);
}

// ── bench ───────────────────────────────────────────────────────────

TEST(CmdBench, SingleRowAndValidation) {
  std::ostringstream out, err;
  BenchOptions opt;
  opt.n_list = {1000};
  opt.repeats = 3;
  ASSERT_EQ(cmd_bench(opt, out, err), kSuccess);
  std::istringstream lines(out.str());
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) ++count;
  EXPECT_EQ(count, 2);  // header + one row

  opt.repeats = 0;
  EXPECT_EQ(cmd_bench(opt, out, err), kUsageError);
  opt.repeats = 1;
  opt.n_list = {0};
  EXPECT_EQ(cmd_bench(opt, out, err), kUsageError);
}

// ── Binary exit codes ───────────────────────────────────────────────

TEST(Binary, ExitCodes) {
  TempDir dir;
  const auto y = dir.write("y.csv", "0.9\n0.6\n0.1\n");
  const auto bad = dir.write("bad.csv", "nan\n");
  EXPECT_EQ(run_binary("--help"), 0);
  EXPECT_EQ(run_binary("project --help"), 0);
  EXPECT_EQ(run_binary("project --y " + y + " --uniform-weight 0.1"), 0);
  EXPECT_EQ(run_binary("project --y " + bad + " --uniform-weight 0.1"), 2);
  EXPECT_EQ(run_binary("verify --count 0"), 2);
  EXPECT_EQ(run_binary("verify --count 50"), 0);
  EXPECT_EQ(run_binary("bench --n 100 --repeats 0"), 2);
  EXPECT_EQ(run_binary("bench --n 100 1e3 --repeats 1"), 0);
  EXPECT_EQ(run_binary("bench --n 1.5"), 2);
  EXPECT_EQ(run_binary("frobnicate"), 2);
  EXPECT_EQ(run_binary(""), 2);
}
