#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace wl1proj::cli {

enum ExitCode : int {
  kSuccess = 0,
  kVerificationFailed = 1,
  kUsageError = 2,
  kContractViolation = 3,
};

struct ProjectOptions {
  std::string y_path;
  std::optional<std::string> d_path;
  std::optional<double> uniform_weight;
  std::string output_path = "-";
  double membership_tolerance = 0.0;
  double feasibility_tolerance = 1e-9;
  bool naive = false;
};

struct LccOptions {
  std::string u_path;
  std::string v_path;
  double lambda = 0.0;
  std::size_t max_iterations = 10000;
  double tolerance = 1e-8;
  std::optional<double> step_size;
  std::string output_path = "-";
};

struct VerifyOptions {
  std::uint64_t seed = 42;
  std::size_t count = 10000;
  std::size_t n_min = 1;
  std::size_t n_max = 50;
  double scale = 10.0;
  double tolerance = 1e-8;
  double kkt_tolerance = 1e-9;
};

struct VerifySummary {
  std::size_t instances = 0;
  double max_alpha_gap = 0.0;
  double max_x_gap = 0.0;
  double max_kkt_residual = 0.0;
  std::size_t failures = 0;
};

struct BenchOptions {
  std::vector<std::size_t> n_list;
  std::size_t repeats = 5;
  std::uint64_t seed = 1;
};

struct BenchRow {
  std::size_t n = 0;
  double median_seconds = 0.0;
  /// median_seconds / (n log2 n); NaN for n == 1.
  double normalized = 0.0;
};

/// Each command validates its options, writes results to `out` (or the
/// configured output file) and diagnostics to `err`, and returns an ExitCode.
int cmd_project(const ProjectOptions& options, std::ostream& out, std::ostream& err);
int cmd_lcc(const LccOptions& options, std::ostream& out, std::ostream& err);
int cmd_verify(const VerifyOptions& options, std::ostream& out, std::ostream& err);
int cmd_bench(const BenchOptions& options, std::ostream& out, std::ostream& err);

/// The randomized cross-oracle run behind `verify`, without printing.
/// Offending instances are reported to `err`.
VerifySummary run_verification(const VerifyOptions& options, std::ostream& err);

/// Timing behind `bench`.
std::vector<BenchRow> run_bench(const BenchOptions& options);

}  // namespace wl1proj::cli
