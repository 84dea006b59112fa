#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pqmkz {

enum class Command { eval, moments, bounds, converge, figures, statdemo };

enum class OutputFormat { csv, json, svg };

/// Everything a command run depends on.  Two runs with equal RunConfig
/// produce byte-identical files: fixed 17-significant-digit floats, LF
/// line endings, no timestamps, fixed summation order.
struct RunConfig {
  Command command = Command::figures;
  int n = 25;

  /// Fixed parameter pair; mutually exclusive with use_scheme.
  std::optional<double> p;
  std::optional<double> q;
  /// n -> (p_n, q_n) scheme (see remark1_scheme) with knobs c_p, c_q.
  bool use_scheme = false;
  double cp = 3.0;
  double cq = 2.0;

  double grid_lo = 0.0;
  double grid_step = 0.005;
  double grid_hi = 0.995;
  bool grid_set = false;  // user override vs per-command default

  double tail_tol = 1e-12;
  std::optional<std::size_t> fixed_k;  // hard truncation index

  std::string out_dir = "out";
  OutputFormat format = OutputFormat::csv;

  /// Function specs (see parse_function); per-command defaults when empty.
  std::vector<std::string> functions;

  double C = 4.0;            // constant for the smoothness bound check
  double eps = 0.01;         // statdemo violator threshold
  std::int64_t N = 10000;    // statdemo horizon

  /// Run the command's built-in identity/anchor/oracle checks instead of
  /// producing files; exit status reports the outcome.
  bool self_test = false;
};

/// Executes one command, writing outputs under cfg.out_dir.  Returns the
/// process exit code (0 ok; 1 when a checked inequality fails or a
/// self-test row fails).  Throws std::invalid_argument for inconsistent
/// configs; I/O problems raise std::runtime_error.
int run_command(const RunConfig& cfg);

/// "%.17g" formatting used for every float written to CSV or JSON.
std::string format_g17(double v);

}  // namespace pqmkz
