#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "autosgd/problems.hpp"

namespace autosgd {

/// Configuration problems reportable to the user: carries the offending field.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OptimizerSpec {
  std::string kind;  // autosgd | autogd | sgd_constant | sgd_invsqrt | dog |
                     // sfsgd | nmls | armijo_gd
  // autosgd / autogd
  double c = 0.5;
  double C = 2.0;
  std::optional<double> restart_shrink;
  double z_star = 1.96;
  std::int64_t min_samples = 30;
  // dog
  double r_eps = 1e-6;
  double eps = 1e-8;
  // sfsgd
  double beta = 0.9;
  // nmls / armijo_gd
  double c_armijo = 0.1;
  double backtrack = 0.5;
  double memory = 0.5;
  int max_backtracks = 20;
  double nmls_rate_factor = 10.0;  // gamma_max = factor * init rate

  std::string label(std::size_t index) const;
};

struct RunConfig {
  std::string problem;
  std::uint64_t gen_seed = 1;
  ProblemOverrides overrides;
  std::vector<OptimizerSpec> optimizers;
  std::vector<double> init_rates;
  std::vector<std::int64_t> run_seeds;
  std::int64_t budget = 1000;
  bool averaging = false;
  bool log_exact = true;
  std::string output_dir;

  void validate() const;  // throws ConfigError
};

/// Parses the JSON run configuration (schema in the README). Throws
/// ConfigError with a field- or position-level diagnostic.
RunConfig parse_run_config(const std::string& json_text);
RunConfig load_run_config(const std::string& path);

/// One CSV row. Written with 17 significant digits so floats round-trip.
struct TraceRecord {
  std::string run_id;
  std::string problem;
  std::string optimizer;
  std::int64_t seed = 0;
  std::int64_t iteration = 0;
  std::int64_t episode = -1;  // -1 for non-episodic optimizers
  double gamma = 0.0;
  double loss_est = 0.0;
  std::optional<double> loss_exact;
  std::optional<double> loss_avg;
  std::string decision;  // I/S/D/R for episode ends, A/R for accept/reject, else empty
  std::int64_t extra_cost = 0;
};

extern const char* const kTraceCsvHeader;
std::string trace_to_csv(const std::vector<TraceRecord>& rows);

struct RunOutcome {
  std::string run_id;
  std::string file;
  std::string optimizer;
  std::size_t optimizer_index = 0;
  double rate = 0.0;
  std::size_t rate_index = 0;
  std::int64_t seed = 0;
  bool ok = false;
  std::string error;
  double wall_ms = 0.0;  // excluded from the determinism contract
};

struct ExperimentResult {
  std::vector<RunOutcome> runs;
  std::string manifest_path;
  bool all_ok = true;
};

/// Executes the optimizer x rate x seed matrix, parallel across runs
/// (AUTOSGD_WORKERS workers, default hardware concurrency), and writes one
/// CSV per run plus manifest.json into cfg.output_dir. Output bytes are a
/// pure function of the config; only manifest wall times vary.
ExperimentResult run_experiment(const RunConfig& cfg);

/// In-memory variant used by tests: returns run_id -> csv text instead of
/// touching the filesystem.
std::vector<std::pair<std::string, std::string>> run_experiment_to_memory(
    const RunConfig& cfg, std::size_t workers = 0);

// -- summaries ---------------------------------------------------------------

struct SummaryRow {
  std::string problem;
  std::string optimizer;
  double rate = 0.0;
  int runs = 0;
  double final_loss_min = 0.0;
  double final_loss_median = 0.0;
  double final_loss_max = 0.0;
  std::optional<double> iters_to_threshold_median;
  std::int64_t total_extra_cost = 0;
  /// Slope of the group's rate trace (pointwise median across seeds) over
  /// the final decade of iterations.
  std::optional<double> gamma_slope;
};

/// Least-squares slope of log(gamma) against log(iteration + 1) over the
/// final decade of iterations (iteration >= max/10).
std::optional<double> loglog_slope_final_decade(const std::vector<std::int64_t>& iters,
                                                const std::vector<double>& gammas);

/// Aggregates a directory produced by run_experiment, grouping seeds per
/// (optimizer, rate). Needs the manifest.
std::vector<SummaryRow> summarize_directory(const std::string& dir,
                                            std::optional<double> threshold = {});
std::string summary_to_csv(const std::vector<SummaryRow>& rows);

}  // namespace autosgd
