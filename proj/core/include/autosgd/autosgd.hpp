#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "autosgd/decision.hpp"
#include "autosgd/objective.hpp"
#include "autosgd/rng.hpp"
#include "autosgd/vec.hpp"

namespace autosgd {

struct AutoSgdConfig {
  double c = 0.5;
  double C = 2.0;
  /// Grid shrink on restart; defaults to c^2 (the classical-problem setting;
  /// the gentler c can be configured instead).
  std::optional<double> restart_shrink;
  DecisionConfig decision;
  std::int64_t budget = 100000;  // total inner iterations
  /// The fallback "stay" of the decision rule fires whenever the lower two
  /// statistics merely sit inside the +-z* band, which is the no-evidence
  /// state. Ending the episode there re-anchors every min_samples iterations
  /// and caps how much signal a weak stream can ever accumulate. By default
  /// such a stay keeps the episode running instead, so episode length grows
  /// as the signal shrinks; a stay then only ends an episode when the middle
  /// rate's statistic is significantly positive. Set true for the
  /// stop-immediately reading.
  bool stay_on_inconclusive = false;
  /// Optional episode cap: once an episode reaches this many inner
  /// iterations the decision rule is forced to conclude (the inconclusive
  /// stay is taken as-is). 0 disables the cap.
  std::int64_t max_episode_length = 0;

  double shrink() const { return restart_shrink ? *restart_shrink : c * c; }
  void validate() const;
};

/// One episode: the anchor it started from, the rate grid's middle value, and
/// the three stream heads with their statistics.
struct EpisodeState {
  Vec anchor;
  double gamma = 0.0;
  Vec head_lo, head_mid, head_hi;
  StreamStats stats_lo, stats_mid, stats_hi;
  std::int64_t k = 0;        // inner iterations taken
  std::int64_t episode = 0;  // t
};

EpisodeState begin_episode(Vec x, double gamma, std::int64_t episode_index);

struct InnerStepResult {
  DecisionOutcome outcome = DecisionOutcome::Continue;
  /// Average of the two paired evaluations at the middle head.
  double mid_loss_estimate = 0.0;
};

/// One inner iteration: advances all three heads with a single shared
/// gradient noise draw (rates c g, g, C g), then draws two fresh evaluation
/// noises and accumulates the paired anchor-vs-head differences into each
/// stream's statistic. Costs exactly 3 gradient and 8 objective evaluations
/// (two at the anchor, one per head per evaluation noise). Returns the
/// decision for the episode so far.
///
/// A stream whose head (or paired evaluation) goes non-finite contributes a
/// large negative sentinel instead, driving its statistic toward -infinity so
/// it can never be selected; if all three heads are non-finite the outcome is
/// an immediate restart.
InnerStepResult inner_step(EpisodeState& ep, const StochasticObjective& obj,
                           RngStream& grad_rng, RngStream& eval_rng1,
                           RngStream& eval_rng2, const AutoSgdConfig& cfg);

/// Episode-end transition. Increase moves to the fast head and expands the
/// grid; Decrease moves to the slow head and contracts; Stay keeps the rate
/// and continues from the middle head; Restart returns to the anchor with a
/// shrunken grid. Continue is a contract violation here.
struct EpisodeTransition {
  Vec x;
  double gamma = 0.0;
};
EpisodeTransition finish_episode(EpisodeState ep, DecisionOutcome outcome,
                                 const AutoSgdConfig& cfg);

struct SgdTraceRow {
  std::int64_t iter = 0;     // global inner iteration
  std::int64_t episode = 0;  // t
  std::int64_t k = 0;        // inner iteration within the episode
  double gamma = 0.0;        // middle rate of the episode's grid
  double loss_estimate = 0.0;
  std::optional<double> loss_exact;
  std::optional<double> loss_avg;
  DecisionOutcome outcome = DecisionOutcome::Continue;
};

struct AutoSgdRunResult {
  std::vector<SgdTraceRow> trace;
  Vec x;  // anchor of the last (possibly unfinished) episode
  std::int64_t episodes_completed = 0;
};

struct AutoSgdRunOptions {
  /// Record exact loss at the middle head each iteration when the objective
  /// provides it.
  bool log_exact = true;
  /// Log every `stride`-th iteration (episode ends and the final iteration
  /// are always logged).
  std::int64_t stride = 1;
  /// Called once per inner iteration with the middle head; a returned value
  /// lands in the row's loss_avg when the iteration is logged. Lets callers
  /// maintain iterate averaging without a second episode loop.
  std::function<std::optional<double>(const Vec& mid_head, bool logged)> iterate_hook;
};

/// Runs episodes until the inner-iteration budget is exhausted. Gradient and
/// the two evaluation noise streams are derived as children of `rng_root`,
/// so a run is fully determined by (x0, gamma0, cfg, rng_root).
AutoSgdRunResult autosgd_run(const StochasticObjective& obj, Vec x0, double gamma0,
                             const AutoSgdConfig& cfg, const RngStream& rng_root,
                             const AutoSgdRunOptions& opts = {});

}  // namespace autosgd
