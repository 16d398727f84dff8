#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "autosgd/objective.hpp"
#include "autosgd/vec.hpp"

namespace autosgd {

struct AutoGdConfig {
  double c = 0.5;  // contraction, 0 < c < 1
  double C = 2.0;  // expansion, C > 1
  /// Grid shrink factor applied on rejection. Defaults to c^2 when C == 1/c
  /// (rejecting the grid {c g, g, C g} then tries a fresh collection of
  /// smaller rates), otherwise to c.
  std::optional<double> restart_shrink;
  std::int64_t max_iters = 1000;
  /// Stop when ||grad f|| <= tol; 0 disables the check.
  double grad_norm_tol = 0.0;

  double shrink() const {
    if (restart_shrink) return *restart_shrink;
    return (std::abs(C * c - 1.0) <= 1e-12) ? c * c : c;
  }
  void validate() const;
};

struct AutoGdState {
  Vec x;
  double gamma = 1.0;
  double f_x = 0.0;  // cached objective value at x
  std::int64_t iter = 0;
};

AutoGdState make_autogd_state(const Objective& obj, Vec x0, double gamma0);

/// One-step lookahead over the rate grid {c g, g, C g}: the rate whose
/// gradient step from x gives the lowest objective value, ties broken toward
/// the largest rate. Costs exactly one gradient and three objective
/// evaluations. Non-finite candidate values rank as +infinity; if all three
/// are non-finite the largest-rate candidate is returned with f = +infinity
/// so that the caller's rejection path fires.
struct Proposal {
  double gamma = 0.0;
  Vec x;
  double f = 0.0;
  double grad_norm = 0.0;
};

Proposal propose(const AutoGdState& state, const Objective& obj,
                 const AutoGdConfig& cfg);

struct AutoGdStepResult {
  AutoGdState state;
  bool accepted = false;
  double grad_norm = 0.0;
};

/// Accept the proposal when it strictly decreases the objective; otherwise
/// keep x and shrink the rate grid. f(x_t) is therefore non-increasing.
AutoGdStepResult autogd_step(const AutoGdState& state, const Objective& obj,
                             const AutoGdConfig& cfg);

/// Variant without the no-movement option: always moves to the proposed
/// point, shrinking gamma by c when the proposal failed to decrease f.
/// Diverges on steep polynomials; exists to demonstrate why the rejection
/// path matters.
AutoGdStepResult autogd_step_forced(const AutoGdState& state, const Objective& obj,
                                    const AutoGdConfig& cfg);

struct GdTraceRow {
  std::int64_t iter = 0;
  double gamma = 0.0;
  double f = 0.0;
  /// Whether the step that produced this row accepted its proposal;
  /// unset on the initial row.
  std::optional<bool> accepted;
  double grad_norm = 0.0;
};

struct AutoGdRunResult {
  std::vector<GdTraceRow> trace;
  Vec x;
};

AutoGdRunResult autogd_run(const Objective& obj, Vec x0, double gamma0,
                           const AutoGdConfig& cfg);

}  // namespace autosgd
