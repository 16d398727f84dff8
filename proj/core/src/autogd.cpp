#include "autosgd/autogd.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace autosgd {

void AutoGdConfig::validate() const {
  if (!(c > 0.0 && c < 1.0)) throw std::invalid_argument("AutoGdConfig: need 0 < c < 1");
  if (!(C > 1.0)) throw std::invalid_argument("AutoGdConfig: need C > 1");
  const double s = shrink();
  if (!(s > 0.0 && s < 1.0))
    throw std::invalid_argument("AutoGdConfig: restart_shrink must be in (0, 1)");
  if (grad_norm_tol < 0.0)
    throw std::invalid_argument("AutoGdConfig: grad_norm_tol must be >= 0");
}

AutoGdState make_autogd_state(const Objective& obj, Vec x0, double gamma0) {
  if (!(gamma0 > 0.0)) throw std::invalid_argument("AutoGD: gamma0 must be > 0");
  check_dim(x0, static_cast<std::size_t>(obj.dim()), "AutoGD x0");
  AutoGdState s;
  s.f_x = obj.value(x0);
  s.x = std::move(x0);
  s.gamma = gamma0;
  return s;
}

Proposal propose(const AutoGdState& state, const Objective& obj,
                 const AutoGdConfig& cfg) {
  const Vec g = obj.gradient(state.x);
  const double rates[3] = {cfg.c * state.gamma, state.gamma, cfg.C * state.gamma};

  Proposal best;
  best.f = std::numeric_limits<double>::infinity();
  best.grad_norm = norm(g);

  Vec candidate(state.x.size());
  for (double rate : rates) {
    for (std::size_t i = 0; i < candidate.size(); ++i)
      candidate[i] = state.x[i] - rate * g[i];
    double f = obj.value(candidate);
    if (!std::isfinite(f)) f = std::numeric_limits<double>::infinity();

    // Rates are visited in increasing order, so <= breaks ties toward the
    // largest rate. inf <= inf also keeps the all-non-finite case on the
    // largest candidate.
    if (f <= best.f) {
      best.gamma = rate;
      best.x = candidate;
      best.f = f;
    }
  }
  return best;
}

namespace {

AutoGdStepResult apply_step(const AutoGdState& state, const Objective& obj,
                            const AutoGdConfig& cfg, bool forced) {
  cfg.validate();
  Proposal p = propose(state, obj, cfg);
  AutoGdStepResult r;
  r.grad_norm = p.grad_norm;
  r.accepted = p.f < state.f_x;
  r.state.iter = state.iter + 1;
  if (r.accepted) {
    r.state.x = std::move(p.x);
    r.state.gamma = p.gamma;
    r.state.f_x = p.f;
  } else if (forced) {
    // Move anyway; only the rate update distinguishes rejection.
    r.state.x = std::move(p.x);
    r.state.gamma = cfg.c * state.gamma;
    r.state.f_x = p.f;
  } else {
    r.state.x = state.x;
    r.state.gamma = cfg.shrink() * state.gamma;
    r.state.f_x = state.f_x;
  }
  return r;
}

}  // namespace

AutoGdStepResult autogd_step(const AutoGdState& state, const Objective& obj,
                             const AutoGdConfig& cfg) {
  return apply_step(state, obj, cfg, /*forced=*/false);
}

AutoGdStepResult autogd_step_forced(const AutoGdState& state, const Objective& obj,
                                    const AutoGdConfig& cfg) {
  return apply_step(state, obj, cfg, /*forced=*/true);
}

AutoGdRunResult autogd_run(const Objective& obj, Vec x0, double gamma0,
                           const AutoGdConfig& cfg) {
  cfg.validate();
  AutoGdRunResult out;
  AutoGdState state;
  try {
    state = make_autogd_state(obj, std::move(x0), gamma0);
  } catch (const std::exception& e) {
    throw std::runtime_error("AutoGD: initial evaluation failed: " + std::string(e.what()));
  }
  out.trace.push_back({0, state.gamma, state.f_x, std::nullopt, 0.0});

  for (std::int64_t t = 0; t < cfg.max_iters; ++t) {
    AutoGdStepResult r;
    try {
      r = autogd_step(state, obj, cfg);
    } catch (const std::exception& e) {
      throw std::runtime_error("AutoGD iteration " + std::to_string(t) + ": " +
                               e.what());
    }
    state = std::move(r.state);
    out.trace.push_back({state.iter, state.gamma, state.f_x, r.accepted, r.grad_norm});
    if (cfg.grad_norm_tol > 0.0 && r.grad_norm <= cfg.grad_norm_tol) break;
  }
  out.x = state.x;
  return out;
}

}  // namespace autosgd
