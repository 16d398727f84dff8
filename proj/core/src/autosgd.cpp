#include "autosgd/autosgd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace autosgd {

namespace {

// Sentinel for a diverged stream: large but far from overflow, so episode
// sums stay finite.
constexpr double kDivergedDelta = -1e300;
// Cap on honest deltas so squared half-differences cannot overflow.
constexpr double kDeltaCap = 1e150;

double head_update_rate(double gamma, const AutoSgdConfig& cfg, int stream) {
  switch (stream) {
    case 0: return cfg.c * gamma;
    case 1: return gamma;
    default: return cfg.C * gamma;
  }
}

}  // namespace

void AutoSgdConfig::validate() const {
  if (!(c > 0.0 && c < 1.0)) throw std::invalid_argument("AutoSgdConfig: need 0 < c < 1");
  if (!(C > 1.0)) throw std::invalid_argument("AutoSgdConfig: need C > 1");
  const double s = shrink();
  if (!(s > 0.0 && s < 1.0))
    throw std::invalid_argument("AutoSgdConfig: restart_shrink must be in (0, 1)");
  if (budget < 1) throw std::invalid_argument("AutoSgdConfig: budget must be >= 1");
  if (decision.min_samples < 1)
    throw std::invalid_argument("AutoSgdConfig: min_samples must be >= 1");
}

EpisodeState begin_episode(Vec x, double gamma, std::int64_t episode_index) {
  if (!(gamma > 0.0)) throw std::invalid_argument("begin_episode: gamma must be > 0");
  EpisodeState ep;
  ep.anchor = x;
  ep.gamma = gamma;
  ep.head_lo = x;
  ep.head_mid = x;
  ep.head_hi = std::move(x);
  ep.episode = episode_index;
  return ep;
}

InnerStepResult inner_step(EpisodeState& ep, const StochasticObjective& obj,
                           RngStream& grad_rng, RngStream& eval_rng1,
                           RngStream& eval_rng2, const AutoSgdConfig& cfg) {
  Vec* heads[3] = {&ep.head_lo, &ep.head_mid, &ep.head_hi};
  StreamStats* stats[3] = {&ep.stats_lo, &ep.stats_mid, &ep.stats_hi};

  // All three streams consume the same gradient noise draw.
  const NoiseToken u_grad = obj.sample_noise(grad_rng);
  Vec g(ep.anchor.size());
  bool head_finite[3];
  for (int s = 0; s < 3; ++s) {
    Vec& head = *heads[s];
    head_finite[s] = all_finite(head);
    if (!head_finite[s]) continue;  // frozen; its deltas get the sentinel
    obj.gradient(head, u_grad, g);
    axpy(-head_update_rate(ep.gamma, cfg, s), g, head);
    head_finite[s] = all_finite(head);
  }

  // Two fresh evaluation noises, paired between anchor and every head.
  const NoiseToken u_eval[2] = {obj.sample_noise(eval_rng1),
                                obj.sample_noise(eval_rng2)};
  double delta[3][2];
  double mid_loss[2] = {0.0, 0.0};
  for (int m = 0; m < 2; ++m) {
    const double f_anchor = obj.value(ep.anchor, u_eval[m]);
    for (int s = 0; s < 3; ++s) {
      if (!head_finite[s]) {
        delta[s][m] = kDivergedDelta;
        if (s == 1) mid_loss[m] = std::numeric_limits<double>::infinity();
        continue;
      }
      const double f_head = obj.value(*heads[s], u_eval[m]);
      if (s == 1) mid_loss[m] = f_head;
      const double d = f_anchor - f_head;
      delta[s][m] = std::isfinite(d) ? std::clamp(d, -kDeltaCap, kDeltaCap)
                                     : kDivergedDelta;
    }
  }

  for (int s = 0; s < 3; ++s) {
    // A single poisoned pair member poisons the pair, so the squared
    // half-difference stays representable.
    if (delta[s][0] == kDivergedDelta || delta[s][1] == kDivergedDelta)
      delta[s][0] = delta[s][1] = kDivergedDelta;
    static constexpr const char* names[3] = {"lo", "mid", "hi"};
    *stats[s] = stats_update(*stats[s], delta[s][0], delta[s][1], names[s]);
  }
  ep.k += 1;

  InnerStepResult res;
  res.mid_loss_estimate = 0.5 * (mid_loss[0] + mid_loss[1]);
  if (!head_finite[0] && !head_finite[1] && !head_finite[2]) {
    res.outcome = DecisionOutcome::Restart;
    return res;
  }

  const bool capped =
      cfg.max_episode_length > 0 && ep.k >= cfg.max_episode_length;
  auto count = static_cast<std::uint64_t>(ep.k);
  if (capped) count = std::max<std::uint64_t>(count, cfg.decision.min_samples);

  const double z_lo = z_value(ep.stats_lo);
  const double z_mid = z_value(ep.stats_mid);
  res.outcome = decide(z_lo, z_mid, z_value(ep.stats_hi), count, cfg.decision);
  if (res.outcome == DecisionOutcome::Stay && !cfg.stay_on_inconclusive &&
      !capped) {
    // Distinguish the conclusive stay (middle rate significantly improving)
    // from the fallback stay reached with no evidence at all.
    const bool conclusive =
        z_mid > cfg.decision.z_star && z_lo >= -cfg.decision.z_star;
    if (!conclusive) res.outcome = DecisionOutcome::Continue;
  }
  return res;
}

EpisodeTransition finish_episode(EpisodeState ep, DecisionOutcome outcome,
                                 const AutoSgdConfig& cfg) {
  switch (outcome) {
    case DecisionOutcome::Increase:
      return {std::move(ep.head_hi), cfg.C * ep.gamma};
    case DecisionOutcome::Decrease:
      return {std::move(ep.head_lo), cfg.c * ep.gamma};
    case DecisionOutcome::Stay:
      return {std::move(ep.head_mid), ep.gamma};
    case DecisionOutcome::Restart:
      return {std::move(ep.anchor), cfg.shrink() * ep.gamma};
    case DecisionOutcome::Continue:
      break;
  }
  throw std::logic_error("finish_episode: episode is still running");
}

AutoSgdRunResult autosgd_run(const StochasticObjective& obj, Vec x0, double gamma0,
                             const AutoSgdConfig& cfg, const RngStream& rng_root,
                             const AutoSgdRunOptions& opts) {
  cfg.validate();
  if (!(gamma0 > 0.0)) throw std::invalid_argument("AutoSGD: gamma0 must be > 0");
  check_dim(x0, static_cast<std::size_t>(obj.dim()), "AutoSGD x0");

  RngStream grad_rng = rng_root.child("grad-noise");
  RngStream eval_rng1 = rng_root.child("eval-noise-1");
  RngStream eval_rng2 = rng_root.child("eval-noise-2");

  AutoSgdRunResult out;
  const std::int64_t stride = std::max<std::int64_t>(1, opts.stride);
  out.trace.reserve(static_cast<std::size_t>(cfg.budget / stride + 2));

  EpisodeState ep = begin_episode(std::move(x0), gamma0, 0);
  for (std::int64_t iter = 0; iter < cfg.budget; ++iter) {
    InnerStepResult r;
    try {
      r = inner_step(ep, obj, grad_rng, eval_rng1, eval_rng2, cfg);
    } catch (const std::exception& e) {
      throw std::runtime_error("AutoSGD episode " + std::to_string(ep.episode) +
                               ", inner iteration " + std::to_string(ep.k) + ": " +
                               e.what());
    }

    const bool logged = iter % stride == 0 || iter == cfg.budget - 1 ||
                        r.outcome != DecisionOutcome::Continue;
    std::optional<double> avg_loss;
    if (opts.iterate_hook) avg_loss = opts.iterate_hook(ep.head_mid, logged);
    if (logged) {
      SgdTraceRow row;
      row.iter = iter;
      row.episode = ep.episode;
      row.k = ep.k;
      row.gamma = ep.gamma;
      row.loss_estimate = r.mid_loss_estimate;
      if (opts.log_exact && obj.has_exact() && all_finite(ep.head_mid))
        row.loss_exact = obj.exact_value(ep.head_mid);
      row.loss_avg = avg_loss;
      row.outcome = r.outcome;
      out.trace.push_back(std::move(row));
    }

    if (r.outcome != DecisionOutcome::Continue) {
      EpisodeTransition next = finish_episode(std::move(ep), r.outcome, cfg);
      out.episodes_completed += 1;
      ep = begin_episode(std::move(next.x), next.gamma, out.episodes_completed);
    }
  }
  out.x = std::move(ep.anchor);
  return out;
}

}  // namespace autosgd
