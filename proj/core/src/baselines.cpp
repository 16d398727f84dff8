#include "autosgd/baselines.hpp"

#include <cmath>
#include <stdexcept>

namespace autosgd {

double SgdState::effective_rate(const SgdConfig& cfg) const {
  if (!cfg.invsqrt_decay) return cfg.gamma;
  return cfg.gamma / std::sqrt(static_cast<double>(t) + 1.0);
}

void sgd_step(SgdState& s, const Vec& g, const SgdConfig& cfg) {
  axpy(-s.effective_rate(cfg), g, s.x);
  s.t += 1;
}

DogState make_dog_state(Vec x0, const DogConfig& cfg) {
  DogState s;
  s.r_bar = cfg.r_eps * (1.0 + norm(x0));
  s.x = x0;
  s.x0 = std::move(x0);
  return s;
}

void dog_step(DogState& s, const Vec& g, const DogConfig& cfg) {
  double dist_sq = 0.0;
  for (std::size_t i = 0; i < s.x.size(); ++i) {
    const double d = s.x[i] - s.x0[i];
    dist_sq += d * d;
  }
  s.r_bar = std::max(s.r_bar, std::sqrt(dist_sq));
  s.grad_sq_sum += sqnorm(g);
  s.last_rate = s.r_bar / std::sqrt(s.grad_sq_sum + cfg.eps);
  axpy(-s.last_rate, g, s.x);
  s.t += 1;
}

SfsgdState make_sfsgd_state(Vec x0) {
  SfsgdState s;
  s.z = x0;
  s.x_bar = std::move(x0);
  return s;
}

void sfsgd_step(SfsgdState& s,
                const std::function<void(const Vec&, Vec&)>& grad_at,
                const SfsgdConfig& cfg) {
  Vec y(s.z.size());
  for (std::size_t i = 0; i < y.size(); ++i)
    y[i] = (1.0 - cfg.beta) * s.z[i] + cfg.beta * s.x_bar[i];
  Vec g(y.size());
  grad_at(y, g);
  axpy(-cfg.gamma, g, s.z);
  const double w = 1.0 / static_cast<double>(s.t + 1);
  for (std::size_t i = 0; i < s.x_bar.size(); ++i)
    s.x_bar[i] += w * (s.z[i] - s.x_bar[i]);
  s.t += 1;
}

NmlsStepInfo nmls_step(NmlsState& s, const StochasticObjective& obj, NoiseToken u,
                       const NmlsConfig& cfg) {
  if (!s.initialized) {
    s.c_ref = obj.value(s.x, u);
    s.q = 1.0;
    s.initialized = true;
  }

  Vec g(s.x.size());
  obj.gradient(s.x, u, g);
  const double g_sq = sqnorm(g);

  NmlsStepInfo info;
  double gamma = cfg.gamma_max;
  Vec candidate(s.x.size());
  double f_new = 0.0;
  for (int b = 0; b <= cfg.max_backtracks; ++b) {
    for (std::size_t i = 0; i < candidate.size(); ++i)
      candidate[i] = s.x[i] - gamma * g[i];
    f_new = obj.value(candidate, u);
    if (f_new <= s.c_ref - cfg.c_armijo * gamma * g_sq || b == cfg.max_backtracks) {
      info.backtracks = b;
      break;
    }
    gamma *= cfg.backtrack;
  }
  info.gamma_used = gamma;
  s.x = std::move(candidate);
  const double q_next = cfg.memory * s.q + 1.0;
  s.c_ref = (cfg.memory * s.q * s.c_ref + f_new) / q_next;
  s.q = q_next;
  s.t += 1;
  return info;
}

NmlsStepInfo armijo_gd_step(ArmijoGdState& s, const Objective& obj,
                            const ArmijoGdConfig& cfg) {
  if (!s.initialized) {
    s.f_x = obj.value(s.x);
    s.initialized = true;
  }

  Vec g = obj.gradient(s.x);
  const double g_sq = sqnorm(g);

  NmlsStepInfo info;
  double gamma = cfg.gamma0;
  Vec candidate(s.x.size());
  double f_new = 0.0;
  for (int b = 0; b <= cfg.max_backtracks; ++b) {
    for (std::size_t i = 0; i < candidate.size(); ++i)
      candidate[i] = s.x[i] - gamma * g[i];
    f_new = obj.value(candidate);
    if (f_new <= s.f_x - cfg.c_armijo * gamma * g_sq || b == cfg.max_backtracks) {
      info.backtracks = b;
      break;
    }
    gamma *= cfg.backtrack;
  }
  info.gamma_used = gamma;
  // On backtrack exhaustion only a strict improvement is taken, keeping the
  // trace monotone.
  if (f_new < s.f_x ||
      f_new <= s.f_x - cfg.c_armijo * gamma * g_sq) {
    s.x = std::move(candidate);
    s.f_x = f_new;
  } else {
    info.gamma_used = 0.0;
  }
  s.t += 1;
  return info;
}

}  // namespace autosgd
