#pragma once

#include <cstdint>
#include <functional>

#include "autosgd/objective.hpp"
#include "autosgd/vec.hpp"

namespace autosgd {

// -- plain SGD ---------------------------------------------------------------

struct SgdConfig {
  double gamma = 0.1;
  bool invsqrt_decay = false;  // gamma_t = gamma / sqrt(t + 1)
};

struct SgdState {
  Vec x;
  std::int64_t t = 0;
  double effective_rate(const SgdConfig& cfg) const;
};

void sgd_step(SgdState& s, const Vec& g, const SgdConfig& cfg);

// -- distance over gradients ---------------------------------------------------

struct DogConfig {
  double r_eps = 1e-6;  // initial relative distance
  double eps = 1e-8;    // denominator regularizer
};

/// Tuning-free rate: running max distance from the start divided by the root
/// of the accumulated squared gradient norms.
struct DogState {
  Vec x;
  Vec x0;
  double r_bar = 0.0;      // max distance from x0 so far, seeded at r_eps (1 + ||x0||)
  double grad_sq_sum = 0.0;
  std::int64_t t = 0;
  double last_rate = 0.0;
};

DogState make_dog_state(Vec x0, const DogConfig& cfg);
void dog_step(DogState& s, const Vec& g, const DogConfig& cfg);

// -- schedule-free SGD ---------------------------------------------------------

struct SfsgdConfig {
  double gamma = 0.1;
  double beta = 0.9;
};

/// Gradient is evaluated at the interpolation y = (1-beta) z + beta x_bar;
/// z takes the SGD step and x_bar tracks the running mean of the z iterates.
/// The reported iterate is x_bar.
struct SfsgdState {
  Vec z;
  Vec x_bar;
  std::int64_t t = 0;
};

SfsgdState make_sfsgd_state(Vec x0);
void sfsgd_step(SfsgdState& s,
                const std::function<void(const Vec&, Vec&)>& grad_at,
                const SfsgdConfig& cfg);

// -- nonmonotone stochastic line search ------------------------------------------

struct NmlsConfig {
  double gamma_max = 1.0;       // set to 10x the comparison base rate
  double c_armijo = 0.1;
  double backtrack = 0.5;       // step shrink per backtrack
  double memory = 0.5;          // xi: decay of the nonmonotone reference
  int max_backtracks = 20;
};

struct NmlsState {
  Vec x;
  double c_ref = 0.0;  // nonmonotone reference value
  double q = 1.0;      // reference weight
  bool initialized = false;
  std::int64_t t = 0;
};

struct NmlsStepInfo {
  int backtracks = 0;
  double gamma_used = 0.0;
};

/// Backtracks from gamma_max until the stochastic Armijo condition
/// f(x - g*gamma, u) <= C_ref - c_armijo * gamma * ||g||^2 holds (all
/// evaluations share the step's noise token), or the backtrack cap is hit, in
/// which case the last setting is taken. The reference then relaxes toward
/// the new value.
NmlsStepInfo nmls_step(NmlsState& s, const StochasticObjective& obj, NoiseToken u,
                       const NmlsConfig& cfg);

// -- deterministic Armijo backtracking gradient descent -----------------------------

struct ArmijoGdConfig {
  double gamma0 = 1.0;
  double c_armijo = 0.1;
  double backtrack = 0.5;
  int max_backtracks = 20;
};

struct ArmijoGdState {
  Vec x;
  double f_x = 0.0;
  bool initialized = false;
  std::int64_t t = 0;
};

/// Monotone counterpart of nmls_step: the reference is f(x) itself.
NmlsStepInfo armijo_gd_step(ArmijoGdState& s, const Objective& obj,
                            const ArmijoGdConfig& cfg);

}  // namespace autosgd
