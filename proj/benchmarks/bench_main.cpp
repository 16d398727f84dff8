#include <benchmark/benchmark.h>

#include "autosgd/autogd.hpp"
#include "autosgd/autosgd.hpp"
#include "autosgd/averaging.hpp"
#include "autosgd/decision.hpp"
#include "autosgd/problems.hpp"

namespace {

using namespace autosgd;

void BM_StatsUpdate(benchmark::State& state) {
  StreamStats s;
  double d = 0.123;
  for (auto _ : state) {
    s = stats_update(s, d, d * 0.99);
    d = -d;
  }
  benchmark::DoNotOptimize(s);
}
BENCHMARK(BM_StatsUpdate);

void BM_Decide(benchmark::State& state) {
  const DecisionConfig cfg;
  double z = -3.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(decide(z, -z, 0.5 * z, 40, cfg));
    z = -z + 1e-6;
  }
}
BENCHMARK(BM_Decide);

void BM_AveragerUpdate(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  RoundAverager avg(d);
  Vec x(d, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(avg.update(x));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_AveragerUpdate)->Arg(10)->Arg(1000);

void BM_QuadraticNoisyGradient(benchmark::State& state) {
  ProblemInstance inst = make_sum_of_quadratics(1);
  RngStream rng(1, 0);
  Vec g(static_cast<std::size_t>(inst.dim));
  for (auto _ : state) {
    const NoiseToken u = inst.objective->sample_noise(rng);
    inst.objective->gradient(inst.x0, u, g);
    benchmark::DoNotOptimize(g.data());
  }
}
BENCHMARK(BM_QuadraticNoisyGradient);

void BM_LogisticNoisyGradient(benchmark::State& state) {
  ProblemInstance inst = make_logistic_regression(1, {.n = 200, .d = 2000});
  RngStream rng(1, 0);
  Vec g(static_cast<std::size_t>(inst.dim));
  for (auto _ : state) {
    const NoiseToken u = inst.objective->sample_noise(rng);
    inst.objective->gradient(inst.x0, u, g);
    benchmark::DoNotOptimize(g.data());
  }
}
BENCHMARK(BM_LogisticNoisyGradient);

void BM_AutoSgdInnerStep(benchmark::State& state) {
  ProblemInstance inst = make_sum_of_quadratics(1);
  AutoSgdConfig cfg;
  RngStream root(7, 0);
  RngStream grad_rng = root.child("grad-noise");
  RngStream eval1 = root.child("eval-noise-1");
  RngStream eval2 = root.child("eval-noise-2");
  EpisodeState ep = begin_episode(inst.x0, 0.01, 0);
  for (auto _ : state) {
    const InnerStepResult r =
        inner_step(ep, *inst.objective, grad_rng, eval1, eval2, cfg);
    if (r.outcome != DecisionOutcome::Continue) {
      auto next = finish_episode(std::move(ep), r.outcome, cfg);
      ep = begin_episode(std::move(next.x), next.gamma, ep.episode + 1);
    }
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_AutoSgdInnerStep);

void BM_AutoGdStep(benchmark::State& state) {
  ProblemInstance inst = make_deterministic_function("rosenbrock");
  AutoGdState s = make_autogd_state(*inst.exact, inst.x0, 1e-3);
  const AutoGdConfig cfg;
  for (auto _ : state) {
    s = autogd_step(s, *inst.exact, cfg).state;
    benchmark::DoNotOptimize(s.f_x);
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_AutoGdStep);

}  // namespace

BENCHMARK_MAIN();
