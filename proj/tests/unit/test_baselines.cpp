#include <doctest.h>

#include <cmath>
#include <vector>

#include "autosgd/baselines.hpp"
#include "autosgd/problems.hpp"
#include "test_objectives.hpp"

using namespace autosgd;
using namespace autosgd::testing;

TEST_CASE("plain sgd steps and the invsqrt decay schedule") {
  SgdState s{{1.0}, 0};
  sgd_step(s, {2.0}, {.gamma = 0.1});
  CHECK(s.x[0] == doctest::Approx(0.8).epsilon(1e-15));

  SgdState decayed{{0.0}, 0};
  const SgdConfig cfg{.gamma = 0.4, .invsqrt_decay = true};
  CHECK(decayed.effective_rate(cfg) == 0.4);  // first step uses gamma0 exactly
  decayed.t = 3;
  CHECK(decayed.effective_rate(cfg) == doctest::Approx(0.2).epsilon(1e-15));
}

TEST_CASE("the distance-over-gradients first step and fixed point") {
  const DogConfig cfg;
  DogState s = make_dog_state({0.0}, cfg);
  CHECK(s.r_bar == 1e-6);  // r_eps * (1 + ||x0||)
  dog_step(s, {2.0}, cfg);
  CHECK(s.last_rate == doctest::Approx(1e-6 / std::sqrt(4.0 + 1e-8)).epsilon(1e-12));
  CHECK(s.x[0] == doctest::Approx(-2.0 * 1e-6 / std::sqrt(4.0 + 1e-8)).epsilon(1e-12));

  DogState idle = make_dog_state({3.0}, cfg);
  for (int t = 0; t < 50; ++t) dog_step(idle, {0.0}, cfg);
  CHECK(idle.x[0] == 3.0);
  CHECK(idle.r_bar == doctest::Approx(1e-6 * 4.0).epsilon(1e-12));
}

TEST_CASE("distance and gradient accumulators never decrease") {
  auto inst = make_sum_of_quadratics(21, {.n = 30, .d = 5});
  const DogConfig cfg;
  DogState s = make_dog_state(inst.x0, cfg);
  RngStream rng(4, 0);
  Vec g(inst.x0.size());
  double r_prev = s.r_bar, g_prev = s.grad_sq_sum;
  for (int t = 0; t < 2000; ++t) {
    const NoiseToken u = inst.objective->sample_noise(rng);
    inst.objective->gradient(s.x, u, g);
    dog_step(s, g, cfg);
    REQUIRE(s.r_bar >= r_prev);
    REQUIRE(s.grad_sq_sum >= g_prev);
    r_prev = s.r_bar;
    g_prev = s.grad_sq_sum;
  }
}

TEST_CASE("untuned dog still descends a quadratic") {
  auto obj = sqnorm_nd(1);
  const DogConfig cfg;
  DogState s = make_dog_state({1.0}, cfg);
  Vec g(1);
  for (int t = 0; t < 10000; ++t) {
    obj->gradient(s.x, g);
    dog_step(s, g, cfg);
  }
  CHECK(obj->value(s.x) < 1.0);
  CHECK(obj->value(s.x) < 1e-2);
}

TEST_CASE("schedule-free first step collapses onto z") {
  SfsgdState s = make_sfsgd_state({1.0});
  auto obj = sqnorm_nd(1);
  sfsgd_step(s, [&](const Vec& y, Vec& g) { obj->gradient(y, g); },
             {.gamma = 0.1, .beta = 0.9});
  CHECK(s.x_bar == s.z);
  CHECK(s.z[0] == doctest::Approx(0.8).epsilon(1e-15));
}

TEST_CASE("zero momentum degenerates to averaged sgd") {
  auto obj = sqnorm_nd(1);
  SfsgdState a = make_sfsgd_state({1.0});
  SgdState plain{{1.0}, 0};
  std::vector<double> zs;
  for (int t = 0; t < 20; ++t) {
    sfsgd_step(a, [&](const Vec& y, Vec& g) { obj->gradient(y, g); },
               {.gamma = 0.1, .beta = 0.0});
    Vec g(1);
    obj->gradient(plain.x, g);
    sgd_step(plain, g, {.gamma = 0.1});
    zs.push_back(plain.x[0]);
    CHECK(a.z[0] == doctest::Approx(plain.x[0]).epsilon(1e-12));
  }
  double mean = 0.0;
  for (double z : zs) mean += z / zs.size();
  CHECK(a.x_bar[0] == doctest::Approx(mean).epsilon(1e-10));
}

TEST_CASE("the reported average is the exact mean of the z iterates") {
  auto inst = make_sum_of_quadratics(22, {.n = 25, .d = 4});
  SfsgdState s = make_sfsgd_state(inst.x0);
  RngStream rng(5, 0);
  Vec sum(inst.x0.size(), 0.0);
  const int steps = 200;
  for (int t = 0; t < steps; ++t) {
    const NoiseToken u = inst.objective->sample_noise(rng);
    sfsgd_step(s, [&](const Vec& y, Vec& g) { inst.objective->gradient(y, u, g); },
               {.gamma = 0.01, .beta = 0.9});
    axpy(1.0, s.z, sum);
  }
  for (std::size_t i = 0; i < sum.size(); ++i)
    REQUIRE(s.x_bar[i] == doctest::Approx(sum[i] / steps).epsilon(1e-10));
}

TEST_CASE("schedule-free sgd solves the scalar quadratic") {
  auto obj = sqnorm_nd(1);
  SfsgdState s = make_sfsgd_state({1.0});
  for (int t = 0; t < 1000; ++t)
    sfsgd_step(s, [&](const Vec& y, Vec& g) { obj->gradient(y, g); },
               {.gamma = 0.1, .beta = 0.9});
  CHECK(obj->value(s.x_bar) <= 1e-6);
}

TEST_CASE("nonmonotone line search walks the hand-computed chain") {
  DegenerateNoise obj(square_1d());
  NmlsState s;
  s.x = {1.0};
  const NmlsConfig cfg{.gamma_max = 1.0};
  const NmlsStepInfo info = nmls_step(s, obj, NoiseToken{0}, cfg);
  // gamma = 1 fails (1 > 0.6), gamma = 0.5 lands on the optimum.
  CHECK(info.backtracks == 1);
  CHECK(info.gamma_used == 0.5);
  CHECK(s.x[0] == 0.0);
  // Reference relaxes toward the new value: (0.5 * 1 * 1 + 0) / 1.5.
  CHECK(s.c_ref == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(s.q == doctest::Approx(1.5).epsilon(1e-15));
}

TEST_CASE("a stationary point accepts the full step immediately") {
  DegenerateNoise obj(square_1d());
  NmlsState s;
  s.x = {0.0};
  const NmlsStepInfo info = nmls_step(s, obj, NoiseToken{0}, {.gamma_max = 2.0});
  CHECK(info.backtracks == 0);
  CHECK(info.gamma_used == 2.0);
  CHECK(s.x[0] == 0.0);
}

TEST_CASE("backtracking exhausts gracefully on a cliff") {
  auto cliff = std::make_shared<FnObjective>(
      1, [](const Vec& x) { return std::exp(100.0 * x[0]); },
      [](const Vec& x) { return Vec{100.0 * std::exp(100.0 * x[0])}; });
  DegenerateNoise obj(cliff);
  NmlsState s;
  s.x = {1.0};
  const NmlsConfig cfg{.gamma_max = 1.0};
  const NmlsStepInfo info = nmls_step(s, obj, NoiseToken{0}, cfg);
  CHECK(info.backtracks == cfg.max_backtracks);
  CHECK(info.gamma_used == doctest::Approx(std::pow(0.5, 20)).epsilon(1e-12));
  CHECK(std::isfinite(s.x[0]));
}

TEST_CASE("deterministic backtracking accepts the half step on the quadratic") {
  auto obj = square_1d();
  ArmijoGdState s;
  s.x = {1.0};
  const NmlsStepInfo info = armijo_gd_step(s, *obj, {.gamma0 = 1.0});
  CHECK(info.backtracks == 1);
  CHECK(info.gamma_used == 0.5);
  CHECK(s.x[0] == 0.0);

  ArmijoGdState still;
  still.x = {0.0};
  armijo_gd_step(still, *obj, {.gamma0 = 1.0});
  CHECK(still.x[0] == 0.0);
}

TEST_CASE("backtracking descent is monotone across ten thousand steps") {
  ProblemInstance rb = make_deterministic_function("rosenbrock");
  ArmijoGdState s;
  s.x = rb.x0;  // (-1.2, 1)
  double f_prev = rb.exact->value(s.x);
  int total_backtracks = 0;
  for (int t = 0; t < 10000; ++t) {
    const NmlsStepInfo info = armijo_gd_step(s, *rb.exact, {.gamma0 = 1.0});
    REQUIRE(info.backtracks <= 20);
    total_backtracks += info.backtracks;
    REQUIRE(s.f_x <= f_prev);
    f_prev = s.f_x;
  }
  CHECK(f_prev < 1e-3);
  CHECK(total_backtracks > 0);
}
