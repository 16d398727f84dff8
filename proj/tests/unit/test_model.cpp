#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "autosgd/gradcheck.hpp"
#include "autosgd/problems.hpp"
#include "gradcheck_points.hpp"
#include "test_objectives.hpp"

using namespace autosgd;

TEST_CASE("central differences on a quadratic are exact to rounding") {
  const Vec g = finite_difference_gradient(
      [](const Vec& x) { return x[0] * x[0]; }, Vec{3.0}, 1e-5);
  CHECK(g[0] == doctest::Approx(6.0).epsilon(1e-8));
}

TEST_CASE("central differences of a constant vanish") {
  const Vec g = finite_difference_gradient(
      [](const Vec&) { return 7.0; }, Vec{1.0, -2.0, 0.5}, 1e-4);
  for (double v : g) CHECK(v == 0.0);
}

TEST_CASE("central differences match the enumerated estimator sum") {
  // Two data rows {0, 2} in one dimension; probing the sum over both rows
  // of the per-sample estimator gives d/dx [x^2 + (2-x)^2] = -4 at x = 0.
  ProblemInstance inst = sum_of_quadratics_from_data({{0.0}, {2.0}}, {0.0});
  const auto& obj = *inst.objective;
  const Vec g = finite_difference_gradient(
      [&](const Vec& x) {
        double s = 0.0;
        for (std::uint64_t u = 0; u < obj.noise_support(); ++u)
          s += obj.value(x, NoiseToken{u});
        return s;
      },
      Vec{0.0}, 1e-6);
  CHECK(g[0] == doctest::Approx(-4.0).epsilon(1e-6));
}

TEST_CASE("non-finite probes are reported with the component") {
  CHECK_THROWS_WITH_AS(
      finite_difference_gradient([](const Vec& x) { return std::log(x[0]); },
                                 Vec{0.5}, 1.0),
      doctest::Contains("component 0"), std::runtime_error);
}

TEST_CASE("finite-difference step must be positive") {
  CHECK_THROWS_AS(finite_difference_gradient([](const Vec&) { return 0.0; },
                                             Vec{1.0}, 0.0),
                  std::invalid_argument);
}

TEST_CASE("unbiasedness holds exactly on the two-row fixture") {
  ProblemInstance inst = sum_of_quadratics_from_data({{0.0}, {2.0}}, {0.0});
  const UnbiasednessReport r = check_unbiasedness(*inst.objective, Vec{1.0});
  CHECK(r.value_err == 0.0);
  CHECK(r.grad_err == 0.0);
}

TEST_CASE("unbiasedness of the least-squares estimator by enumeration") {
  ProblemInstance inst = make_least_squares(3, {.n = 3, .d = 6});
  const UnbiasednessReport r = check_unbiasedness(*inst.objective, inst.x0);
  CHECK(r.value_err <= 1e-12);
  CHECK(r.grad_err <= 1e-12);
}

TEST_CASE("degenerate noise is trivially unbiased") {
  DegenerateNoise obj(autosgd::testing::sqnorm_nd(4));
  const UnbiasednessReport r = check_unbiasedness(obj, Vec{1.0, 2.0, 3.0, 4.0});
  CHECK(r.value_err == 0.0);
  CHECK(r.grad_err == 0.0);
}

TEST_CASE("unbiasedness check requires an exact form and finite support") {
  class NoExact final : public StochasticObjective {
   public:
    int dim() const override { return 1; }
    NoiseToken sample_noise(RngStream&) const override { return {}; }
    double value(const Vec&, NoiseToken) const override { return 0.0; }
    void gradient(const Vec&, NoiseToken, Vec& g) const override { g[0] = 0.0; }
    std::uint64_t noise_support() const override { return 2; }
  };
  CHECK_THROWS_AS(check_unbiasedness(NoExact{}, Vec{0.0}), std::invalid_argument);

  DegenerateNoise wrapped(autosgd::testing::square_1d());
  CHECK_NOTHROW(check_unbiasedness(wrapped, Vec{1.0}));
}

namespace {

double fd_rel_error(const StochasticObjective& obj, const Vec& x, NoiseToken u) {
  Vec g(x.size());
  obj.gradient(x, u, g);
  const Vec fd = finite_difference_gradient(
      [&](const Vec& q) { return obj.value(q, u); }, x, 1e-6);
  double diff = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double e = fd[i] - g[i];
    diff += e * e;
  }
  return std::sqrt(diff) / std::max(1.0, norm(g));
}

void check_problem_gradients(const ProblemInstance& inst, int points) {
  RngStream rng(2024, RngStream::hash_label(inst.name));
  INFO(inst.name);
  for (int p = 0; p < points; ++p) {
    const Vec x = autosgd::testing::gradcheck_point(inst, rng);
    const NoiseToken u = inst.objective->sample_noise(rng);
    CHECK(fd_rel_error(*inst.objective, x, u) <= 1e-5);
  }
}

}  // namespace

TEST_CASE("noisy gradients match central differences on every problem") {
  check_problem_gradients(make_sum_of_quadratics(1), 25);
  check_problem_gradients(make_matrix_factorization(4, 1, {.n = 50}), 25);
  check_problem_gradients(make_least_squares(1, {.n = 40, .d = 120}), 25);
  check_problem_gradients(make_logistic_regression(1, {.n = 40, .d = 120}), 25);
  check_problem_gradients(
      make_multiclass_logistic(1, {.n = 30, .features = 40, .classes = 7}), 25);
  for (const ProblemInstance& inst : deterministic_suite())
    check_problem_gradients(inst, 25);
}
