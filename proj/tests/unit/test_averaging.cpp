#include <doctest.h>

#include <cmath>
#include <type_traits>
#include <vector>

#include "autosgd/averaging.hpp"
#include "autosgd/rng.hpp"

using namespace autosgd;

TEST_CASE("integer-stream fixtures pin both interpolation branches") {
  // x_t = t with boundaries 0,1,3,7,...: round 1 holds {1,2}, round 2 {3..6}.
  RoundAverager avg(1);
  std::vector<double> z;
  for (int t = 0; t <= 6; ++t) z.push_back(avg.update({double(t)})[0]);

  CHECK(z[0] == 0.0);                                 // round 0, single element
  CHECK(z[4] == doctest::Approx(2.5).epsilon(1e-15));    // alpha = 0.5 (first branch)
  CHECK(z[5] == doctest::Approx(3.375).epsilon(1e-15));  // alpha = 0.75 (second branch)
  CHECK(z[6] == doctest::Approx(4.5).epsilon(1e-15));    // end of round: mean(3..6)
}

namespace {

struct TraceOracle {
  std::vector<Vec> xs;

  Vec round_mean(std::int64_t from, std::int64_t to) const {  // inclusive
    Vec m(xs.front().size(), 0.0);
    for (std::int64_t t = from; t <= to; ++t) axpy(1.0, xs[t], m);
    for (double& v : m) v /= static_cast<double>(to - from + 1);
    return m;
  }
};

std::vector<std::int64_t> boundaries_pow2(std::int64_t upto) {
  std::vector<std::int64_t> ts{0};
  while (ts.back() < upto) ts.push_back(2 * ts.back() + 1);
  return ts;
}

}  // namespace

TEST_CASE("round ends emit exact batch means; interior points interpolate") {
  const int d = 3;
  constexpr std::int64_t len = 1023;
  RngStream rng(11, 0);
  TraceOracle oracle;
  RoundAverager avg(d);
  const auto ts = boundaries_pow2(len + 1);

  for (std::int64_t t = 0; t < len; ++t) {
    Vec x(d);
    for (double& v : x) v = rng.next_normal();
    oracle.xs.push_back(x);
    const Vec z = avg.update(x);
    const double alpha = avg.last_alpha();
    CHECK(alpha >= 0.0);
    CHECK(alpha <= 1.0);

    // locate the round of t
    std::size_t r = 0;
    while (ts[r + 1] <= t) ++r;
    const std::int64_t t_r = ts[r];
    const std::int64_t t_next = ts[r + 1];

    if (t == t_next - 1) {
      const Vec m = oracle.round_mean(t_r, t);
      for (int i = 0; i < d; ++i)
        REQUIRE(std::fabs(z[i] - m[i]) <= 1e-12 * std::max(1.0, std::fabs(m[i])));
    } else if (r >= 1) {
      const std::int64_t t_prev = ts[r - 1];
      const double reach = static_cast<double>(t - t_prev + 1);
      const double round_len = static_cast<double>(t_next - t_r);
      const double n_cur = static_cast<double>(t - t_r + 1);
      const double a = reach <= round_len ? n_cur / reach : n_cur / round_len;
      const Vec prev = oracle.round_mean(t_prev, t_r - 1);
      const Vec cur = oracle.round_mean(t_r, t);
      for (int i = 0; i < d; ++i) {
        const double want = (1.0 - a) * prev[i] + a * cur[i];
        REQUIRE(std::fabs(z[i] - want) <= 1e-11 * std::max(1.0, std::fabs(want)));
      }
    }
  }
}

TEST_CASE("a constant stream is a fixed point") {
  RoundAverager avg(2);
  for (int t = 0; t < 300; ++t) {
    const Vec z = avg.update({3.25, -1.5});
    CHECK(z[0] == doctest::Approx(3.25).epsilon(1e-14));
    CHECK(z[1] == doctest::Approx(-1.5).epsilon(1e-14));
  }
}

TEST_CASE("outputs stay in the hull of the two round means") {
  RngStream rng(12, 0);
  RoundAverager avg(1);
  double prev_min = -10.0, prev_max = 10.0;
  for (int t = 0; t < 2000; ++t) {
    const double x = rng.next_normal() * 5.0;
    prev_min = std::min(prev_min, x);
    prev_max = std::max(prev_max, x);
    const double z = avg.update({x})[0];
    CHECK(z >= prev_min - 1e-9);
    CHECK(z <= prev_max + 1e-9);
  }
}

TEST_CASE("slower round growth keeps round-end exactness") {
  // delta = 0.75 -> boundaries 0, 1, 5, 21, 85, 341
  RoundAverager avg(1, {.delta = 0.75});
  TraceOracle oracle;
  RngStream rng(13, 0);
  const std::vector<std::int64_t> ts{0, 1, 5, 21, 85, 341};
  for (std::int64_t t = 0; t < 340; ++t) {
    Vec x{rng.next_double() * 10.0};
    oracle.xs.push_back(x);
    const Vec z = avg.update(x);
    for (std::size_t r = 0; r + 1 < ts.size(); ++r) {
      if (t != ts[r + 1] - 1) continue;
      const Vec m = oracle.round_mean(ts[r], t);
      REQUIRE(std::fabs(z[0] - m[0]) <= 1e-12 * std::max(1.0, std::fabs(m[0])));
    }
  }
}

TEST_CASE("delta outside [0,1) is rejected and the struct is fixed-size") {
  CHECK_THROWS_AS(RoundAverager(1, {.delta = 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(RoundAverager(1, {.delta = -0.1}), std::invalid_argument);
  static_assert(sizeof(RoundAverager) <= 256);  // two vectors plus counters
}

TEST_CASE("dimension mismatches are rejected") {
  RoundAverager avg(2);
  CHECK_THROWS_AS(avg.update({1.0}), std::invalid_argument);
}
