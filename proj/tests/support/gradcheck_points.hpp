// Gradient-check probe points. Most problems use standard normal parameter
// draws; matrix factorization needs points with a small residual relative to
// its target scale (rows up to kappa = 1e5), otherwise central differences
// lose the gradient in cancellation. Those points pick W1 at random and
// solve the inner least-squares problem for W2.
#pragma once

#include <stdexcept>

#include "autosgd/problems.hpp"
#include "autosgd/rng.hpp"
#include "problem_objectives.hpp"

namespace autosgd::testing {

inline Vec mf_gradcheck_point(const detail::MatrixFactorizationObjective& obj,
                              RngStream& rng) {
  const int k = obj.k();
  const int in = obj.in_dim();
  const int out = obj.out_dim();
  Vec w(static_cast<std::size_t>(k * (in + out)), 0.0);
  for (int i = 0; i < k * in; ++i) w[static_cast<std::size_t>(i)] = rng.next_normal();

  // Accumulate the normal equations of min_{W2} sum_i ||W2 h_i - A x_i||^2
  // with h_i = W1 x_i: M = sum h h^T (k x k), B = sum (A x) h^T (out x k).
  std::vector<double> m(static_cast<std::size_t>(k * k), 0.0);
  std::vector<double> b(static_cast<std::size_t>(out * k), 0.0);
  Vec h(static_cast<std::size_t>(k));
  const Vec& a = obj.target_matrix();
  for (const Vec& x : obj.samples()) {
    for (int r = 0; r < k; ++r) {
      double s = 0.0;
      for (int cidx = 0; cidx < in; ++cidx)
        s += w[static_cast<std::size_t>(r * in + cidx)] * x[static_cast<std::size_t>(cidx)];
      h[static_cast<std::size_t>(r)] = s;
    }
    Vec t(static_cast<std::size_t>(out), 0.0);
    for (int r = 0; r < out; ++r) {
      double s = 0.0;
      for (int cidx = 0; cidx < in; ++cidx)
        s += a[static_cast<std::size_t>(r * in + cidx)] * x[static_cast<std::size_t>(cidx)];
      t[static_cast<std::size_t>(r)] = s;
    }
    for (int r = 0; r < k; ++r)
      for (int cidx = 0; cidx < k; ++cidx)
        m[static_cast<std::size_t>(r * k + cidx)] +=
            h[static_cast<std::size_t>(r)] * h[static_cast<std::size_t>(cidx)];
    for (int r = 0; r < out; ++r)
      for (int cidx = 0; cidx < k; ++cidx)
        b[static_cast<std::size_t>(r * k + cidx)] +=
            t[static_cast<std::size_t>(r)] * h[static_cast<std::size_t>(cidx)];
  }
  double trace = 0.0;
  for (int r = 0; r < k; ++r) trace += m[static_cast<std::size_t>(r * k + r)];
  for (int r = 0; r < k; ++r) m[static_cast<std::size_t>(r * k + r)] += 1e-10 * trace + 1e-12;

  // Solve M w2_row = b_row for each output row (Gaussian elimination with
  // partial pivoting on a copy of M augmented with all right-hand sides).
  const int cols = k + out;
  std::vector<double> aug(static_cast<std::size_t>(k * cols), 0.0);
  for (int r = 0; r < k; ++r) {
    for (int cidx = 0; cidx < k; ++cidx)
      aug[static_cast<std::size_t>(r * cols + cidx)] = m[static_cast<std::size_t>(r * k + cidx)];
    for (int rhs = 0; rhs < out; ++rhs)
      aug[static_cast<std::size_t>(r * cols + k + rhs)] = b[static_cast<std::size_t>(rhs * k + r)];
  }
  for (int col = 0; col < k; ++col) {
    int pivot = col;
    for (int r = col + 1; r < k; ++r)
      if (std::fabs(aug[static_cast<std::size_t>(r * cols + col)]) >
          std::fabs(aug[static_cast<std::size_t>(pivot * cols + col)]))
        pivot = r;
    if (pivot != col)
      for (int cidx = 0; cidx < cols; ++cidx)
        std::swap(aug[static_cast<std::size_t>(col * cols + cidx)],
                  aug[static_cast<std::size_t>(pivot * cols + cidx)]);
    const double diag = aug[static_cast<std::size_t>(col * cols + col)];
    if (diag == 0.0) throw std::runtime_error("mf gradcheck point: singular system");
    for (int r = 0; r < k; ++r) {
      if (r == col) continue;
      const double factor = aug[static_cast<std::size_t>(r * cols + col)] / diag;
      for (int cidx = col; cidx < cols; ++cidx)
        aug[static_cast<std::size_t>(r * cols + cidx)] -=
            factor * aug[static_cast<std::size_t>(col * cols + cidx)];
    }
  }
  for (int rhs = 0; rhs < out; ++rhs)
    for (int r = 0; r < k; ++r)
      w[static_cast<std::size_t>(k * in + rhs * k + r)] =
          aug[static_cast<std::size_t>(r * cols + k + rhs)] /
          aug[static_cast<std::size_t>(r * cols + r)];
  return w;
}

inline Vec gradcheck_point(const ProblemInstance& inst, RngStream& rng) {
  if (auto* mf = dynamic_cast<const detail::MatrixFactorizationObjective*>(
          inst.objective.get()))
    return mf_gradcheck_point(*mf, rng);
  Vec x(static_cast<std::size_t>(inst.dim));
  for (double& v : x) v = rng.next_normal();
  return x;
}

}  // namespace autosgd::testing
