// Concrete benchmark objectives. Internal: shared between the generators and
// the instance export/import code, not part of the installed API.
#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "autosgd/objective.hpp"
#include "autosgd/problems.hpp"
#include "autosgd/vec.hpp"

namespace autosgd::detail {

inline double softplus(double z) {
  return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

inline double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

class SumOfQuadraticsObjective final : public StochasticObjective {
 public:
  SumOfQuadraticsObjective(std::vector<Vec> rows);

  int dim() const override { return static_cast<int>(mean_.size()); }
  NoiseToken sample_noise(RngStream& rng) const override {
    return NoiseToken{rng.next_index(rows_.size())};
  }
  double value(const Vec& x, NoiseToken u) const override {
    const Vec& row = rows_[u.payload];
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double r = row[i] - x[i];
      s += r * r;
    }
    return s;
  }
  void gradient(const Vec& x, NoiseToken u, Vec& out) const override {
    const Vec& row = rows_[u.payload];
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = 2.0 * (x[i] - row[i]);
  }
  std::uint64_t noise_support() const override { return rows_.size(); }
  bool has_exact() const override { return true; }
  // (1/n) sum ||X_i - x||^2 = ||x - mean||^2 + spread around the mean.
  double exact_value(const Vec& x) const override {
    double s = spread_;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double r = x[i] - mean_[i];
      s += r * r;
    }
    return s;
  }
  void exact_gradient(const Vec& x, Vec& out) const override {
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = 2.0 * (x[i] - mean_[i]);
  }

  const std::vector<Vec>& rows() const { return rows_; }
  const Vec& row_mean() const { return mean_; }
  double spread() const { return spread_; }

 private:
  std::vector<Vec> rows_;
  Vec mean_;
  double spread_ = 0.0;
};

class MatrixFactorizationObjective final : public StochasticObjective {
 public:
  // target matrix a: 10 x in_dim row-major; samples: n vectors of in_dim.
  MatrixFactorizationObjective(int k, int in_dim, int out_dim, Vec a,
                               std::vector<Vec> samples);

  int dim() const override { return k_ * (in_dim_ + out_dim_); }
  NoiseToken sample_noise(RngStream& rng) const override {
    return NoiseToken{rng.next_index(samples_.size())};
  }
  double value(const Vec& w, NoiseToken u) const override;
  void gradient(const Vec& w, NoiseToken u, Vec& out) const override;
  std::uint64_t noise_support() const override { return samples_.size(); }
  bool has_exact() const override { return true; }
  double exact_value(const Vec& w) const override;
  void exact_gradient(const Vec& w, Vec& out) const override;

  int k() const { return k_; }
  int in_dim() const { return in_dim_; }
  int out_dim() const { return out_dim_; }
  const Vec& target_matrix() const { return a_; }
  const std::vector<Vec>& samples() const { return samples_; }

 private:
  // residual r = W2 W1 x_u - A x_u; h = W1 x_u as a side product
  void residual(const Vec& w, std::uint64_t u, Vec& h, Vec& r) const;

  int k_;
  int in_dim_;
  int out_dim_;
  Vec a_;  // out_dim x in_dim row-major
  std::vector<Vec> samples_;
  std::vector<Vec> targets_;  // precomputed A x_i
};

class LeastSquaresObjective final : public StochasticObjective {
 public:
  LeastSquaresObjective(SparseMatrix a, Vec b);

  int dim() const override { return static_cast<int>(a_.cols); }
  NoiseToken sample_noise(RngStream& rng) const override {
    return NoiseToken{rng.next_index(a_.rows)};
  }
  double value(const Vec& x, NoiseToken u) const override {
    const double r = a_.row_dot(u.payload, x) - b_[u.payload];
    return 0.5 * static_cast<double>(a_.rows) * r * r;
  }
  void gradient(const Vec& x, NoiseToken u, Vec& out) const override {
    std::fill(out.begin(), out.end(), 0.0);
    const double r = a_.row_dot(u.payload, x) - b_[u.payload];
    a_.add_scaled_row(u.payload, static_cast<double>(a_.rows) * r, out);
  }
  std::uint64_t noise_support() const override { return a_.rows; }
  bool has_exact() const override { return true; }
  double exact_value(const Vec& x) const override {
    double s = 0.0;
    for (std::uint64_t i = 0; i < a_.rows; ++i) {
      const double r = a_.row_dot(i, x) - b_[i];
      s += r * r;
    }
    return 0.5 * s;
  }
  void exact_gradient(const Vec& x, Vec& out) const override {
    std::fill(out.begin(), out.end(), 0.0);
    for (std::uint64_t i = 0; i < a_.rows; ++i)
      a_.add_scaled_row(i, a_.row_dot(i, x) - b_[i], out);
  }

  const SparseMatrix& matrix() const { return a_; }
  const Vec& targets() const { return b_; }

 private:
  SparseMatrix a_;
  Vec b_;
};

class LogisticRegressionObjective final : public StochasticObjective {
 public:
  LogisticRegressionObjective(SparseMatrix a, std::vector<double> labels);

  int dim() const override { return static_cast<int>(a_.cols); }
  NoiseToken sample_noise(RngStream& rng) const override {
    return NoiseToken{rng.next_index(a_.rows)};
  }
  double value(const Vec& x, NoiseToken u) const override {
    const double z = -labels_[u.payload] * a_.row_dot(u.payload, x);
    return static_cast<double>(a_.rows) * softplus(z);
  }
  void gradient(const Vec& x, NoiseToken u, Vec& out) const override {
    std::fill(out.begin(), out.end(), 0.0);
    const double b = labels_[u.payload];
    const double z = -b * a_.row_dot(u.payload, x);
    a_.add_scaled_row(u.payload, -static_cast<double>(a_.rows) * b * sigmoid(z), out);
  }
  std::uint64_t noise_support() const override { return a_.rows; }
  bool has_exact() const override { return true; }
  double exact_value(const Vec& x) const override {
    double s = 0.0;
    for (std::uint64_t i = 0; i < a_.rows; ++i)
      s += softplus(-labels_[i] * a_.row_dot(i, x));
    return s;
  }
  void exact_gradient(const Vec& x, Vec& out) const override {
    std::fill(out.begin(), out.end(), 0.0);
    for (std::uint64_t i = 0; i < a_.rows; ++i) {
      const double b = labels_[i];
      const double z = -b * a_.row_dot(i, x);
      a_.add_scaled_row(i, -b * sigmoid(z), out);
    }
  }

  const SparseMatrix& matrix() const { return a_; }
  const std::vector<double>& labels() const { return labels_; }

 private:
  SparseMatrix a_;
  std::vector<double> labels_;  // +1 / -1
};

class MulticlassLogisticObjective final : public StochasticObjective {
 public:
  MulticlassLogisticObjective(SparseMatrix a, std::vector<std::uint32_t> labels,
                              int classes);

  int dim() const override { return classes_ * static_cast<int>(a_.cols); }
  NoiseToken sample_noise(RngStream& rng) const override {
    return NoiseToken{rng.next_index(a_.rows)};
  }
  double value(const Vec& x, NoiseToken u) const override;
  void gradient(const Vec& x, NoiseToken u, Vec& out) const override;
  std::uint64_t noise_support() const override { return a_.rows; }
  bool has_exact() const override { return true; }
  double exact_value(const Vec& x) const override;
  void exact_gradient(const Vec& x, Vec& out) const override;

  int classes() const { return classes_; }
  const SparseMatrix& matrix() const { return a_; }
  const std::vector<std::uint32_t>& labels() const { return labels_; }

 private:
  // scores_c = x_c . a_i and the stabilized log-sum-exp
  void scores(const Vec& x, std::uint64_t i, Vec& s) const;
  static double log_sum_exp(const Vec& s);

  SparseMatrix a_;
  std::vector<std::uint32_t> labels_;
  int classes_;
};

class TwoDimFunction final : public Objective {
 public:
  enum Kind { Beale, Matyas, Rosenbrock, ThreeHumpCamel, Valley };
  explicit TwoDimFunction(Kind kind) : kind_(kind) {}

  int dim() const override { return 2; }
  double value(const Vec& p) const override;
  void gradient(const Vec& p, Vec& out) const override;

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

}  // namespace autosgd::detail
