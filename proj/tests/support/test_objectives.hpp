// Shared test doubles: function-backed objectives, call counters and call
// recorders used to pin down evaluation budgets and noise-token wiring.
#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "autosgd/objective.hpp"
#include "autosgd/vec.hpp"

namespace autosgd::testing {

class FnObjective final : public Objective {
 public:
  FnObjective(int dim, std::function<double(const Vec&)> f,
              std::function<Vec(const Vec&)> g)
      : dim_(dim), f_(std::move(f)), g_(std::move(g)) {}

  int dim() const override { return dim_; }
  double value(const Vec& x) const override { return f_(x); }
  void gradient(const Vec& x, Vec& out) const override { out = g_(x); }

 private:
  int dim_;
  std::function<double(const Vec&)> f_;
  std::function<Vec(const Vec&)> g_;
};

inline std::shared_ptr<FnObjective> square_1d() {
  return std::make_shared<FnObjective>(
      1, [](const Vec& x) { return x[0] * x[0]; },
      [](const Vec& x) { return Vec{2.0 * x[0]}; });
}

inline std::shared_ptr<FnObjective> quartic_1d() {
  return std::make_shared<FnObjective>(
      1, [](const Vec& x) { return x[0] * x[0] * x[0] * x[0]; },
      [](const Vec& x) { return Vec{4.0 * x[0] * x[0] * x[0]}; });
}

inline std::shared_ptr<FnObjective> sqnorm_nd(int d) {
  return std::make_shared<FnObjective>(
      d, [](const Vec& x) { return sqnorm(x); },
      [](const Vec& x) { return scaled(x, 2.0); });
}

/// Counts value/gradient calls on a deterministic objective.
class CountingObjective final : public Objective {
 public:
  explicit CountingObjective(std::shared_ptr<const Objective> inner)
      : inner_(std::move(inner)) {}

  int dim() const override { return inner_->dim(); }
  double value(const Vec& x) const override {
    ++values;
    return inner_->value(x);
  }
  void gradient(const Vec& x, Vec& out) const override {
    ++gradients;
    inner_->gradient(x, out);
  }

  mutable std::int64_t values = 0;
  mutable std::int64_t gradients = 0;

 private:
  std::shared_ptr<const Objective> inner_;
};

/// Counts calls on a stochastic objective.
class CountingStochastic final : public StochasticObjective {
 public:
  explicit CountingStochastic(std::shared_ptr<const StochasticObjective> inner)
      : inner_(std::move(inner)) {}

  int dim() const override { return inner_->dim(); }
  NoiseToken sample_noise(RngStream& rng) const override {
    ++samples;
    return inner_->sample_noise(rng);
  }
  double value(const Vec& x, NoiseToken u) const override {
    ++values;
    return inner_->value(x, u);
  }
  void gradient(const Vec& x, NoiseToken u, Vec& out) const override {
    ++gradients;
    inner_->gradient(x, u, out);
  }
  std::uint64_t noise_support() const override { return inner_->noise_support(); }
  bool has_exact() const override { return inner_->has_exact(); }
  double exact_value(const Vec& x) const override { return inner_->exact_value(x); }
  void exact_gradient(const Vec& x, Vec& out) const override {
    inner_->exact_gradient(x, out);
  }

  mutable std::int64_t samples = 0;
  mutable std::int64_t values = 0;
  mutable std::int64_t gradients = 0;

 private:
  std::shared_ptr<const StochasticObjective> inner_;
};

/// Records every call with its token and evaluation point.
class RecordingStochastic final : public StochasticObjective {
 public:
  enum class Call { Value, Gradient };
  struct Record {
    Call call;
    std::uint64_t token;
    Vec x;
  };

  explicit RecordingStochastic(std::shared_ptr<const StochasticObjective> inner)
      : inner_(std::move(inner)) {}

  int dim() const override { return inner_->dim(); }
  NoiseToken sample_noise(RngStream& rng) const override {
    return inner_->sample_noise(rng);
  }
  double value(const Vec& x, NoiseToken u) const override {
    records.push_back({Call::Value, u.payload, x});
    return inner_->value(x, u);
  }
  void gradient(const Vec& x, NoiseToken u, Vec& out) const override {
    records.push_back({Call::Gradient, u.payload, x});
    inner_->gradient(x, u, out);
  }
  std::uint64_t noise_support() const override { return inner_->noise_support(); }
  bool has_exact() const override { return inner_->has_exact(); }
  double exact_value(const Vec& x) const override { return inner_->exact_value(x); }
  void exact_gradient(const Vec& x, Vec& out) const override {
    inner_->exact_gradient(x, out);
  }

  mutable std::vector<Record> records;

 private:
  std::shared_ptr<const StochasticObjective> inner_;
};

}  // namespace autosgd::testing
