#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>

#include "autosgd/rng.hpp"
#include "autosgd/vec.hpp"

namespace autosgd {

/// Deterministic objective: exact value and gradient. Implementations are
/// immutable after construction and safe to call from multiple threads.
class Objective {
 public:
  virtual ~Objective() = default;
  virtual int dim() const = 0;
  virtual double value(const Vec& x) const = 0;
  virtual void gradient(const Vec& x, Vec& out) const = 0;

  Vec gradient(const Vec& x) const {
    Vec g(static_cast<std::size_t>(dim()));
    gradient(x, g);
    return g;
  }
};

/// Opaque noise draw. Re-evaluating with the same token must reproduce the
/// same result, which is what makes paired (common random number) comparisons
/// possible. For the finite-support problems the payload is a data index.
struct NoiseToken {
  std::uint64_t payload = 0;
  friend bool operator==(const NoiseToken&, const NoiseToken&) = default;
};

/// Stochastic objective f(x) = E[f(x,u)], grad f(x) = E[g(x,u)], u ~ phi.
/// Tractable problems additionally expose the exact value/gradient and, when
/// the noise is uniform over a finite index set, the support size so tests
/// can enumerate it.
class StochasticObjective {
 public:
  virtual ~StochasticObjective() = default;
  virtual int dim() const = 0;
  virtual NoiseToken sample_noise(RngStream& rng) const = 0;
  virtual double value(const Vec& x, NoiseToken u) const = 0;
  virtual void gradient(const Vec& x, NoiseToken u, Vec& out) const = 0;

  /// Size of the finite noise support, or 0 when not enumerable.
  /// Tokens for an enumerable support are the payloads {0, ..., n-1}.
  virtual std::uint64_t noise_support() const { return 0; }

  virtual bool has_exact() const { return false; }
  virtual double exact_value(const Vec&) const {
    throw std::logic_error("exact objective value not available");
  }
  virtual void exact_gradient(const Vec&, Vec&) const {
    throw std::logic_error("exact gradient not available");
  }

  Vec gradient(const Vec& x, NoiseToken u) const {
    Vec g(static_cast<std::size_t>(dim()));
    gradient(x, u, g);
    return g;
  }
};

/// Deterministic objective viewed as a stochastic one with a single noise
/// value. The degenerate case of the expectation model.
class DegenerateNoise final : public StochasticObjective {
 public:
  explicit DegenerateNoise(std::shared_ptr<const Objective> obj)
      : obj_(std::move(obj)) {}

  int dim() const override { return obj_->dim(); }
  NoiseToken sample_noise(RngStream&) const override { return NoiseToken{0}; }
  double value(const Vec& x, NoiseToken) const override { return obj_->value(x); }
  void gradient(const Vec& x, NoiseToken, Vec& out) const override {
    obj_->gradient(x, out);
  }
  std::uint64_t noise_support() const override { return 1; }
  bool has_exact() const override { return true; }
  double exact_value(const Vec& x) const override { return obj_->value(x); }
  void exact_gradient(const Vec& x, Vec& out) const override {
    obj_->gradient(x, out);
  }

 private:
  std::shared_ptr<const Objective> obj_;
};

/// Exact value/gradient of a stochastic objective exposed as a deterministic
/// objective, so deterministic optimizers can run on the benchmark problems.
class ExactView final : public Objective {
 public:
  explicit ExactView(std::shared_ptr<const StochasticObjective> obj)
      : obj_(std::move(obj)) {
    if (!obj_->has_exact())
      throw std::invalid_argument("ExactView: objective has no exact form");
  }

  int dim() const override { return obj_->dim(); }
  double value(const Vec& x) const override { return obj_->exact_value(x); }
  void gradient(const Vec& x, Vec& out) const override {
    obj_->exact_gradient(x, out);
  }

 private:
  std::shared_ptr<const StochasticObjective> obj_;
};

}  // namespace autosgd
