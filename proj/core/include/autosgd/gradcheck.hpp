#pragma once

#include <functional>

#include "autosgd/objective.hpp"
#include "autosgd/vec.hpp"

namespace autosgd {

/// Central-difference gradient estimate of a scalar function,
/// component i = (f(x + h e_i) - f(x - h e_i)) / (2h).
/// Throws if f is non-finite at any probe point, naming the component.
Vec finite_difference_gradient(const std::function<double(const Vec&)>& f,
                               const Vec& x, double h = 1e-6);

/// Discrepancies between the enumerated mean of a finite-support estimator
/// and the exact objective. Errors are relative with a floor of 1 on the
/// reference magnitude, so small exact values are compared absolutely.
struct UnbiasednessReport {
  double value_err = 0.0;  // |mean_u f(x,u) - f(x)| / max(1, |f(x)|)
  double grad_err = 0.0;   // max_i |mean_u g(x,u)_i - grad f(x)_i| / max(1, |grad f(x)_i|)
};

/// Enumerates the full noise support. Requires a finite support and an exact
/// form; throws otherwise.
UnbiasednessReport check_unbiasedness(const StochasticObjective& obj, const Vec& x);

}  // namespace autosgd
