#include "autosgd/gradcheck.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace autosgd {

Vec finite_difference_gradient(const std::function<double(const Vec&)>& f,
                               const Vec& x, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("finite differences: h must be > 0");
  Vec g(x.size());
  Vec probe = x;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double xi = x[i];
    probe[i] = xi + h;
    const double fp = f(probe);
    probe[i] = xi - h;
    const double fm = f(probe);
    probe[i] = xi;
    if (!std::isfinite(fp) || !std::isfinite(fm))
      throw std::runtime_error("finite differences: non-finite value at component " +
                               std::to_string(i));
    g[i] = (fp - fm) / (2.0 * h);
  }
  return g;
}

UnbiasednessReport check_unbiasedness(const StochasticObjective& obj, const Vec& x) {
  const std::uint64_t n = obj.noise_support();
  if (n == 0)
    throw std::invalid_argument("unbiasedness check: noise support not enumerable");
  if (!obj.has_exact())
    throw std::invalid_argument("unbiasedness check: exact objective not available");

  const std::size_t d = x.size();
  double mean_value = 0.0;
  Vec mean_grad(d, 0.0);
  Vec g(d);
  for (std::uint64_t u = 0; u < n; ++u) {
    const NoiseToken tok{u};
    mean_value += obj.value(x, tok);
    obj.gradient(x, tok, g);
    axpy(1.0, g, mean_grad);
  }
  const double inv_n = 1.0 / static_cast<double>(n);
  mean_value *= inv_n;
  for (double& v : mean_grad) v *= inv_n;

  UnbiasednessReport report;
  const double exact = obj.exact_value(x);
  report.value_err = std::fabs(mean_value - exact) / std::max(1.0, std::fabs(exact));

  Vec exact_grad(d);
  obj.exact_gradient(x, exact_grad);
  for (std::size_t i = 0; i < d; ++i) {
    const double err = std::fabs(mean_grad[i] - exact_grad[i]) /
                       std::max(1.0, std::fabs(exact_grad[i]));
    report.grad_err = std::max(report.grad_err, err);
  }
  return report;
}

}  // namespace autosgd
