#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace autosgd {

/// Dense parameter vector. Data matrices may be sparse internally, but the
/// optimization variable is always dense 64-bit floating point.
using Vec = std::vector<double>;

inline bool all_finite(const Vec& x) {
  for (double v : x)
    if (!std::isfinite(v)) return false;
  return true;
}

inline void check_dim(const Vec& x, std::size_t d, const char* what) {
  if (x.size() != d)
    throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

inline double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double sqnorm(const Vec& a) { return dot(a, a); }

inline double norm(const Vec& a) { return std::sqrt(sqnorm(a)); }

/// y += alpha * x
inline void axpy(double alpha, const Vec& x, Vec& y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

inline Vec scaled(const Vec& x, double alpha) {
  Vec r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = alpha * x[i];
  return r;
}

}  // namespace autosgd
