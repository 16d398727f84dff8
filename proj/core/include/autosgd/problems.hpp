#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "autosgd/objective.hpp"
#include "autosgd/vec.hpp"

namespace autosgd {

/// Compressed sparse row matrix for the benchmark data sets. Parameters stay
/// dense; only data matrices are sparse.
struct SparseMatrix {
  std::uint64_t rows = 0;
  std::uint64_t cols = 0;
  std::vector<std::uint64_t> row_ptr;  // size rows + 1
  std::vector<std::uint32_t> col;
  std::vector<double> val;

  double row_dot(std::uint64_t i, const Vec& x) const {
    double s = 0.0;
    for (std::uint64_t p = row_ptr[i]; p < row_ptr[i + 1]; ++p)
      s += val[p] * x[col[p]];
    return s;
  }
  void add_scaled_row(std::uint64_t i, double alpha, Vec& out) const {
    for (std::uint64_t p = row_ptr[i]; p < row_ptr[i + 1]; ++p)
      out[col[p]] += alpha * val[p];
  }
};

struct Optimum {
  Vec x;
  double f = 0.0;
};

/// A generated benchmark problem: the stochastic objective (degenerate noise
/// for the deterministic test functions), its exact deterministic view when
/// tractable, the initial point from the problem's own recipe, and a hash of
/// the generated data for reproducibility checks.
struct ProblemInstance {
  std::string name;
  std::shared_ptr<const StochasticObjective> objective;
  std::shared_ptr<const Objective> exact;
  std::uint64_t n = 0;  // sample count, 0 for deterministic functions
  int dim = 0;
  std::uint64_t gen_seed = 0;
  Vec x0;
  std::optional<Optimum> optimum;
  std::uint64_t data_hash = 0;
};

// -- stochastic generators --------------------------------------------------

struct SumOfQuadraticsParams {
  std::uint64_t n = 100;
  int d = 10;
};
/// f(x) = (1/n) sum_i ||X_i - x||^2 with X ~ N(0, I) rows; estimator
/// f(x,u) = ||X_u - x||^2, g(x,u) = 2 (x - X_u); x0 ~ N(0, 100 I).
ProblemInstance make_sum_of_quadratics(std::uint64_t seed,
                                       SumOfQuadraticsParams p = {});
/// Same objective over explicit data rows; used for small exact fixtures.
ProblemInstance sum_of_quadratics_from_data(std::vector<Vec> rows, Vec x0);

struct MatrixFactorizationParams {
  std::uint64_t n = 1000;
  double kappa = 1e5;  // condition spread of the target matrix rows
};
/// f(W1, W2) = (1/n) sum_i ||W2 W1 x_i - A x_i||^2 with x_i ~ N(0, I_6),
/// A 10x6 with U(0,1) entries and rows scaled 1..kappa. Parameters are W1
/// (k x 6) then W2 (10 x k), both row-major, d = 16k. k must be 1, 4 or 10.
ProblemInstance make_matrix_factorization(int k, std::uint64_t seed,
                                          MatrixFactorizationParams p = {});

struct LeastSquaresParams {
  std::uint64_t n = 1000;
  int d = 10000;
  bool noisy_targets = true;  // b = A x_ref + e with e ~ N(0, I)
};
/// f(x) = 1/2 ||A x - b||^2; estimator f(x,u) = (n/2)(a_u x - b_u)^2,
/// g(x,u) = n a_u (a_u x - b_u). A has N(1,1) entries, columns scaled by
/// independent N(0, 10^2) draws, entries kept with probability 10 log(n)/n.
ProblemInstance make_least_squares(std::uint64_t seed, LeastSquaresParams p = {});

struct LogisticRegressionParams {
  std::uint64_t n = 1000;
  int d = 10000;
  double flip_prob = 0.1;
};
/// f(x) = sum_i log(1 + exp(-b_i x . a_i)) with A as in least squares and
/// labels from a hidden reference parameter, flipped with probability 0.1;
/// estimator scaled by n. Stable softplus/sigmoid forms throughout.
ProblemInstance make_logistic_regression(std::uint64_t seed,
                                         LogisticRegressionParams p = {});

struct MulticlassLogisticParams {
  std::uint64_t n = 1000;
  int features = 1000;
  int classes = 50;
};
/// f(X) = sum_i [ -x_{b_i} . a_i + log sum_c exp(x_c . a_i) ], parameters one
/// block of `features` entries per class (d = features * classes); labels are
/// the argmax of (A Xref + E)_i. Log-sum-exp uses max subtraction.
ProblemInstance make_multiclass_logistic(std::uint64_t seed,
                                         MulticlassLogisticParams p = {});

// -- deterministic 2-D test functions ---------------------------------------

/// beale, matyas, rosenbrock, three_hump_camel, valley; analytic gradients
/// and known optima attached. Wrapped with degenerate noise so stochastic
/// optimizers accept them too.
ProblemInstance make_deterministic_function(const std::string& name);
std::vector<ProblemInstance> deterministic_suite();

// -- registry ----------------------------------------------------------------

/// Names accepted by make_problem / the CLI.
std::vector<std::string> problem_names();

struct ProblemOverrides {
  std::optional<std::uint64_t> n;
  std::optional<int> d;
  std::optional<int> k;  // matrix factorization width, default 10
  std::optional<Vec> x0;
};
ProblemInstance make_problem(const std::string& name, std::uint64_t seed,
                             const ProblemOverrides& overrides = {});

/// FNV-1a over the IEEE bit patterns; order-sensitive.
std::uint64_t hash_doubles(std::uint64_t h, const double* data, std::size_t count);
inline std::uint64_t hash_doubles(const double* data, std::size_t count) {
  return hash_doubles(0xcbf29ce484222325ULL, data, count);
}

/// Hash of an instance's generated data plus its initial point; equal hashes
/// mean bit-identical instances. Used for the manifest and round-trip checks.
std::uint64_t instance_data_hash(const std::string& name,
                                 const StochasticObjective& obj, const Vec& x0);

}  // namespace autosgd
