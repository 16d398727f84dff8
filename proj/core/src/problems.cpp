#include "autosgd/problems.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>

#include "problem_objectives.hpp"

namespace autosgd {

using detail::LeastSquaresObjective;
using detail::LogisticRegressionObjective;
using detail::MatrixFactorizationObjective;
using detail::MulticlassLogisticObjective;
using detail::SumOfQuadraticsObjective;
using detail::TwoDimFunction;

std::uint64_t hash_doubles(std::uint64_t h, const double* data, std::size_t count) {
  for (std::size_t i = 0; i < count; ++i) {
    std::uint64_t bits;
    std::memcpy(&bits, &data[i], sizeof(bits));
    for (int b = 0; b < 8; ++b) {
      h ^= (bits >> (8 * b)) & 0xffu;
      h *= 0x100000001b3ULL;
    }
  }
  return h;
}

namespace {

std::uint64_t hash_vec(std::uint64_t h, const Vec& v) {
  return hash_doubles(h, v.data(), v.size());
}

Vec draw_normals(RngStream& rng, std::size_t count, double scale = 1.0) {
  Vec v(count);
  for (double& x : v) x = scale * rng.next_normal();
  return v;
}

// ~50% zeros, remaining entries standard normal.
Vec draw_half_sparse(RngStream& rng, std::size_t count) {
  Vec v(count, 0.0);
  for (double& x : v)
    if (rng.next_double() >= 0.5) x = rng.next_normal();
  return v;
}

// Data matrix recipe shared by the regression problems: N(1,1) entries,
// columns scaled by independent N(0, 10^2) draws, entries kept with
// probability 10 log(n)/n.
SparseMatrix draw_regression_matrix(RngStream& rng, std::uint64_t n, int d) {
  SparseMatrix a;
  a.rows = n;
  a.cols = static_cast<std::uint64_t>(d);
  a.row_ptr.assign(n + 1, 0);

  Vec col_scale = draw_normals(rng, static_cast<std::size_t>(d), 10.0);
  const double keep_prob =
      std::min(1.0, 10.0 * std::log(static_cast<double>(n)) / static_cast<double>(n));

  for (std::uint64_t i = 0; i < n; ++i) {
    for (int j = 0; j < d; ++j) {
      if (rng.next_double() >= keep_prob) continue;
      a.col.push_back(static_cast<std::uint32_t>(j));
      a.val.push_back((1.0 + rng.next_normal()) * col_scale[j]);
    }
    a.row_ptr[i + 1] = a.col.size();
  }
  return a;
}

std::uint64_t hash_sparse(std::uint64_t h, const SparseMatrix& a) {
  h = hash_doubles(h, a.val.data(), a.val.size());
  Vec cols(a.col.begin(), a.col.end());
  return hash_vec(h, cols);
}

}  // namespace

std::uint64_t instance_data_hash(const std::string& name,
                                 const StochasticObjective& obj, const Vec& x0) {
  std::uint64_t h = RngStream::hash_label(name);
  if (auto* p = dynamic_cast<const SumOfQuadraticsObjective*>(&obj)) {
    for (const Vec& row : p->rows()) h = hash_vec(h, row);
  } else if (auto* p = dynamic_cast<const MatrixFactorizationObjective*>(&obj)) {
    h = hash_vec(h, p->target_matrix());
    for (const Vec& s : p->samples()) h = hash_vec(h, s);
  } else if (auto* p = dynamic_cast<const LeastSquaresObjective*>(&obj)) {
    h = hash_sparse(h, p->matrix());
    h = hash_vec(h, p->targets());
  } else if (auto* p = dynamic_cast<const LogisticRegressionObjective*>(&obj)) {
    h = hash_sparse(h, p->matrix());
    h = hash_doubles(h, p->labels().data(), p->labels().size());
  } else if (auto* p = dynamic_cast<const MulticlassLogisticObjective*>(&obj)) {
    h = hash_sparse(h, p->matrix());
    const Vec lab(p->labels().begin(), p->labels().end());
    h = hash_vec(h, lab);
  }
  return hash_vec(h, x0);
}

// -- sum of quadratics -------------------------------------------------------

ProblemInstance make_sum_of_quadratics(std::uint64_t seed, SumOfQuadraticsParams p) {
  if (p.n == 0 || p.d <= 0)
    throw std::invalid_argument("sum_of_quadratics: n and d must be positive");
  RngStream root(seed, RngStream::hash_label("sum_of_quadratics"));
  RngStream data_rng = root.child("data");
  RngStream init_rng = root.child("init");

  std::vector<Vec> rows(p.n);
  for (Vec& row : rows) row = draw_normals(data_rng, static_cast<std::size_t>(p.d));
  Vec x0 = draw_normals(init_rng, static_cast<std::size_t>(p.d), 10.0);

  ProblemInstance inst = sum_of_quadratics_from_data(std::move(rows), std::move(x0));
  inst.gen_seed = seed;
  return inst;
}

ProblemInstance sum_of_quadratics_from_data(std::vector<Vec> rows, Vec x0) {
  if (rows.empty()) throw std::invalid_argument("sum_of_quadratics: no data rows");
  auto obj = std::make_shared<SumOfQuadraticsObjective>(std::move(rows));
  check_dim(x0, static_cast<std::size_t>(obj->dim()), "sum_of_quadratics x0");

  ProblemInstance inst;
  inst.name = "sum_of_quadratics";
  inst.n = obj->noise_support();
  inst.dim = obj->dim();
  inst.x0 = std::move(x0);
  inst.optimum = Optimum{obj->row_mean(), obj->spread()};

  inst.objective = obj;
  inst.data_hash = instance_data_hash(inst.name, *obj, inst.x0);
  inst.exact = std::make_shared<ExactView>(inst.objective);
  return inst;
}

// -- matrix factorization ----------------------------------------------------

ProblemInstance make_matrix_factorization(int k, std::uint64_t seed,
                                          MatrixFactorizationParams p) {
  if (k != 1 && k != 4 && k != 10)
    throw std::invalid_argument("matrix_factorization: k must be 1, 4 or 10");
  if (p.n == 0) throw std::invalid_argument("matrix_factorization: n must be positive");
  constexpr int in_dim = 6;
  constexpr int out_dim = 10;

  RngStream root(seed, RngStream::hash_label("matrix_factorization"));
  RngStream data_rng = root.child("data");
  RngStream init_rng = root.child("init");

  // Target: U(0,1) entries, rows scaled by a linear 1..kappa ramp.
  Vec a(static_cast<std::size_t>(out_dim * in_dim));
  for (int i = 0; i < out_dim; ++i) {
    const double row_scale =
        1.0 + (p.kappa - 1.0) * static_cast<double>(i) / (out_dim - 1);
    for (int j = 0; j < in_dim; ++j)
      a[static_cast<std::size_t>(i * in_dim + j)] = row_scale * data_rng.next_double();
  }
  std::vector<Vec> samples(p.n);
  for (Vec& s : samples) s = draw_normals(data_rng, in_dim);

  Vec x0 = draw_normals(init_rng, static_cast<std::size_t>(k * (in_dim + out_dim)));

  auto obj = std::make_shared<MatrixFactorizationObjective>(k, in_dim, out_dim,
                                                            std::move(a),
                                                            std::move(samples));
  ProblemInstance inst;
  inst.name = "matrix_factorization_k" + std::to_string(k);
  inst.n = p.n;
  inst.dim = obj->dim();
  inst.gen_seed = seed;
  inst.x0 = std::move(x0);

  inst.objective = obj;
  inst.data_hash = instance_data_hash(inst.name, *obj, inst.x0);
  inst.exact = std::make_shared<ExactView>(inst.objective);
  return inst;
}

// -- least squares -----------------------------------------------------------

ProblemInstance make_least_squares(std::uint64_t seed, LeastSquaresParams p) {
  if (p.n == 0 || p.d <= 0)
    throw std::invalid_argument("least_squares: n and d must be positive");
  RngStream root(seed, RngStream::hash_label("least_squares"));
  RngStream data_rng = root.child("data");
  RngStream xref_rng = root.child("xref");
  RngStream target_rng = root.child("targets");
  RngStream init_rng = root.child("init");

  SparseMatrix a = draw_regression_matrix(data_rng, p.n, p.d);
  const Vec xref = draw_half_sparse(xref_rng, static_cast<std::size_t>(p.d));
  Vec b(p.n);
  for (std::uint64_t i = 0; i < p.n; ++i) {
    b[i] = a.row_dot(i, xref);
    if (p.noisy_targets) b[i] += target_rng.next_normal();
  }
  Vec x0 = draw_half_sparse(init_rng, static_cast<std::size_t>(p.d));

  auto obj = std::make_shared<LeastSquaresObjective>(std::move(a), std::move(b));
  ProblemInstance inst;
  inst.name = "least_squares";
  inst.n = p.n;
  inst.dim = p.d;
  inst.gen_seed = seed;
  inst.x0 = std::move(x0);

  inst.objective = obj;
  inst.data_hash = instance_data_hash(inst.name, *obj, inst.x0);
  inst.exact = std::make_shared<ExactView>(inst.objective);
  return inst;
}

// -- logistic regression -----------------------------------------------------

ProblemInstance make_logistic_regression(std::uint64_t seed,
                                         LogisticRegressionParams p) {
  if (p.n == 0 || p.d <= 0)
    throw std::invalid_argument("logistic_regression: n and d must be positive");
  RngStream root(seed, RngStream::hash_label("logistic_regression"));
  RngStream data_rng = root.child("data");
  RngStream xref_rng = root.child("xref");
  RngStream label_rng = root.child("labels");
  RngStream init_rng = root.child("init");

  SparseMatrix a = draw_regression_matrix(data_rng, p.n, p.d);
  const Vec xref = draw_half_sparse(xref_rng, static_cast<std::size_t>(p.d));
  std::vector<double> labels(p.n);
  for (std::uint64_t i = 0; i < p.n; ++i) {
    double b = a.row_dot(i, xref) >= 0.0 ? 1.0 : -1.0;
    if (label_rng.next_double() < p.flip_prob) b = -b;
    labels[i] = b;
  }
  Vec x0 = draw_half_sparse(init_rng, static_cast<std::size_t>(p.d));

  auto obj = std::make_shared<LogisticRegressionObjective>(std::move(a),
                                                           std::move(labels));
  ProblemInstance inst;
  inst.name = "logistic_regression";
  inst.n = p.n;
  inst.dim = p.d;
  inst.gen_seed = seed;
  inst.x0 = std::move(x0);

  inst.objective = obj;
  inst.data_hash = instance_data_hash(inst.name, *obj, inst.x0);
  inst.exact = std::make_shared<ExactView>(inst.objective);
  return inst;
}

// -- multiclass logistic regression -------------------------------------------

ProblemInstance make_multiclass_logistic(std::uint64_t seed,
                                         MulticlassLogisticParams p) {
  if (p.n == 0 || p.features <= 0 || p.classes <= 1)
    throw std::invalid_argument("multiclass_logistic: bad dimensions");
  RngStream root(seed, RngStream::hash_label("multiclass_logistic"));
  RngStream data_rng = root.child("data");
  RngStream xref_rng = root.child("xref");
  RngStream label_rng = root.child("labels");
  RngStream init_rng = root.child("init");

  SparseMatrix a = draw_regression_matrix(data_rng, p.n, p.features);

  // Labels: argmax over classes of Xref^T a_i + E_i, ties to the lowest index.
  const std::size_t fc = static_cast<std::size_t>(p.features) * p.classes;
  const Vec xref = draw_normals(xref_rng, fc);  // class-major blocks
  std::vector<std::uint32_t> labels(p.n);
  Vec scores(static_cast<std::size_t>(p.classes));
  for (std::uint64_t i = 0; i < p.n; ++i) {
    for (int c = 0; c < p.classes; ++c) {
      double s = 0.0;
      const std::size_t off = static_cast<std::size_t>(c) * p.features;
      for (std::uint64_t q = a.row_ptr[i]; q < a.row_ptr[i + 1]; ++q)
        s += a.val[q] * xref[off + a.col[q]];
      scores[static_cast<std::size_t>(c)] = s + label_rng.next_normal();
    }
    std::uint32_t best = 0;
    for (int c = 1; c < p.classes; ++c)
      if (scores[static_cast<std::size_t>(c)] > scores[best]) best = static_cast<std::uint32_t>(c);
    labels[i] = best;
  }

  Vec x0 = draw_normals(init_rng, fc);

  auto obj = std::make_shared<MulticlassLogisticObjective>(std::move(a),
                                                           std::move(labels),
                                                           p.classes);
  ProblemInstance inst;
  inst.name = "multiclass_logistic";
  inst.n = p.n;
  inst.dim = obj->dim();
  inst.gen_seed = seed;
  inst.x0 = std::move(x0);

  inst.objective = obj;
  inst.data_hash = instance_data_hash(inst.name, *obj, inst.x0);
  inst.exact = std::make_shared<ExactView>(inst.objective);
  return inst;
}

// -- deterministic test functions ---------------------------------------------

ProblemInstance make_deterministic_function(const std::string& name) {
  TwoDimFunction::Kind kind;
  Vec x0;
  Optimum opt;
  if (name == "beale") {
    kind = TwoDimFunction::Beale;
    x0 = {1.0, 1.0};
    opt = {{3.0, 0.5}, 0.0};
  } else if (name == "matyas") {
    kind = TwoDimFunction::Matyas;
    x0 = {1.0, 1.0};
    opt = {{0.0, 0.0}, 0.0};
  } else if (name == "rosenbrock") {
    kind = TwoDimFunction::Rosenbrock;
    x0 = {-1.2, 1.0};
    opt = {{1.0, 1.0}, 0.0};
  } else if (name == "three_hump_camel") {
    kind = TwoDimFunction::ThreeHumpCamel;
    x0 = {2.0, 2.0};
    opt = {{0.0, 0.0}, 0.0};
  } else if (name == "valley") {
    kind = TwoDimFunction::Valley;
    x0 = {2.0, 1.0};
    opt = {{0.0, 0.0}, 0.0};
  } else {
    throw std::invalid_argument("unknown deterministic function: " + name);
  }

  auto fn = std::make_shared<TwoDimFunction>(kind);
  ProblemInstance inst;
  inst.name = name;
  inst.dim = 2;
  inst.x0 = std::move(x0);
  inst.optimum = std::move(opt);
  inst.exact = fn;
  inst.objective = std::make_shared<DegenerateNoise>(fn);
  inst.data_hash = hash_vec(RngStream::hash_label(name), inst.x0);
  return inst;
}

std::vector<ProblemInstance> deterministic_suite() {
  std::vector<ProblemInstance> suite;
  for (const char* name :
       {"beale", "matyas", "rosenbrock", "three_hump_camel", "valley"})
    suite.push_back(make_deterministic_function(name));
  return suite;
}

// -- registry ------------------------------------------------------------------

std::vector<std::string> problem_names() {
  return {"sum_of_quadratics", "matrix_factorization", "least_squares",
          "logistic_regression", "multiclass_logistic", "beale", "matyas",
          "rosenbrock", "three_hump_camel", "valley"};
}

ProblemInstance make_problem(const std::string& name, std::uint64_t seed,
                             const ProblemOverrides& o) {
  ProblemInstance inst;
  if (name == "sum_of_quadratics") {
    SumOfQuadraticsParams p;
    if (o.n) p.n = *o.n;
    if (o.d) p.d = *o.d;
    inst = make_sum_of_quadratics(seed, p);
  } else if (name == "matrix_factorization") {
    inst = make_matrix_factorization(o.k.value_or(10), seed);
  } else if (name == "least_squares") {
    LeastSquaresParams p;
    if (o.n) p.n = *o.n;
    if (o.d) p.d = *o.d;
    inst = make_least_squares(seed, p);
  } else if (name == "logistic_regression") {
    LogisticRegressionParams p;
    if (o.n) p.n = *o.n;
    if (o.d) p.d = *o.d;
    inst = make_logistic_regression(seed, p);
  } else if (name == "multiclass_logistic") {
    MulticlassLogisticParams p;
    if (o.n) p.n = *o.n;
    if (o.d) p.features = *o.d;  // feature count per class
    inst = make_multiclass_logistic(seed, p);
  } else {
    inst = make_deterministic_function(name);
    inst.gen_seed = seed;
  }
  if (o.x0) {
    check_dim(*o.x0, static_cast<std::size_t>(inst.dim), "problem x0 override");
    inst.x0 = *o.x0;
  }
  return inst;
}

}  // namespace autosgd

// -- objective implementations ---------------------------------------------

namespace autosgd::detail {

SumOfQuadraticsObjective::SumOfQuadraticsObjective(std::vector<Vec> rows)
    : rows_(std::move(rows)) {
  const std::size_t d = rows_.front().size();
  for (const Vec& row : rows_)
    if (row.size() != d)
      throw std::invalid_argument("sum_of_quadratics: ragged data rows");
  mean_.assign(d, 0.0);
  for (const Vec& row : rows_) axpy(1.0, row, mean_);
  for (double& m : mean_) m /= static_cast<double>(rows_.size());
  for (const Vec& row : rows_) {
    double s = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      const double r = row[i] - mean_[i];
      s += r * r;
    }
    spread_ += s;
  }
  spread_ /= static_cast<double>(rows_.size());
}

MatrixFactorizationObjective::MatrixFactorizationObjective(int k, int in_dim,
                                                           int out_dim, Vec a,
                                                           std::vector<Vec> samples)
    : k_(k), in_dim_(in_dim), out_dim_(out_dim), a_(std::move(a)),
      samples_(std::move(samples)) {
  targets_.reserve(samples_.size());
  for (const Vec& x : samples_) {
    Vec t(static_cast<std::size_t>(out_dim_));
    for (int i = 0; i < out_dim_; ++i) {
      double s = 0.0;
      for (int j = 0; j < in_dim_; ++j)
        s += a_[static_cast<std::size_t>(i * in_dim_ + j)] * x[static_cast<std::size_t>(j)];
      t[static_cast<std::size_t>(i)] = s;
    }
    targets_.push_back(std::move(t));
  }
}

void MatrixFactorizationObjective::residual(const Vec& w, std::uint64_t u, Vec& h,
                                            Vec& r) const {
  const Vec& x = samples_[u];
  const Vec& target = targets_[u];
  const double* w1 = w.data();
  const double* w2 = w.data() + static_cast<std::size_t>(k_) * in_dim_;
  h.assign(static_cast<std::size_t>(k_), 0.0);
  for (int a = 0; a < k_; ++a) {
    double s = 0.0;
    for (int b = 0; b < in_dim_; ++b) s += w1[a * in_dim_ + b] * x[static_cast<std::size_t>(b)];
    h[static_cast<std::size_t>(a)] = s;
  }
  r.assign(static_cast<std::size_t>(out_dim_), 0.0);
  for (int i = 0; i < out_dim_; ++i) {
    double s = 0.0;
    for (int a = 0; a < k_; ++a) s += w2[i * k_ + a] * h[static_cast<std::size_t>(a)];
    r[static_cast<std::size_t>(i)] = s - target[static_cast<std::size_t>(i)];
  }
}

double MatrixFactorizationObjective::value(const Vec& w, NoiseToken u) const {
  Vec h, r;
  residual(w, u.payload, h, r);
  return sqnorm(r);
}

void MatrixFactorizationObjective::gradient(const Vec& w, NoiseToken u,
                                            Vec& out) const {
  Vec h, r;
  residual(w, u.payload, h, r);
  const Vec& x = samples_[u.payload];
  const double* w2 = w.data() + static_cast<std::size_t>(k_) * in_dim_;
  double* g1 = out.data();
  double* g2 = out.data() + static_cast<std::size_t>(k_) * in_dim_;

  // dW2 = 2 r h^T
  for (int i = 0; i < out_dim_; ++i)
    for (int a = 0; a < k_; ++a)
      g2[i * k_ + a] = 2.0 * r[static_cast<std::size_t>(i)] * h[static_cast<std::size_t>(a)];
  // dW1 = 2 (W2^T r) x^T
  for (int a = 0; a < k_; ++a) {
    double t = 0.0;
    for (int i = 0; i < out_dim_; ++i) t += w2[i * k_ + a] * r[static_cast<std::size_t>(i)];
    for (int b = 0; b < in_dim_; ++b)
      g1[a * in_dim_ + b] = 2.0 * t * x[static_cast<std::size_t>(b)];
  }
}

double MatrixFactorizationObjective::exact_value(const Vec& w) const {
  Vec h, r;
  double s = 0.0;
  for (std::uint64_t u = 0; u < samples_.size(); ++u) {
    residual(w, u, h, r);
    s += sqnorm(r);
  }
  return s / static_cast<double>(samples_.size());
}

void MatrixFactorizationObjective::exact_gradient(const Vec& w, Vec& out) const {
  Vec g(w.size());
  std::fill(out.begin(), out.end(), 0.0);
  for (std::uint64_t u = 0; u < samples_.size(); ++u) {
    gradient(w, NoiseToken{u}, g);
    axpy(1.0, g, out);
  }
  const double inv_n = 1.0 / static_cast<double>(samples_.size());
  for (double& v : out) v *= inv_n;
}

MulticlassLogisticObjective::MulticlassLogisticObjective(
    SparseMatrix a, std::vector<std::uint32_t> labels, int classes)
    : a_(std::move(a)), labels_(std::move(labels)), classes_(classes) {}

void MulticlassLogisticObjective::scores(const Vec& x, std::uint64_t i, Vec& s) const {
  s.assign(static_cast<std::size_t>(classes_), 0.0);
  const std::size_t features = a_.cols;
  for (std::uint64_t q = a_.row_ptr[i]; q < a_.row_ptr[i + 1]; ++q) {
    const double v = a_.val[q];
    const std::size_t j = a_.col[q];
    for (int c = 0; c < classes_; ++c)
      s[static_cast<std::size_t>(c)] += v * x[static_cast<std::size_t>(c) * features + j];
  }
}

double MulticlassLogisticObjective::log_sum_exp(const Vec& s) {
  const double m = *std::max_element(s.begin(), s.end());
  double acc = 0.0;
  for (double v : s) acc += std::exp(v - m);
  return m + std::log(acc);
}

double MulticlassLogisticObjective::value(const Vec& x, NoiseToken u) const {
  Vec s;
  scores(x, u.payload, s);
  return static_cast<double>(a_.rows) *
         (-s[labels_[u.payload]] + log_sum_exp(s));
}

void MulticlassLogisticObjective::gradient(const Vec& x, NoiseToken u,
                                           Vec& out) const {
  Vec s;
  scores(x, u.payload, s);
  const double lse = log_sum_exp(s);
  std::fill(out.begin(), out.end(), 0.0);
  const std::size_t features = a_.cols;
  const double n = static_cast<double>(a_.rows);
  for (int c = 0; c < classes_; ++c) {
    const double p = std::exp(s[static_cast<std::size_t>(c)] - lse);
    const double coef = n * (p - (static_cast<std::uint32_t>(c) == labels_[u.payload] ? 1.0 : 0.0));
    for (std::uint64_t q = a_.row_ptr[u.payload]; q < a_.row_ptr[u.payload + 1]; ++q)
      out[static_cast<std::size_t>(c) * features + a_.col[q]] += coef * a_.val[q];
  }
}

double MulticlassLogisticObjective::exact_value(const Vec& x) const {
  Vec s;
  double acc = 0.0;
  for (std::uint64_t i = 0; i < a_.rows; ++i) {
    scores(x, i, s);
    acc += -s[labels_[i]] + log_sum_exp(s);
  }
  return acc;
}

void MulticlassLogisticObjective::exact_gradient(const Vec& x, Vec& out) const {
  Vec s;
  std::fill(out.begin(), out.end(), 0.0);
  const std::size_t features = a_.cols;
  for (std::uint64_t i = 0; i < a_.rows; ++i) {
    scores(x, i, s);
    const double lse = log_sum_exp(s);
    for (int c = 0; c < classes_; ++c) {
      const double p = std::exp(s[static_cast<std::size_t>(c)] - lse);
      const double coef = p - (static_cast<std::uint32_t>(c) == labels_[i] ? 1.0 : 0.0);
      for (std::uint64_t q = a_.row_ptr[i]; q < a_.row_ptr[i + 1]; ++q)
        out[static_cast<std::size_t>(c) * features + a_.col[q]] += coef * a_.val[q];
    }
  }
}

LeastSquaresObjective::LeastSquaresObjective(SparseMatrix a, Vec b)
    : a_(std::move(a)), b_(std::move(b)) {
  if (b_.size() != a_.rows)
    throw std::invalid_argument("least_squares: target size mismatch");
}

LogisticRegressionObjective::LogisticRegressionObjective(SparseMatrix a,
                                                         std::vector<double> labels)
    : a_(std::move(a)), labels_(std::move(labels)) {
  if (labels_.size() != a_.rows)
    throw std::invalid_argument("logistic_regression: label size mismatch");
}

double TwoDimFunction::value(const Vec& p) const {
  const double x = p[0], y = p[1];
  switch (kind_) {
    case Beale: {
      const double t1 = 1.5 - x + x * y;
      const double t2 = 2.25 - x + x * y * y;
      const double t3 = 2.625 - x + x * y * y * y;
      return t1 * t1 + t2 * t2 + t3 * t3;
    }
    case Matyas:
      return 0.26 * (x * x + y * y) - 0.48 * x * y;
    case Rosenbrock: {
      const double a = 1.0 - x;
      const double b = y - x * x;
      return a * a + 100.0 * b * b;
    }
    case ThreeHumpCamel: {
      const double x2 = x * x;
      return 2.0 * x2 - 1.05 * x2 * x2 + x2 * x2 * x2 / 6.0 + x * y + y * y;
    }
    case Valley:
      return 1.0 - 1.0 / (1.0 + x * x + 4.0 * y * y);
  }
  return 0.0;
}

void TwoDimFunction::gradient(const Vec& p, Vec& out) const {
  const double x = p[0], y = p[1];
  switch (kind_) {
    case Beale: {
      const double t1 = 1.5 - x + x * y;
      const double t2 = 2.25 - x + x * y * y;
      const double t3 = 2.625 - x + x * y * y * y;
      out[0] = 2.0 * (t1 * (y - 1.0) + t2 * (y * y - 1.0) + t3 * (y * y * y - 1.0));
      out[1] = 2.0 * (t1 * x + t2 * 2.0 * x * y + t3 * 3.0 * x * y * y);
      return;
    }
    case Matyas:
      out[0] = 0.52 * x - 0.48 * y;
      out[1] = 0.52 * y - 0.48 * x;
      return;
    case Rosenbrock: {
      const double b = y - x * x;
      out[0] = -2.0 * (1.0 - x) - 400.0 * x * b;
      out[1] = 200.0 * b;
      return;
    }
    case ThreeHumpCamel:
      out[0] = 4.0 * x - 4.2 * x * x * x + x * x * x * x * x + y;
      out[1] = x + 2.0 * y;
      return;
    case Valley: {
      const double s = 1.0 + x * x + 4.0 * y * y;
      out[0] = 2.0 * x / (s * s);
      out[1] = 8.0 * y / (s * s);
      return;
    }
  }
}

}  // namespace autosgd::detail
