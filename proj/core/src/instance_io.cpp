#include "autosgd/instance_io.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <vector>

#include "problem_objectives.hpp"

namespace autosgd {

namespace {

constexpr char kMagic[8] = {'O', 'P', 'T', 'B', 'N', 'C', 'H', '1'};

struct Writer {
  std::ofstream out;

  explicit Writer(const std::string& path) : out(path, std::ios::binary) {
    if (!out) throw std::runtime_error("export: cannot open " + path);
  }
  void bytes(const void* p, std::size_t count) {
    out.write(static_cast<const char*>(p), static_cast<std::streamsize>(count));
  }
  void u64(std::uint64_t v) { bytes(&v, sizeof(v)); }
  void f64(double v) { bytes(&v, sizeof(v)); }
  void str(const std::string& s) {
    u64(s.size());
    bytes(s.data(), s.size());
  }
  void matrix(const std::string& name, std::uint64_t rows, std::uint64_t cols,
              const double* data) {
    str(name);
    u64(rows);
    u64(cols);
    bytes(data, sizeof(double) * rows * cols);
  }
};

struct Reader {
  std::ifstream in;

  explicit Reader(const std::string& path) : in(path, std::ios::binary) {
    if (!in) throw std::runtime_error("import: cannot open " + path);
  }
  void bytes(void* p, std::size_t count) {
    in.read(static_cast<char*>(p), static_cast<std::streamsize>(count));
    if (!in) throw std::runtime_error("import: truncated file");
  }
  std::uint64_t u64() {
    std::uint64_t v;
    bytes(&v, sizeof(v));
    return v;
  }
  std::string str() {
    std::string s(u64(), '\0');
    bytes(s.data(), s.size());
    return s;
  }
};

struct NamedMatrix {
  std::string name;
  std::uint64_t rows = 0;
  std::uint64_t cols = 0;
  Vec data;
};

SparseMatrix to_sparse(const NamedMatrix& m) {
  SparseMatrix a;
  a.rows = m.rows;
  a.cols = m.cols;
  a.row_ptr.assign(m.rows + 1, 0);
  for (std::uint64_t i = 0; i < m.rows; ++i) {
    for (std::uint64_t j = 0; j < m.cols; ++j) {
      const double v = m.data[i * m.cols + j];
      if (v == 0.0) continue;
      a.col.push_back(static_cast<std::uint32_t>(j));
      a.val.push_back(v);
    }
    a.row_ptr[i + 1] = a.col.size();
  }
  return a;
}

void write_sparse_dense(Writer& w, const std::string& name, const SparseMatrix& a) {
  w.str(name);
  w.u64(a.rows);
  w.u64(a.cols);
  Vec row(a.cols);
  for (std::uint64_t i = 0; i < a.rows; ++i) {
    std::fill(row.begin(), row.end(), 0.0);
    for (std::uint64_t p = a.row_ptr[i]; p < a.row_ptr[i + 1]; ++p)
      row[a.col[p]] = a.val[p];
    w.bytes(row.data(), sizeof(double) * row.size());
  }
}

}  // namespace

void export_instance(const ProblemInstance& inst, const std::string& path) {
  Writer w(path);
  w.bytes(kMagic, sizeof(kMagic));
  w.str(inst.name);
  w.u64(inst.gen_seed);
  w.u64(inst.n);
  w.u64(static_cast<std::uint64_t>(inst.dim));

  const auto* obj = inst.objective.get();
  std::uint64_t arrays = 1;  // x0 always present
  if (dynamic_cast<const detail::SumOfQuadraticsObjective*>(obj)) arrays += 1;
  else if (dynamic_cast<const detail::MatrixFactorizationObjective*>(obj)) arrays += 2;
  else if (dynamic_cast<const detail::LeastSquaresObjective*>(obj)) arrays += 2;
  else if (dynamic_cast<const detail::LogisticRegressionObjective*>(obj)) arrays += 2;
  else if (dynamic_cast<const detail::MulticlassLogisticObjective*>(obj)) arrays += 2;
  w.u64(arrays);

  w.matrix("x0", 1, inst.x0.size(), inst.x0.data());

  if (auto* p = dynamic_cast<const detail::SumOfQuadraticsObjective*>(obj)) {
    w.str("data");
    w.u64(p->rows().size());
    w.u64(p->rows().front().size());
    for (const Vec& row : p->rows())
      w.bytes(row.data(), sizeof(double) * row.size());
  } else if (auto* p = dynamic_cast<const detail::MatrixFactorizationObjective*>(obj)) {
    w.matrix("target", static_cast<std::uint64_t>(p->out_dim()),
             static_cast<std::uint64_t>(p->in_dim()), p->target_matrix().data());
    w.str("samples");
    w.u64(p->samples().size());
    w.u64(static_cast<std::uint64_t>(p->in_dim()));
    for (const Vec& s : p->samples()) w.bytes(s.data(), sizeof(double) * s.size());
  } else if (auto* p = dynamic_cast<const detail::LeastSquaresObjective*>(obj)) {
    write_sparse_dense(w, "data", p->matrix());
    w.matrix("targets", 1, p->targets().size(), p->targets().data());
  } else if (auto* p = dynamic_cast<const detail::LogisticRegressionObjective*>(obj)) {
    write_sparse_dense(w, "data", p->matrix());
    w.matrix("labels", 1, p->labels().size(), p->labels().data());
  } else if (auto* p = dynamic_cast<const detail::MulticlassLogisticObjective*>(obj)) {
    write_sparse_dense(w, "data", p->matrix());
    Vec labels(p->labels().begin(), p->labels().end());
    w.matrix("labels", 1, labels.size(), labels.data());
  }
  // Deterministic 2-D functions carry no data beyond x0; the name suffices.
}

ProblemInstance import_instance(const std::string& path) {
  Reader r(path);
  char magic[8];
  r.bytes(magic, sizeof(magic));
  if (std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
    throw std::runtime_error("import: not an instance file: " + path);

  const std::string name = r.str();
  const std::uint64_t gen_seed = r.u64();
  const std::uint64_t n = r.u64();
  const std::uint64_t dim = r.u64();
  const std::uint64_t array_count = r.u64();

  std::vector<NamedMatrix> arrays(array_count);
  for (NamedMatrix& m : arrays) {
    m.name = r.str();
    m.rows = r.u64();
    m.cols = r.u64();
    m.data.resize(m.rows * m.cols);
    r.bytes(m.data.data(), sizeof(double) * m.data.size());
  }
  auto find = [&](const std::string& key) -> NamedMatrix& {
    for (NamedMatrix& m : arrays)
      if (m.name == key) return m;
    throw std::runtime_error("import: missing array '" + key + "' in " + path);
  };

  Vec x0 = std::move(find("x0").data);

  ProblemInstance inst;
  if (name == "sum_of_quadratics") {
    const NamedMatrix& data = find("data");
    std::vector<Vec> rows(data.rows);
    for (std::uint64_t i = 0; i < data.rows; ++i)
      rows[i].assign(data.data.begin() + static_cast<std::ptrdiff_t>(i * data.cols),
                     data.data.begin() + static_cast<std::ptrdiff_t>((i + 1) * data.cols));
    inst = sum_of_quadratics_from_data(std::move(rows), std::move(x0));
  } else if (name.rfind("matrix_factorization", 0) == 0) {
    NamedMatrix& target = find("target");
    const NamedMatrix& samples = find("samples");
    const int in_dim = static_cast<int>(target.cols);
    const int out_dim = static_cast<int>(target.rows);
    const int k = static_cast<int>(dim / (in_dim + out_dim));
    std::vector<Vec> xs(samples.rows);
    for (std::uint64_t i = 0; i < samples.rows; ++i)
      xs[i].assign(samples.data.begin() + static_cast<std::ptrdiff_t>(i * samples.cols),
                   samples.data.begin() + static_cast<std::ptrdiff_t>((i + 1) * samples.cols));
    auto obj = std::make_shared<detail::MatrixFactorizationObjective>(
        k, in_dim, out_dim, std::move(target.data), std::move(xs));
    inst.name = name;
    inst.objective = obj;
    inst.x0 = std::move(x0);
  } else if (name == "least_squares") {
    auto obj = std::make_shared<detail::LeastSquaresObjective>(
        to_sparse(find("data")), std::move(find("targets").data));
    inst.name = name;
    inst.objective = obj;
    inst.x0 = std::move(x0);
  } else if (name == "logistic_regression") {
    auto obj = std::make_shared<detail::LogisticRegressionObjective>(
        to_sparse(find("data")), std::move(find("labels").data));
    inst.name = name;
    inst.objective = obj;
    inst.x0 = std::move(x0);
  } else if (name == "multiclass_logistic") {
    const NamedMatrix& labels = find("labels");
    std::vector<std::uint32_t> lab(labels.data.size());
    for (std::size_t i = 0; i < lab.size(); ++i)
      lab[i] = static_cast<std::uint32_t>(labels.data[i]);
    const int classes = static_cast<int>(dim / find("data").cols);
    auto obj = std::make_shared<detail::MulticlassLogisticObjective>(
        to_sparse(find("data")), std::move(lab), classes);
    inst.name = name;
    inst.objective = obj;
    inst.x0 = std::move(x0);
  } else {
    inst = make_deterministic_function(name);
    inst.x0 = std::move(x0);
  }

  inst.gen_seed = gen_seed;
  inst.n = n;
  inst.dim = static_cast<int>(dim);
  if (!inst.exact && inst.objective && inst.objective->has_exact())
    inst.exact = std::make_shared<ExactView>(inst.objective);
  inst.data_hash = instance_data_hash(inst.name, *inst.objective, inst.x0);
  return inst;
}

}  // namespace autosgd
