// Command-line experiment runner: executes optimizer sweeps from a JSON
// config, aggregates trace directories, checks problem gradients, and
// exports generated instances for cross-implementation comparisons.
//
// Exit codes: 0 success, 1 run/check failure, 2 configuration error.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "autosgd/gradcheck.hpp"
#include "autosgd/harness.hpp"
#include "autosgd/instance_io.hpp"
#include "autosgd/problems.hpp"

namespace {

using namespace autosgd;

int cmd_run(const std::string& config_path, const std::string& out_override) {
  RunConfig cfg;
  try {
    cfg = load_run_config(config_path);
    if (!out_override.empty()) cfg.output_dir = out_override;
    if (cfg.output_dir.empty())
      throw ConfigError("config: output_dir is required (or pass --out)");
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 2;
  }

  try {
    ExperimentResult res = run_experiment(cfg);
    int failures = 0;
    for (const RunOutcome& r : res.runs) {
      if (r.ok) {
        std::printf("ok      %s (%.0f ms)\n", r.run_id.c_str(), r.wall_ms);
      } else {
        std::printf("FAILED  %s: %s\n", r.run_id.c_str(), r.error.c_str());
        ++failures;
      }
    }
    std::printf("manifest: %s\n", res.manifest_path.c_str());
    return failures == 0 ? 0 : 1;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "run failed: %s\n", e.what());
    return 1;
  }
}

int cmd_summarize(const std::string& dir, std::optional<double> threshold,
                  std::string out_file) {
  try {
    auto rows = summarize_directory(dir, threshold);
    const std::string csv = summary_to_csv(rows);
    if (out_file.empty())
      out_file = (std::filesystem::path(dir) / "summary.csv").string();
    std::ofstream f(out_file, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + out_file);
    f << csv;
    std::printf("%s", csv.c_str());
    std::printf("summary: %s\n", out_file.c_str());
    return 0;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "summarize failed: %s\n", e.what());
    return 1;
  }
}

ProblemOverrides overrides_from(std::optional<std::uint64_t> n,
                                std::optional<int> d, std::optional<int> k) {
  ProblemOverrides o;
  o.n = n;
  o.d = d;
  o.k = k;
  return o;
}

int cmd_gradcheck(const std::string& problem, std::uint64_t seed, int points,
                  std::optional<std::uint64_t> n, std::optional<int> d,
                  std::optional<int> k) {
  try {
    ProblemInstance inst = make_problem(problem, seed, overrides_from(n, d, k));
    const StochasticObjective& obj = *inst.objective;
    RngStream rng(seed, RngStream::hash_label("gradcheck"));

    // Directional probes are cheap at any dimension; full central differences
    // only when the dimension is small enough for 2d evaluations per point.
    const bool full_fd = inst.dim <= 512;
    double worst = 0.0;
    Vec x = inst.x0;
    Vec g(x.size()), dir(x.size());
    for (int p = 0; p < points; ++p) {
      for (auto& v : x) v = rng.next_normal();
      const NoiseToken u = obj.sample_noise(rng);
      obj.gradient(x, u, g);

      double err = 0.0;
      if (full_fd) {
        const Vec fd = finite_difference_gradient(
            [&](const Vec& q) { return obj.value(q, u); }, x);
        double diff = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i) {
          const double e = fd[i] - g[i];
          diff += e * e;
        }
        err = std::sqrt(diff) / std::max(1.0, norm(g));
      } else {
        for (auto& v : dir) v = rng.next_normal();
        const double scale = 1.0 / norm(dir);
        for (auto& v : dir) v *= scale;
        const double h = 1e-6;
        Vec xp = x, xm = x;
        axpy(h, dir, xp);
        axpy(-h, dir, xm);
        const double fd = (obj.value(xp, u) - obj.value(xm, u)) / (2.0 * h);
        const double an = dot(g, dir);
        err = std::fabs(fd - an) / std::max(1.0, std::fabs(an));
      }
      worst = std::max(worst, err);
    }
    std::printf("%s: %d %s checks, max relative error %.3e\n", inst.name.c_str(),
                points, full_fd ? "central-difference" : "directional", worst);
    return worst <= 1e-5 ? 0 : 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "gradcheck failed: %s\n", e.what());
    return 1;
  }
}

int cmd_export(const std::string& problem, std::uint64_t seed,
               const std::string& path, std::optional<std::uint64_t> n,
               std::optional<int> d, std::optional<int> k) {
  try {
    ProblemInstance inst = make_problem(problem, seed, overrides_from(n, d, k));
    export_instance(inst, path);
    std::printf("wrote %s (n=%llu d=%d hash=%016llx)\n", path.c_str(),
                static_cast<unsigned long long>(inst.n), inst.dim,
                static_cast<unsigned long long>(inst.data_hash));
    return 0;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "export failed: %s\n", e.what());
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gradient-descent benchmark runner with automatic learning-rate selection"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  auto* run = app.add_subcommand("run", "Execute a run matrix from a JSON config");
  run->add_option("config", config_path, "Path to the run config")->required();
  run->add_option("--out", out_dir, "Override the config's output_dir");

  std::string trace_dir, summary_file;
  double threshold_val = 0.0;
  auto* sum = app.add_subcommand("summarize", "Aggregate a trace directory");
  sum->add_option("dir", trace_dir, "Directory with manifest.json and traces")->required();
  auto* thr = sum->add_option("--threshold", threshold_val,
                              "Report iterations until loss <= threshold");
  sum->add_option("--out", summary_file, "Summary CSV path (default <dir>/summary.csv)");

  std::string problem, export_path;
  std::uint64_t seed = 1;
  int points = 30;
  std::uint64_t n_opt = 0;
  int d_opt = 0, k_opt = 0;
  auto add_problem_opts = [&](CLI::App* cmd) {
    cmd->add_option("--seed", seed, "Generator seed");
    cmd->add_option("--n", n_opt, "Sample-count override");
    cmd->add_option("--d", d_opt, "Dimension override");
    cmd->add_option("--k", k_opt, "Matrix-factorization width");
  };

  auto* gc = app.add_subcommand("gradcheck", "Finite-difference gradient check");
  gc->add_option("problem", problem, "Problem name")->required();
  gc->add_option("--points", points, "Number of random probe points");
  add_problem_opts(gc);

  auto* ex = app.add_subcommand("export-instance", "Export a generated instance");
  ex->add_option("problem", problem, "Problem name")->required();
  ex->add_option("seed", seed, "Generator seed")->required();
  ex->add_option("path", export_path, "Output file")->required();
  ex->add_option("--n", n_opt, "Sample-count override");
  ex->add_option("--d", d_opt, "Dimension override");
  ex->add_option("--k", k_opt, "Matrix-factorization width");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  auto opt_n = [&]() { return n_opt ? std::optional<std::uint64_t>(n_opt) : std::nullopt; };
  auto opt_d = [&]() { return d_opt ? std::optional<int>(d_opt) : std::nullopt; };
  auto opt_k = [&]() { return k_opt ? std::optional<int>(k_opt) : std::nullopt; };

  if (run->parsed()) return cmd_run(config_path, out_dir);
  if (sum->parsed())
    return cmd_summarize(trace_dir,
                         thr->count() ? std::optional<double>(threshold_val)
                                      : std::nullopt,
                         summary_file);
  if (gc->parsed())
    return cmd_gradcheck(problem, seed, points, opt_n(), opt_d(), opt_k());
  if (ex->parsed())
    return cmd_export(problem, seed, export_path, opt_n(), opt_d(), opt_k());
  return 2;
}
