#include "autosgd/harness.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "autosgd/autogd.hpp"
#include "autosgd/autosgd.hpp"
#include "autosgd/averaging.hpp"
#include "autosgd/baselines.hpp"

namespace autosgd {

using nlohmann::json;

namespace fs = std::filesystem;

// -- config -------------------------------------------------------------------

std::string OptimizerSpec::label(std::size_t index) const {
  return "o" + std::to_string(index) + "_" + kind;
}

void RunConfig::validate() const {
  static const char* kinds[] = {"autosgd", "autogd",  "sgd_constant", "sgd_invsqrt",
                                "dog",     "sfsgd",   "nmls",         "armijo_gd"};
  if (problem.empty()) throw ConfigError("config: problem.name is required");
  const auto names = problem_names();
  if (std::find(names.begin(), names.end(), problem) == names.end())
    throw ConfigError("config: unknown problem '" + problem + "'");
  if (optimizers.empty()) throw ConfigError("config: optimizers list is empty");
  for (const auto& o : optimizers) {
    if (std::find(std::begin(kinds), std::end(kinds), o.kind) == std::end(kinds))
      throw ConfigError("config: unknown optimizer kind '" + o.kind + "'");
    if (!(o.c > 0.0 && o.c < 1.0 && o.C > 1.0))
      throw ConfigError("config: optimizer '" + o.kind + "' needs 0 < c < 1 < C");
  }
  if (init_rates.empty()) throw ConfigError("config: init_rates is empty");
  for (double r : init_rates)
    if (!(r > 0.0)) throw ConfigError("config: init_rates must be positive");
  if (run_seeds.empty()) throw ConfigError("config: run_seeds is empty");
  if (budget < 1) throw ConfigError("config: budget must be >= 1");
}

namespace {

template <typename T>
void read_field(const json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: bad value for '") + key + "': " + e.what());
  }
}

OptimizerSpec parse_optimizer(const json& j) {
  OptimizerSpec o;
  if (!j.contains("kind")) throw ConfigError("config: optimizer entry missing 'kind'");
  o.kind = j.at("kind").get<std::string>();
  read_field(j, "c", o.c);
  read_field(j, "C", o.C);
  if (j.contains("restart_shrink")) o.restart_shrink = j.at("restart_shrink").get<double>();
  read_field(j, "z_star", o.z_star);
  read_field(j, "min_samples", o.min_samples);
  read_field(j, "r_eps", o.r_eps);
  read_field(j, "eps", o.eps);
  read_field(j, "beta", o.beta);
  read_field(j, "c_armijo", o.c_armijo);
  read_field(j, "backtrack", o.backtrack);
  read_field(j, "memory", o.memory);
  read_field(j, "max_backtracks", o.max_backtracks);
  read_field(j, "gamma_max_factor", o.nmls_rate_factor);
  return o;
}

}  // namespace

RunConfig parse_run_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: JSON parse error: ") + e.what());
  }

  RunConfig cfg;
  if (!j.contains("problem") || !j.at("problem").is_object())
    throw ConfigError("config: 'problem' section is required");
  const json& p = j.at("problem");
  read_field(p, "name", cfg.problem);
  read_field(p, "gen_seed", cfg.gen_seed);
  if (p.contains("n")) cfg.overrides.n = p.at("n").get<std::uint64_t>();
  if (p.contains("d")) cfg.overrides.d = p.at("d").get<int>();
  if (p.contains("k")) cfg.overrides.k = p.at("k").get<int>();
  if (p.contains("x0")) cfg.overrides.x0 = p.at("x0").get<Vec>();

  if (!j.contains("optimizers") || !j.at("optimizers").is_array())
    throw ConfigError("config: 'optimizers' array is required");
  for (const json& o : j.at("optimizers")) cfg.optimizers.push_back(parse_optimizer(o));

  read_field(j, "init_rates", cfg.init_rates);
  read_field(j, "run_seeds", cfg.run_seeds);
  read_field(j, "budget", cfg.budget);
  read_field(j, "averaging", cfg.averaging);
  read_field(j, "log_exact", cfg.log_exact);
  read_field(j, "output_dir", cfg.output_dir);

  cfg.validate();
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_run_config(ss.str());
}

// -- CSV ------------------------------------------------------------------------

const char* const kTraceCsvHeader =
    "run_id,problem,optimizer,seed,iteration,episode,gamma,loss_est,loss_exact,"
    "loss_avg,decision,extra_cost";

namespace {

void append_double(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out += buf;
}

void append_record(std::string& out, const TraceRecord& r) {
  out += r.run_id;
  out += ',';
  out += r.problem;
  out += ',';
  out += r.optimizer;
  out += ',';
  out += std::to_string(r.seed);
  out += ',';
  out += std::to_string(r.iteration);
  out += ',';
  out += std::to_string(r.episode);
  out += ',';
  append_double(out, r.gamma);
  out += ',';
  append_double(out, r.loss_est);
  out += ',';
  if (r.loss_exact) append_double(out, *r.loss_exact);
  out += ',';
  if (r.loss_avg) append_double(out, *r.loss_avg);
  out += ',';
  out += r.decision;
  out += ',';
  out += std::to_string(r.extra_cost);
  out += '\n';
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

const char* decision_code(DecisionOutcome o) {
  switch (o) {
    case DecisionOutcome::Increase: return "I";
    case DecisionOutcome::Stay: return "S";
    case DecisionOutcome::Decrease: return "D";
    case DecisionOutcome::Restart: return "R";
    case DecisionOutcome::Continue: break;
  }
  return "";
}

struct RunTask {
  const RunConfig* cfg = nullptr;
  const ProblemInstance* inst = nullptr;
  std::size_t optimizer_index = 0;
  std::size_t rate_index = 0;
  std::int64_t seed = 0;
  std::int64_t stride = 1;
};

std::string run_id_of(const RunTask& t) {
  const auto& o = t.cfg->optimizers[t.optimizer_index];
  return t.inst->name + "__" + o.label(t.optimizer_index) + "__r" +
         std::to_string(t.rate_index) + "__s" + std::to_string(t.seed);
}

// Maintains the optional iterate average and its exact loss column.
class AveragingColumn {
 public:
  AveragingColumn(bool enabled, const ProblemInstance& inst)
      : inst_(inst) {
    if (enabled)
      averager_.emplace(static_cast<std::size_t>(inst.dim), RoundAveragerConfig{});
  }

  std::optional<double> feed(const Vec& iterate, bool logged) {
    if (!averager_) return std::nullopt;
    Vec z = averager_->update(iterate);
    if (!logged || !inst_.objective->has_exact()) return std::nullopt;
    return inst_.objective->exact_value(z);
  }

 private:
  const ProblemInstance& inst_;
  std::optional<RoundAverager> averager_;
};

std::vector<TraceRecord> execute_run(const RunTask& task) {
  const RunConfig& cfg = *task.cfg;
  const ProblemInstance& inst = *task.inst;
  const OptimizerSpec& spec = cfg.optimizers[task.optimizer_index];
  const double rate = cfg.init_rates[task.rate_index];
  const std::string run_id = run_id_of(task);

  // Run stream: child of (gen_seed, optimizer, rate, seed).
  RngStream rng = RngStream(cfg.gen_seed, RngStream::hash_label("harness-run"))
                      .child(spec.label(task.optimizer_index))
                      .child(std::bit_cast<std::uint64_t>(rate))
                      .child(static_cast<std::uint64_t>(task.seed));

  std::vector<TraceRecord> rows;
  rows.reserve(static_cast<std::size_t>(cfg.budget / task.stride) + 2);

  TraceRecord base;
  base.run_id = run_id;
  base.problem = inst.name;
  base.optimizer = spec.kind;
  base.seed = task.seed;

  AveragingColumn averaging(cfg.averaging, inst);
  const StochasticObjective& sobj = *inst.objective;
  const bool exact_ok = cfg.log_exact && sobj.has_exact();

  auto logged_iter = [&](std::int64_t t) {
    return t % task.stride == 0 || t == cfg.budget - 1;
  };

  if (spec.kind == "autosgd") {
    AutoSgdConfig acfg;
    acfg.c = spec.c;
    acfg.C = spec.C;
    acfg.restart_shrink = spec.restart_shrink;
    acfg.decision.z_star = spec.z_star;
    acfg.decision.min_samples = static_cast<std::uint64_t>(spec.min_samples);
    acfg.budget = cfg.budget;

    AutoSgdRunOptions opts;
    opts.log_exact = exact_ok;
    opts.stride = task.stride;
    opts.iterate_hook = [&](const Vec& mid, bool logged) {
      return averaging.feed(mid, logged);
    };
    AutoSgdRunResult res = autosgd_run(sobj, inst.x0, rate, acfg, rng, opts);
    for (const SgdTraceRow& r : res.trace) {
      TraceRecord rec = base;
      rec.iteration = r.iter;
      rec.episode = r.episode;
      rec.gamma = r.gamma;
      rec.loss_est = r.loss_estimate;
      rec.loss_exact = r.loss_exact;
      rec.loss_avg = r.loss_avg;
      rec.decision = decision_code(r.outcome);
      rec.extra_cost = 8;  // paired objective evaluations per inner iteration
      rows.push_back(std::move(rec));
    }
    return rows;
  }

  if (spec.kind == "autogd" || spec.kind == "armijo_gd") {
    if (!inst.exact)
      throw std::runtime_error(spec.kind + " needs an exact objective");
    const Objective& dobj = *inst.exact;

    if (spec.kind == "autogd") {
      AutoGdConfig gcfg;
      gcfg.c = spec.c;
      gcfg.C = spec.C;
      gcfg.restart_shrink = spec.restart_shrink;
      gcfg.max_iters = cfg.budget;
      AutoGdState state = make_autogd_state(dobj, inst.x0, rate);
      for (std::int64_t t = 0; t < cfg.budget; ++t) {
        AutoGdStepResult r = autogd_step(state, dobj, gcfg);
        state = std::move(r.state);
        const bool logged = logged_iter(t);
        auto avg = averaging.feed(state.x, logged);
        if (!logged) continue;
        TraceRecord rec = base;
        rec.iteration = t;
        rec.gamma = state.gamma;
        rec.loss_est = state.f_x;
        rec.loss_exact = state.f_x;
        rec.loss_avg = avg;
        rec.decision = r.accepted ? "A" : "R";
        rec.extra_cost = 2;  // two extra lookahead evaluations vs plain GD
        rows.push_back(std::move(rec));
      }
    } else {
      ArmijoGdConfig bcfg;
      bcfg.gamma0 = rate;
      bcfg.c_armijo = spec.c_armijo;
      bcfg.backtrack = spec.backtrack;
      bcfg.max_backtracks = spec.max_backtracks;
      ArmijoGdState state;
      state.x = inst.x0;
      for (std::int64_t t = 0; t < cfg.budget; ++t) {
        NmlsStepInfo info = armijo_gd_step(state, dobj, bcfg);
        const bool logged = logged_iter(t);
        auto avg = averaging.feed(state.x, logged);
        if (!logged) continue;
        TraceRecord rec = base;
        rec.iteration = t;
        rec.gamma = info.gamma_used;
        rec.loss_est = state.f_x;
        rec.loss_exact = state.f_x;
        rec.loss_avg = avg;
        rec.extra_cost = info.backtracks;
        rows.push_back(std::move(rec));
      }
    }
    return rows;
  }

  // Stochastic single-stream baselines.
  auto emit = [&](std::int64_t t, const Vec& reported, double gamma,
                  NoiseToken u, std::int64_t extra_cost) {
    const bool logged = logged_iter(t);
    auto avg = averaging.feed(reported, logged);
    if (!logged) return;
    TraceRecord rec = base;
    rec.iteration = t;
    rec.gamma = gamma;
    rec.loss_est = sobj.value(reported, u);
    if (exact_ok) rec.loss_exact = sobj.exact_value(reported);
    rec.loss_avg = avg;
    rec.extra_cost = extra_cost;
    rows.push_back(std::move(rec));
  };

  if (spec.kind == "sgd_constant" || spec.kind == "sgd_invsqrt") {
    SgdConfig scfg;
    scfg.gamma = rate;
    scfg.invsqrt_decay = spec.kind == "sgd_invsqrt";
    SgdState state;
    state.x = inst.x0;
    Vec g(inst.x0.size());
    for (std::int64_t t = 0; t < cfg.budget; ++t) {
      const NoiseToken u = sobj.sample_noise(rng);
      const double gamma = state.effective_rate(scfg);
      sobj.gradient(state.x, u, g);
      sgd_step(state, g, scfg);
      emit(t, state.x, gamma, u, 0);
    }
  } else if (spec.kind == "dog") {
    DogConfig dcfg;
    dcfg.r_eps = spec.r_eps;
    dcfg.eps = spec.eps;
    DogState state = make_dog_state(inst.x0, dcfg);
    Vec g(inst.x0.size());
    for (std::int64_t t = 0; t < cfg.budget; ++t) {
      const NoiseToken u = sobj.sample_noise(rng);
      sobj.gradient(state.x, u, g);
      dog_step(state, g, dcfg);
      emit(t, state.x, state.last_rate, u, 0);
    }
  } else if (spec.kind == "sfsgd") {
    SfsgdConfig fcfg;
    fcfg.gamma = rate;
    fcfg.beta = spec.beta;
    SfsgdState state = make_sfsgd_state(inst.x0);
    for (std::int64_t t = 0; t < cfg.budget; ++t) {
      const NoiseToken u = sobj.sample_noise(rng);
      sfsgd_step(state, [&](const Vec& y, Vec& g) { sobj.gradient(y, u, g); }, fcfg);
      emit(t, state.x_bar, fcfg.gamma, u, 0);
    }
  } else if (spec.kind == "nmls") {
    NmlsConfig ncfg;
    ncfg.gamma_max = spec.nmls_rate_factor * rate;
    ncfg.c_armijo = spec.c_armijo;
    ncfg.backtrack = spec.backtrack;
    ncfg.memory = spec.memory;
    ncfg.max_backtracks = spec.max_backtracks;
    NmlsState state;
    state.x = inst.x0;
    for (std::int64_t t = 0; t < cfg.budget; ++t) {
      const NoiseToken u = sobj.sample_noise(rng);
      NmlsStepInfo info = nmls_step(state, sobj, u, ncfg);
      emit(t, state.x, info.gamma_used, u, info.backtracks);
    }
  } else {
    throw std::runtime_error("unhandled optimizer kind: " + spec.kind);
  }
  return rows;
}

}  // namespace

std::string trace_to_csv(const std::vector<TraceRecord>& rows) {
  std::string out = kTraceCsvHeader;
  out += '\n';
  for (const TraceRecord& r : rows) append_record(out, r);
  return out;
}

namespace {

std::size_t worker_count(std::size_t requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("AUTOSGD_WORKERS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<std::size_t>(v);
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : hc;
}

struct PreparedRuns {
  ProblemInstance inst;
  std::vector<RunTask> tasks;
  std::int64_t stride = 1;
};

PreparedRuns prepare(const RunConfig& cfg) {
  cfg.validate();
  PreparedRuns prep;
  prep.inst = make_problem(cfg.problem, cfg.gen_seed, cfg.overrides);
  prep.stride = std::max<std::int64_t>(1, (cfg.budget + 99999) / 100000);
  for (std::size_t oi = 0; oi < cfg.optimizers.size(); ++oi)
    for (std::size_t ri = 0; ri < cfg.init_rates.size(); ++ri)
      for (std::int64_t seed : cfg.run_seeds)
        prep.tasks.push_back({&cfg, &prep.inst, oi, ri, seed, prep.stride});
  return prep;
}

struct TaskResult {
  std::string csv;
  bool ok = false;
  std::string error;
  double wall_ms = 0.0;
};

std::vector<TaskResult> execute_all(const std::vector<RunTask>& tasks,
                                    std::size_t workers) {
  std::vector<TaskResult> results(tasks.size());
  std::atomic<std::size_t> next{0};
  auto body = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      const auto start = std::chrono::steady_clock::now();
      TaskResult& res = results[i];
      try {
        res.csv = trace_to_csv(execute_run(tasks[i]));
        res.ok = true;
      } catch (const std::exception& e) {
        res.ok = false;
        res.error = e.what();
      }
      res.wall_ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - start)
                        .count();
    }
  };
  const std::size_t n = std::min(worker_count(workers), std::max<std::size_t>(1, tasks.size()));
  if (n <= 1) {
    body();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n);
    for (std::size_t i = 0; i < n; ++i) pool.emplace_back(body);
    for (auto& th : pool) th.join();
  }
  return results;
}

json config_to_json(const RunConfig& cfg) {
  json j;
  j["problem"]["name"] = cfg.problem;
  j["problem"]["gen_seed"] = cfg.gen_seed;
  if (cfg.overrides.n) j["problem"]["n"] = *cfg.overrides.n;
  if (cfg.overrides.d) j["problem"]["d"] = *cfg.overrides.d;
  if (cfg.overrides.k) j["problem"]["k"] = *cfg.overrides.k;
  if (cfg.overrides.x0) j["problem"]["x0"] = *cfg.overrides.x0;
  j["optimizers"] = json::array();
  for (const auto& o : cfg.optimizers) {
    json jo;
    jo["kind"] = o.kind;
    jo["c"] = o.c;
    jo["C"] = o.C;
    if (o.restart_shrink) jo["restart_shrink"] = *o.restart_shrink;
    jo["z_star"] = o.z_star;
    jo["min_samples"] = o.min_samples;
    jo["r_eps"] = o.r_eps;
    jo["eps"] = o.eps;
    jo["beta"] = o.beta;
    jo["c_armijo"] = o.c_armijo;
    jo["backtrack"] = o.backtrack;
    jo["memory"] = o.memory;
    jo["max_backtracks"] = o.max_backtracks;
    jo["gamma_max_factor"] = o.nmls_rate_factor;
    j["optimizers"].push_back(jo);
  }
  j["init_rates"] = cfg.init_rates;
  j["run_seeds"] = cfg.run_seeds;
  j["budget"] = cfg.budget;
  j["averaging"] = cfg.averaging;
  j["log_exact"] = cfg.log_exact;
  return j;
}

}  // namespace

std::vector<std::pair<std::string, std::string>> run_experiment_to_memory(
    const RunConfig& cfg, std::size_t workers) {
  PreparedRuns prep = prepare(cfg);
  std::vector<TaskResult> results = execute_all(prep.tasks, workers);
  std::vector<std::pair<std::string, std::string>> out;
  out.reserve(results.size());
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (!results[i].ok)
      throw std::runtime_error("run " + run_id_of(prep.tasks[i]) +
                               " failed: " + results[i].error);
    out.emplace_back(run_id_of(prep.tasks[i]), std::move(results[i].csv));
  }
  return out;
}

ExperimentResult run_experiment(const RunConfig& cfg) {
  if (cfg.output_dir.empty()) throw ConfigError("config: output_dir is required");
  PreparedRuns prep = prepare(cfg);
  fs::create_directories(cfg.output_dir);

  std::vector<TaskResult> results = execute_all(prep.tasks, 0);

  ExperimentResult out;
  json manifest;
  manifest["format_version"] = 1;
  manifest["tool"] = "autosgd 0.1.0";
  const json cfg_json = config_to_json(cfg);
  manifest["config"] = cfg_json;
  manifest["config_hash"] = hex64(fnv1a(cfg_json.dump()));
  manifest["problem"]["name"] = prep.inst.name;
  manifest["problem"]["n"] = prep.inst.n;
  manifest["problem"]["d"] = prep.inst.dim;
  manifest["problem"]["gen_seed"] = prep.inst.gen_seed;
  manifest["problem"]["instance_hash"] = hex64(prep.inst.data_hash);
  manifest["stride"] = prep.stride;
  manifest["columns"] = kTraceCsvHeader;
  manifest["runs"] = json::array();

  // Single collector writes all files so output is never interleaved.
  for (std::size_t i = 0; i < prep.tasks.size(); ++i) {
    const RunTask& task = prep.tasks[i];
    const TaskResult& res = results[i];
    RunOutcome run;
    run.run_id = run_id_of(task);
    run.file = run.run_id + ".csv";
    run.optimizer = cfg.optimizers[task.optimizer_index].kind;
    run.optimizer_index = task.optimizer_index;
    run.rate = cfg.init_rates[task.rate_index];
    run.rate_index = task.rate_index;
    run.seed = task.seed;
    run.ok = res.ok;
    run.error = res.error;
    run.wall_ms = res.wall_ms;

    if (res.ok) {
      std::ofstream f(fs::path(cfg.output_dir) / run.file, std::ios::binary);
      if (!f) throw std::runtime_error("cannot write " + run.file);
      f << res.csv;
    }
    json jr;
    jr["run_id"] = run.run_id;
    jr["file"] = run.file;
    jr["optimizer"] = run.optimizer;
    jr["optimizer_index"] = run.optimizer_index;
    jr["rate"] = run.rate;
    jr["rate_index"] = run.rate_index;
    jr["seed"] = run.seed;
    jr["status"] = run.ok ? "ok" : "failed";
    if (!run.ok) jr["error"] = run.error;
    jr["wall_ms"] = run.wall_ms;  // excluded from the determinism contract
    manifest["runs"].push_back(jr);

    out.all_ok = out.all_ok && run.ok;
    out.runs.push_back(std::move(run));
  }

  const fs::path mpath = fs::path(cfg.output_dir) / "manifest.json";
  std::ofstream mf(mpath, std::ios::binary);
  if (!mf) throw std::runtime_error("cannot write manifest.json");
  mf << manifest.dump(2) << '\n';
  out.manifest_path = mpath.string();
  return out;
}

// -- summaries ---------------------------------------------------------------

namespace {

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

struct ParsedTrace {
  std::vector<std::int64_t> iters;
  std::vector<double> gammas;
  std::vector<double> losses;  // exact when present, else estimate
  std::int64_t extra_cost = 0;
};

// The group's rate trace: pointwise median of the seeds' step-function
// traces over the union of their logged iterations.
std::optional<double> group_gamma_slope(const std::vector<ParsedTrace>& traces);

ParsedTrace parse_trace_csv(const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("summarize: cannot open " + file.string());
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("summarize: empty " + file.string());
  ParsedTrace t;
  std::vector<std::string> fields;
  while (std::getline(in, line)) {
    fields.clear();
    std::size_t pos = 0;
    while (true) {
      const std::size_t comma = line.find(',', pos);
      fields.push_back(line.substr(pos, comma - pos));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    if (fields.size() < 12) continue;
    t.iters.push_back(std::strtoll(fields[4].c_str(), nullptr, 10));
    t.gammas.push_back(std::strtod(fields[6].c_str(), nullptr));
    const std::string& exact = fields[8];
    t.losses.push_back(std::strtod(exact.empty() ? fields[7].c_str() : exact.c_str(),
                                   nullptr));
    t.extra_cost += std::strtoll(fields[11].c_str(), nullptr, 10);
  }
  return t;
}

std::optional<double> group_gamma_slope(const std::vector<ParsedTrace>& traces) {
  if (traces.empty()) return std::nullopt;
  std::vector<std::int64_t> grid;
  for (const ParsedTrace& t : traces)
    grid.insert(grid.end(), t.iters.begin(), t.iters.end());
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  std::vector<double> med(grid.size());
  std::vector<std::size_t> cursor(traces.size(), 0);
  std::vector<double> vals(traces.size());
  for (std::size_t gi = 0; gi < grid.size(); ++gi) {
    for (std::size_t r = 0; r < traces.size(); ++r) {
      const ParsedTrace& t = traces[r];
      std::size_t& c = cursor[r];
      while (c + 1 < t.iters.size() && t.iters[c + 1] <= grid[gi]) ++c;
      vals[r] = t.gammas[c];
    }
    med[gi] = median_of(vals);
  }
  return loglog_slope_final_decade(grid, med);
}

}  // namespace

std::optional<double> loglog_slope_final_decade(const std::vector<std::int64_t>& iters,
                                                const std::vector<double>& gammas) {
  if (iters.empty() || iters.size() != gammas.size()) return std::nullopt;
  const std::int64_t t_max = *std::max_element(iters.begin(), iters.end());
  const std::int64_t t_min = t_max / 10;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < iters.size(); ++i) {
    if (iters[i] < t_min || !(gammas[i] > 0.0)) continue;
    const double x = std::log(static_cast<double>(iters[i]) + 1.0);
    const double y = std::log(gammas[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n < 2) return std::nullopt;
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) return std::nullopt;
  return (n * sxy - sx * sy) / denom;
}

std::vector<SummaryRow> summarize_directory(const std::string& dir,
                                            std::optional<double> threshold) {
  const fs::path mpath = fs::path(dir) / "manifest.json";
  std::ifstream mf(mpath);
  if (!mf) throw std::runtime_error("summarize: missing manifest at " + mpath.string());
  json manifest;
  try {
    mf >> manifest;
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("summarize: bad manifest: ") + e.what());
  }
  const std::string problem = manifest.at("problem").at("name").get<std::string>();

  struct Group {
    std::string optimizer;
    double rate = 0.0;
    std::vector<double> final_losses;
    std::vector<double> iters_to_threshold;
    std::vector<ParsedTrace> traces;
    std::int64_t extra_cost = 0;
  };
  std::map<std::pair<std::size_t, std::size_t>, Group> groups;

  for (const json& jr : manifest.at("runs")) {
    if (jr.at("status").get<std::string>() != "ok") continue;
    const auto key = std::make_pair(jr.at("optimizer_index").get<std::size_t>(),
                                    jr.at("rate_index").get<std::size_t>());
    Group& g = groups[key];
    g.optimizer = jr.at("optimizer").get<std::string>();
    g.rate = jr.at("rate").get<double>();

    ParsedTrace t = parse_trace_csv(fs::path(dir) / jr.at("file").get<std::string>());
    if (t.losses.empty()) continue;
    g.final_losses.push_back(t.losses.back());
    g.extra_cost += t.extra_cost;
    if (threshold) {
      double hit = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < t.losses.size(); ++i)
        if (t.losses[i] <= *threshold) {
          hit = static_cast<double>(t.iters[i]);
          break;
        }
      g.iters_to_threshold.push_back(hit);
    }
    g.traces.push_back(std::move(t));
  }

  std::vector<SummaryRow> rows;
  for (auto& [key, g] : groups) {
    if (g.final_losses.empty()) continue;
    SummaryRow row;
    row.problem = problem;
    row.optimizer = g.optimizer;
    row.rate = g.rate;
    row.runs = static_cast<int>(g.final_losses.size());
    row.final_loss_min = *std::min_element(g.final_losses.begin(), g.final_losses.end());
    row.final_loss_max = *std::max_element(g.final_losses.begin(), g.final_losses.end());
    row.final_loss_median = median_of(g.final_losses);
    row.total_extra_cost = g.extra_cost;
    row.gamma_slope = group_gamma_slope(g.traces);
    if (threshold && !g.iters_to_threshold.empty()) {
      const double med = median_of(g.iters_to_threshold);
      if (std::isfinite(med)) row.iters_to_threshold_median = med;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string summary_to_csv(const std::vector<SummaryRow>& rows) {
  std::string out =
      "problem,optimizer,rate,runs,final_loss_min,final_loss_median,final_loss_max,"
      "iters_to_threshold_median,total_extra_cost,gamma_slope\n";
  for (const SummaryRow& r : rows) {
    out += r.problem;
    out += ',';
    out += r.optimizer;
    out += ',';
    append_double(out, r.rate);
    out += ',';
    out += std::to_string(r.runs);
    out += ',';
    append_double(out, r.final_loss_min);
    out += ',';
    append_double(out, r.final_loss_median);
    out += ',';
    append_double(out, r.final_loss_max);
    out += ',';
    if (r.iters_to_threshold_median) append_double(out, *r.iters_to_threshold_median);
    out += ',';
    out += std::to_string(r.total_extra_cost);
    out += ',';
    if (r.gamma_slope) append_double(out, *r.gamma_slope);
    out += '\n';
  }
  return out;
}

}  // namespace autosgd
