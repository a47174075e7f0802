#include "qcs/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <stdexcept>

#include "qcs/io.hpp"

namespace qcs {
namespace {

namespace fs = std::filesystem;

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

int step_count(double t_max, double dt) {
  return static_cast<int>(std::llround(t_max / dt));
}

double clamp01_infidelity(double fid) { return std::max(0.0, 1.0 - fid); }

std::vector<int> effective_cuts(const RunConfig& config) {
  if (!config.cuts.empty()) return config.cuts;
  std::vector<int> cuts;
  for (int k = 1; k < config.model.L; ++k) cuts.push_back(k);
  return cuts;
}

std::string time_tag(double t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", t);
  std::string s = buf;
  std::replace(s.begin(), s.end(), '.', 'p');
  return s;
}

}  // namespace

void validate(const RunConfig& config) {
  validate(config.model);
  validate(config.opt);
  if (config.t_max < 0.0)
    throw std::invalid_argument("RunConfig: t_max must be >= 0");
  const double steps = config.t_max / config.model.dt;
  if (std::abs(steps - std::llround(steps)) > 1e-9)
    throw std::invalid_argument("RunConfig: t_max must be a multiple of dt");
  for (int k : config.cuts)
    if (k < 1 || k >= config.model.L)
      throw std::invalid_argument("RunConfig: cut outside [1, L-1]");
  if (config.record_every < 1)
    throw std::invalid_argument("RunConfig: record_every must be >= 1");
  if (config.ansatz.L != config.model.L)
    throw std::invalid_argument("RunConfig: ansatz.L must match model.L");
}

RunConfig run_config_from_json(const nlohmann::json& doc) {
  RunConfig config;
  const auto& jm = doc.at("model");
  config.model.L = jm.at("L").get<int>();
  config.model.J = jm.value("J", 1.0);
  config.model.g = jm.value("g", 0.0);
  config.model.h = jm.value("h", 0.0);
  config.model.dt = jm.value("dt", 0.01);

  const auto& ja = doc.at("ansatz");
  config.ansatz.kind = ansatz_kind_from_string(ja.at("kind").get<std::string>());
  config.ansatz.L = ja.value("L", config.model.L);
  config.ansatz.l = ja.value("l", 0);
  config.ansatz.m = ja.value("m", 0);

  if (doc.contains("opt")) {
    const auto& jo = doc["opt"];
    config.opt.w_min = jo.value("w_min", config.opt.w_min);
    config.opt.w_max = jo.value("w_max", config.opt.w_max);
    config.opt.eps_a = jo.value("eps_a", config.opt.eps_a);
    config.opt.eps_r = jo.value("eps_r", config.opt.eps_r);
  }

  config.t_max = doc.value("t_max", 0.0);
  config.cuts = doc.value("cuts", std::vector<int>{});
  config.seed = doc.value("seed", std::uint64_t{0});
  config.output_path = doc.value("output_path", std::string{});
  config.record_every = doc.value("record_every", 10);
  config.snapshot_every = doc.value("snapshot_every", 0);
  config.stop_above_infidelity = doc.value("stop_above_infidelity", -1.0);
  validate(config);
  return config;
}

RunConfig load_run_config(const std::string& path) {
  return run_config_from_json(load_json(path));
}

std::string output_root() {
  if (const char* env = std::getenv("QCS_OUTPUT_DIR"); env && *env) return env;
  return ".";
}

std::string output_dir(const RunConfig& config) {
  fs::path dir = fs::path(output_root()) / config.output_path;
  fs::create_directories(dir);
  return dir.string();
}

StateVector cached_exact_state(const ModelParams& model, double t) {
  char key[160];
  std::snprintf(key, sizeof key, "L=%d J=%.17g g=%.17g h=%.17g t=%.17g",
                model.L, model.J, model.g, model.h, t);
  const fs::path dir = fs::path(output_root()) / "cache";
  const fs::path file = dir / ("exact_" + hex64(fnv1a(key)) + ".json");
  if (fs::exists(file)) {
    const StateVector cached = load_state(file.string());
    if (cached.n_qubits == model.L) return cached;
  }
  const StateVector state = exact_evolve(zero_state(model.L), model, t);
  fs::create_directories(dir);
  save_state(state, file.string());
  return state;
}

QuenchResult run_quench(const RunConfig& config) {
  validate(config);
  const std::string dir = output_dir(config);
  const int n_steps = step_count(config.t_max, config.model.dt);
  const ExactEvolver evolver(config.model);
  const std::vector<int> cuts = effective_cuts(config);

  QuenchResult result;
  StateVector exact = zero_state(config.model.L);
  double exact_t = 0.0;
  int records = 0;

  const auto on_step = [&](const ChainStep& step,
                           const StateVector& state) -> bool {
    const int ns = static_cast<int>(std::llround(step.t / config.model.dt));
    result.sweep_traces.push_back(step.overlap_trace);
    if (ns % config.record_every != 0 && ns != n_steps) return true;

    if (step.t > exact_t) {
      exact = evolver.evolve(exact, step.t - exact_t);
      exact_t = step.t;
    }
    TimeSeriesRecord rec;
    rec.t = step.t;
    rec.overlap_I = step.overlap_I;
    rec.infidelity_exact = clamp01_infidelity(fidelity(exact, state));
    rec.sweeps_used = step.sweeps_used;
    for (int k : cuts) rec.entropies[k] = entanglement_entropy(state, k);
    result.series.push_back(std::move(rec));
    ++records;

    if (config.snapshot_every > 0 && records % config.snapshot_every == 0)
      save_circuit(step.circuit,
                   dir + "/circuit_t" + time_tag(step.t) + ".json");
    if (config.stop_above_infidelity >= 0.0 &&
        result.series.back().infidelity_exact > config.stop_above_infidelity)
      return false;
    return true;
  };

  AnsatzSpec spec = config.ansatz;
  auto chain =
      evolve_chain(config.model, spec, config.t_max, config.opt, on_step);
  result.final_circuit = chain.back().circuit;
  save_circuit(result.final_circuit, dir + "/circuit_final.json");

  Csv csv;
  csv.header = {"Jt", "overlap_I", "infidelity_exact", "sweeps"};
  for (int k : cuts) csv.header.push_back("S_cut_" + std::to_string(k));
  for (const TimeSeriesRecord& rec : result.series) {
    std::vector<double> row = {rec.t * config.model.J, rec.overlap_I,
                               rec.infidelity_exact,
                               static_cast<double>(rec.sweeps_used)};
    for (int k : cuts) row.push_back(rec.entropies.at(k));
    csv.rows.push_back(std::move(row));
  }
  result.csv_path = dir + "/quench.csv";
  write_csv(csv, result.csv_path);
  return result;
}

double max_evolution_time(const std::vector<TimeSeriesRecord>& series, int z) {
  if (series.empty())
    throw std::domain_error("max_evolution_time: empty series");
  if (z < 2 || z > 6)
    throw std::invalid_argument("max_evolution_time: need z in [2, 6]");
  const double threshold = std::pow(10.0, -z);
  double t_star = 0.0;
  for (const TimeSeriesRecord& rec : series) {
    if (rec.infidelity_exact >= threshold) break;
    t_star = rec.t;
  }
  return t_star;
}

FitResult run_fit(const RunConfig& config, double target_time) {
  validate(config);
  if (target_time < 0.0)
    throw std::invalid_argument("run_fit: target_time must be >= 0");
  const std::string dir = output_dir(config);
  const StateVector target = cached_exact_state(config.model, target_time);

  Circuit circuit = build(config.ansatz);
  if (config.seed != 0) randomize_gates(circuit, config.seed);

  FitResult result;
  SweepOptimizer opt(std::move(circuit), target);
  double prev = -1.0;
  for (int w = 1; w <= config.opt.w_max; ++w) {
    const double f = opt.run_sweep();
    result.infidelity_per_sweep.push_back(clamp01_infidelity(f * f));
    result.sweeps_used = w;
    if (w >= config.opt.w_min && std::abs(1.0 - f) < config.opt.eps_a &&
        w > 1 && std::abs(1.0 - f / prev) < config.opt.eps_r) {
      result.terminated_by = Termination::absolute;
      break;
    }
    result.terminated_by = Termination::cap;
    prev = f;
  }
  result.circuit = opt.take_circuit();

  Csv csv;
  csv.header = {"sweep", "infidelity"};
  for (std::size_t w = 0; w < result.infidelity_per_sweep.size(); ++w)
    csv.rows.push_back(
        {static_cast<double>(w + 1), result.infidelity_per_sweep[w]});
  result.csv_path = dir + "/fit_" + to_string(config.ansatz.kind) + "_t" +
                    time_tag(target_time) + ".csv";
  write_csv(csv, result.csv_path);
  save_circuit(result.circuit,
               dir + "/fit_" + to_string(config.ansatz.kind) + "_t" +
                   time_tag(target_time) + ".json");
  return result;
}

EntropyMap entropy_map(const RunConfig& config, bool exact) {
  validate(config);
  const std::string dir = output_dir(config);
  const int n_steps = step_count(config.t_max, config.model.dt);

  EntropyMap map;
  map.cuts = effective_cuts(config);

  if (exact) {
    const ExactEvolver evolver(config.model);
    StateVector state = zero_state(config.model.L);
    for (int ns = 0; ns <= n_steps; ns += config.record_every) {
      const double t = ns * config.model.dt;
      if (ns > 0)
        state = evolver.evolve(state, config.record_every * config.model.dt);
      map.times.push_back(t);
      std::vector<double> row;
      for (int k : map.cuts) row.push_back(entanglement_entropy(state, k));
      map.entropy.push_back(std::move(row));
    }
  } else {
    const auto on_step = [&](const ChainStep& step,
                             const StateVector& state) -> bool {
      const int ns = static_cast<int>(std::llround(step.t / config.model.dt));
      if (ns % config.record_every != 0 && ns != n_steps) return true;
      map.times.push_back(step.t);
      std::vector<double> row;
      for (int k : map.cuts) row.push_back(entanglement_entropy(state, k));
      map.entropy.push_back(std::move(row));
      return true;
    };
    evolve_chain(config.model, config.ansatz, config.t_max, config.opt,
                 on_step);
  }

  Csv csv;
  csv.header = {"Jt"};
  for (int k : map.cuts) csv.header.push_back("S_cut_" + std::to_string(k));
  for (std::size_t i = 0; i < map.times.size(); ++i) {
    std::vector<double> row = {map.times[i] * config.model.J};
    row.insert(row.end(), map.entropy[i].begin(), map.entropy[i].end());
    csv.rows.push_back(std::move(row));
  }
  map.csv_path =
      dir + (exact ? "/entropy_map_exact.csv" : "/entropy_map_ansatz.csv");
  write_csv(csv, map.csv_path);
  return map;
}

std::vector<CountRow> count_table(int L_min, int L_max) {
  if (L_min < 2 || L_min > L_max || L_max > kMaxQubits)
    throw std::invalid_argument("count_table: bad L range");
  std::vector<CountRow> rows;
  for (int L = L_min; L <= L_max; ++L) {
    AnsatzSpec multi{AnsatzKind::sequential_multiqubit, L, L / 2 + 1, 0};
    AnsatzSpec diamond{AnsatzKind::diamond, L, 0, 0};
    AnsatzSpec seq3{AnsatzKind::sequential_layers, L, 0, 3};
    for (const AnsatzSpec& spec : {multi, diamond, seq3})
      rows.push_back({spec, count_gates(spec), count_params(spec)});
  }
  return rows;
}

}  // namespace qcs
