#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "qcs/ansatz.hpp"
#include "qcs/model.hpp"
#include "qcs/qce.hpp"

namespace qcs {

/// One experiment run: model + ansatz + optimizer settings plus output
/// plumbing. Results land under output_root()/output_path.
struct RunConfig {
  ModelParams model;
  AnsatzSpec ansatz;
  OptimizerConfig opt;
  double t_max = 0.0;
  std::vector<int> cuts;  // entropy tracking positions, subset of [1, L-1]
  std::uint64_t seed = 0;
  std::string output_path;
  int record_every = 10;    // Trotter steps between CSV rows
  int snapshot_every = 0;   // records between circuit snapshots; 0 = final only
  double stop_above_infidelity = -1.0;  // abort threshold; < 0 disables
};

void validate(const RunConfig& config);
RunConfig run_config_from_json(const nlohmann::json& doc);
RunConfig load_run_config(const std::string& path);

struct TimeSeriesRecord {
  double t = 0.0;
  double overlap_I = 1.0;
  double infidelity_exact = 0.0;
  std::map<int, double> entropies;  // cut -> S in nats
  int sweeps_used = 0;
};

/// $QCS_OUTPUT_DIR if set, else the current directory.
std::string output_root();
/// Root joined with config.output_path, created on demand.
std::string output_dir(const RunConfig& config);

struct QuenchResult {
  std::vector<TimeSeriesRecord> series;
  std::vector<std::vector<double>> sweep_traces;  // per Trotter step
  Circuit final_circuit;
  std::string csv_path;
};

QuenchResult run_quench(const RunConfig& config);

/// Largest recorded t such that 1 - F < 10^-z at every recorded time up to
/// and including it.
double max_evolution_time(const std::vector<TimeSeriesRecord>& series, int z);

struct FitResult {
  std::vector<double> infidelity_per_sweep;  // 1 - F after each sweep
  int sweeps_used = 0;
  Termination terminated_by = Termination::cap;
  Circuit circuit;
  std::string csv_path;
};

/// Fits the configured ansatz directly to the exact state at target_time.
FitResult run_fit(const RunConfig& config, double target_time);

struct EntropyMap {
  std::vector<double> times;
  std::vector<int> cuts;
  std::vector<std::vector<double>> entropy;  // [time index][cut index]
  std::string csv_path;
};

EntropyMap entropy_map(const RunConfig& config, bool exact);

struct CountRow {
  AnsatzSpec spec;
  std::int64_t n_g = 0;
  std::int64_t n_p = 0;
};

/// For each L: the exact multi-qubit encoding (l = floor(L/2)+1), the
/// diamond circuit, and the 3-layer sequential circuit.
std::vector<CountRow> count_table(int L_min, int L_max);

/// e^{-iHt}|0...0>, memoized on disk under output_root()/cache.
StateVector cached_exact_state(const ModelParams& model, double t);

}  // namespace qcs
