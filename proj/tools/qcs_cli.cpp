#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "qcs/ansatz.hpp"
#include "qcs/entbound.hpp"
#include "qcs/exactrep.hpp"
#include "qcs/experiments.hpp"
#include "qcs/io.hpp"
#include "qcs/qce.hpp"

namespace {

using nlohmann::json;

json cut_report_json(int k, const qcs::CutReport& report, int L) {
  return {{"k", k},
          {"cut_bits", report.cut_bits},
          {"bound_nats", report.bound_nats},
          {"passes", report.cut_bits >= std::min(k, L - k)}};
}

int run_quench_cmd(const std::string& config_path) {
  const qcs::RunConfig config = qcs::load_run_config(config_path);
  const qcs::QuenchResult result = qcs::run_quench(config);
  double worst = 0.0;
  for (const auto& rec : result.series)
    worst = std::max(worst, rec.infidelity_exact);
  std::cout << json{{"csv", result.csv_path},
                    {"records", result.series.size()},
                    {"max_infidelity_exact", worst}}
                   .dump(2)
            << '\n';
  return 0;
}

int run_fit_cmd(const std::string& config_path, double jt) {
  const qcs::RunConfig config = qcs::load_run_config(config_path);
  const qcs::FitResult result = qcs::run_fit(config, jt / config.model.J);
  std::cout << json{{"csv", result.csv_path},
                    {"sweeps", result.sweeps_used},
                    {"final_infidelity", result.infidelity_per_sweep.empty()
                                             ? 1.0
                                             : result.infidelity_per_sweep.back()}}
                   .dump(2)
            << '\n';
  return 0;
}

int run_encode_cmd(const std::string& state_path, int gate_size,
                   std::string out_path) {
  const qcs::StateVector state = qcs::load_state(state_path);
  const qcs::Circuit circuit = qcs::state_to_circuit(state, gate_size);
  if (out_path.empty()) out_path = state_path + ".circuit.json";
  qcs::save_circuit(circuit, out_path);
  const double fid = qcs::fidelity(state, qcs::run_circuit(circuit));
  std::cout << json{{"circuit", out_path},
                    {"gates", circuit.size()},
                    {"fidelity", fid}}
                   .dump(2)
            << '\n';
  return 0;
}

int run_bound_cmd(const std::string& circuit_path, int cut) {
  const qcs::Circuit circuit = qcs::load_circuit(circuit_path);
  if (cut >= 0) {
    const qcs::CutReport report = qcs::entropy_bound(circuit, cut);
    std::cout << cut_report_json(cut, report, circuit.n_qubits).dump(2) << '\n';
    return 0;
  }
  const qcs::VolumeLawReport report = qcs::volume_law_check(circuit);
  json cuts = json::array();
  for (int k = 1; k < circuit.n_qubits; ++k)
    cuts.push_back(
        cut_report_json(k, report.per_cut[k - 1], circuit.n_qubits));
  std::cout << json{{"volume_law", report.volume_law}, {"cuts", cuts}}.dump(2)
            << '\n';
  return 0;
}

int run_count_cmd(int lmin, int lmax) {
  json rows = json::array();
  for (const qcs::CountRow& row : qcs::count_table(lmin, lmax))
    rows.push_back({{"L", row.spec.L},
                    {"ansatz", qcs::to_string(row.spec.kind)},
                    {"l", row.spec.l},
                    {"m", row.spec.m},
                    {"n_g", row.n_g},
                    {"n_p", row.n_p}});
  std::cout << rows.dump(2) << '\n';
  return 0;
}

int run_entropy_map_cmd(const std::string& config_path, bool exact) {
  const qcs::RunConfig config = qcs::load_run_config(config_path);
  const qcs::EntropyMap map = qcs::entropy_map(config, exact);
  std::cout << json{{"csv", map.csv_path}, {"rows", map.times.size()}}.dump(2)
            << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"shallow-circuit simulator for Ising quench dynamics"};
  app.require_subcommand(1);

  std::string config_path, state_path, circuit_path, out_path;
  double jt = 0.0;
  int gate_size = 0, cut = -1, lmin = 0, lmax = 0;
  bool exact = false;

  auto* quench = app.add_subcommand("quench", "chained Trotter compression run");
  quench->add_option("--config", config_path, "run config JSON")->required();

  auto* fit = app.add_subcommand("fit", "fit the ansatz to one exact state");
  fit->add_option("--config", config_path, "run config JSON")->required();
  fit->add_option("--jt", jt, "target time in units of 1/J")->required();

  auto* encode = app.add_subcommand("encode", "exact circuit encoding of a state");
  encode->add_option("--state", state_path, "state JSON")->required();
  encode->add_option("--gate-size", gate_size, "qubits per gate")->required();
  encode->add_option("--out", out_path, "output circuit path");

  auto* bound = app.add_subcommand("bound", "entanglement bounds of a circuit");
  bound->add_option("--circuit", circuit_path, "circuit JSON")->required();
  bound->add_option("--cut", cut, "single bipartition position");

  auto* count = app.add_subcommand("count", "gate and parameter count table");
  count->add_option("--lmin", lmin, "smallest chain length")->required();
  count->add_option("--lmax", lmax, "largest chain length")->required();

  auto* emap = app.add_subcommand("entropy-map", "entropy vs time and cut");
  emap->add_option("--config", config_path, "run config JSON")->required();
  emap->add_flag("--exact", exact, "use the exact propagator");

  CLI11_PARSE(app, argc, argv);

  try {
    if (quench->parsed()) return run_quench_cmd(config_path);
    if (fit->parsed()) return run_fit_cmd(config_path, jt);
    if (encode->parsed()) return run_encode_cmd(state_path, gate_size, out_path);
    if (bound->parsed()) return run_bound_cmd(circuit_path, cut);
    if (count->parsed()) return run_count_cmd(lmin, lmax);
    if (emap->parsed()) return run_entropy_map_cmd(config_path, exact);
  } catch (const std::exception& e) {
    std::cout << json{{"error", e.what()}}.dump(2) << '\n';
    return 1;
  }
  return 1;
}
