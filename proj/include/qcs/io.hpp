#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "qcs/ansatz.hpp"
#include "qcs/statevec.hpp"

namespace qcs {

// Circuit documents: {"L", "gates": [{"qubits", "re", "im"}], "sweep_order"}.
nlohmann::json circuit_to_json(const Circuit& circuit);
Circuit circuit_from_json(const nlohmann::json& doc);
void save_circuit(const Circuit& circuit, const std::string& path);
Circuit load_circuit(const std::string& path);

// State documents: {"L", "amp": [[re, im], ...]} with site 1 on bit 0.
nlohmann::json state_to_json(const StateVector& state);
StateVector state_from_json(const nlohmann::json& doc);
void save_state(const StateVector& state, const std::string& path);
StateVector load_state(const std::string& path);

void save_json(const nlohmann::json& doc, const std::string& path);
nlohmann::json load_json(const std::string& path);

/// Shortest decimal string that round-trips a double (17 significant
/// digits at most).
std::string format_double(double value);

struct Csv {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

void write_csv(const Csv& table, const std::string& path);

}  // namespace qcs
