#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qcs/statevec.hpp"

namespace qcs {

/// Ordered gate list; gates[0] is applied first to |0...0>. sweep_order is
/// the gate visiting order of the optimizer's forward pass.
struct Circuit {
  int n_qubits = 0;
  std::vector<Gate> gates;
  std::vector<int> sweep_order;

  int size() const { return static_cast<int>(gates.size()); }
};

/// C|0...0>.
StateVector run_circuit(const Circuit& circuit);
void apply_circuit(StateVector& state, const Circuit& circuit);
void apply_circuit_dagger(StateVector& state, const Circuit& circuit);

enum class AnsatzKind {
  sequential_multiqubit,  // single layer of l-qubit gates, windows shift by 1
  sequential_layers,      // m layers of two-qubit gates on bonds 1..L-1
  brickwall,              // m alternating odd-bond / even-bond layers
  diamond,                // two-qubit decomposition of the exact l-qubit layer
};

struct AnsatzSpec {
  AnsatzKind kind = AnsatzKind::diamond;
  int L = 0;
  int l = 0;  // gate size, sequential_multiqubit only
  int m = 0;  // layer count, sequential_layers / brickwall only
};

Circuit build(const AnsatzSpec& spec);
std::int64_t count_gates(const AnsatzSpec& spec);
std::int64_t count_params(const AnsatzSpec& spec);

/// Real parameters of an l-qubit unitary with p input legs pinned to |0>.
std::int64_t fixed_leg_params(int l, int p);

/// Assigns independent Haar-random unitaries to every gate. Deterministic in
/// the seed.
void randomize_gates(Circuit& circuit, std::uint64_t seed);

std::string to_string(AnsatzKind kind);
AnsatzKind ansatz_kind_from_string(const std::string& name);

}  // namespace qcs
