#pragma once

#include <vector>

#include "qcs/ansatz.hpp"

namespace qcs {

/// One qubit-wire segment of the circuit's tensor-network graph. Gates are
/// referenced by index; -1 stands for the circuit boundary (the |0> input
/// when it is the upstream end, the output terminal downstream). Input
/// segments carry capacity 0, every other wire 1 bit.
struct WireEdge {
  int qubit = 0;
  int from_gate = -1;
  int to_gate = -1;
  int capacity = 1;
};

struct CircuitGraph {
  int n_qubits = 0;
  int n_gates = 0;
  std::vector<WireEdge> edges;
};

CircuitGraph build_graph(const Circuit& circuit);

/// Min-cut certificate for one bipartition: any state the circuit prepares
/// has entanglement entropy at most cut_bits * ln 2 across it.
struct CutReport {
  int cut_bits = 0;
  double bound_nats = 0.0;
  std::vector<WireEdge> saturating_path;  // the severed wires of one min cut
};

/// Bound across {1..k | k+1..L}.
CutReport entropy_bound(const Circuit& circuit, int cut_position);

/// Bound for an arbitrary subsystem (1-based sites, nonempty proper subset).
CutReport entropy_bound(const Circuit& circuit,
                        const std::vector<int>& subsystem);

/// True iff every contiguous cut k has cut_bits >= min(k, L-k), i.e. the
/// architecture does not structurally cap the entanglement below the
/// maximum a state on L qubits can carry. Necessary, not sufficient.
struct VolumeLawReport {
  bool volume_law = false;
  std::vector<CutReport> per_cut;  // per_cut[k-1] for k = 1..L-1
};

VolumeLawReport volume_law_check(const Circuit& circuit);

}  // namespace qcs
