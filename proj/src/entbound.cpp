#include "qcs/entbound.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

namespace qcs {
namespace {

// Dinic max-flow on an undirected unit-capacity graph.
class FlowGraph {
 public:
  explicit FlowGraph(int n) : adj_(n) {}

  void add_undirected(int a, int b, int cap) {
    adj_[a].push_back({b, static_cast<int>(adj_[b].size()), cap});
    adj_[b].push_back({a, static_cast<int>(adj_[a].size()) - 1, cap});
  }

  int max_flow(int s, int t) {
    int flow = 0;
    while (bfs(s, t)) {
      iter_.assign(adj_.size(), 0);
      while (int pushed = dfs(s, t, std::numeric_limits<int>::max()))
        flow += pushed;
    }
    return flow;
  }

  // After max_flow: the source side of the min cut, via residual arcs.
  std::vector<char> source_side(int s) const {
    std::vector<char> seen(adj_.size(), 0);
    std::queue<int> q;
    seen[s] = 1;
    q.push(s);
    while (!q.empty()) {
      const int v = q.front();
      q.pop();
      for (const Arc& a : adj_[v])
        if (a.cap > 0 && !seen[a.to]) {
          seen[a.to] = 1;
          q.push(a.to);
        }
    }
    return seen;
  }

 private:
  struct Arc {
    int to, rev, cap;
  };

  bool bfs(int s, int t) {
    level_.assign(adj_.size(), -1);
    std::queue<int> q;
    level_[s] = 0;
    q.push(s);
    while (!q.empty()) {
      const int v = q.front();
      q.pop();
      for (const Arc& a : adj_[v])
        if (a.cap > 0 && level_[a.to] < 0) {
          level_[a.to] = level_[v] + 1;
          q.push(a.to);
        }
    }
    return level_[t] >= 0;
  }

  int dfs(int v, int t, int limit) {
    if (v == t) return limit;
    for (int& i = iter_[v]; i < static_cast<int>(adj_[v].size()); ++i) {
      Arc& a = adj_[v][i];
      if (a.cap <= 0 || level_[a.to] != level_[v] + 1) continue;
      const int pushed = dfs(a.to, t, std::min(limit, a.cap));
      if (pushed > 0) {
        a.cap -= pushed;
        adj_[a.to][a.rev].cap += pushed;
        return pushed;
      }
    }
    return 0;
  }

  std::vector<std::vector<Arc>> adj_;
  std::vector<int> level_;
  std::vector<int> iter_;
};

CutReport bound_for(const CircuitGraph& graph, const std::vector<char>& in_a) {
  // Node layout: 0 = source, 1 = sink, 2+i = gate i. Output terminals merge
  // into source or sink by subsystem membership; capacity-0 input wires are
  // left out entirely.
  const auto node_of = [&](int gate, int qubit) {
    if (gate >= 0) return 2 + gate;
    return in_a[qubit - 1] ? 0 : 1;
  };
  FlowGraph flow(2 + graph.n_gates);
  for (const WireEdge& e : graph.edges)
    if (e.capacity > 0)
      flow.add_undirected(node_of(e.from_gate, e.qubit),
                          node_of(e.to_gate, e.qubit), e.capacity);

  CutReport report;
  report.cut_bits = flow.max_flow(0, 1);
  report.bound_nats = report.cut_bits * std::log(2.0);
  const std::vector<char> side = flow.source_side(0);
  for (const WireEdge& e : graph.edges)
    if (e.capacity > 0 &&
        side[node_of(e.from_gate, e.qubit)] != side[node_of(e.to_gate, e.qubit)])
      report.saturating_path.push_back(e);
  return report;
}

}  // namespace

CircuitGraph build_graph(const Circuit& circuit) {
  CircuitGraph graph;
  graph.n_qubits = circuit.n_qubits;
  graph.n_gates = circuit.size();
  std::vector<int> last(circuit.n_qubits, -1);  // latest gate on each qubit
  for (int i = 0; i < circuit.size(); ++i)
    for (int q : circuit.gates[i].loci) {
      graph.edges.push_back({q, last[q - 1], i, last[q - 1] < 0 ? 0 : 1});
      last[q - 1] = i;
    }
  for (int q = 1; q <= circuit.n_qubits; ++q)
    graph.edges.push_back({q, last[q - 1], -1, last[q - 1] < 0 ? 0 : 1});
  return graph;
}

CutReport entropy_bound(const Circuit& circuit, int cut_position) {
  if (cut_position < 1 || cut_position >= circuit.n_qubits)
    throw std::out_of_range("entropy_bound: need 1 <= k <= L-1");
  std::vector<int> subsystem(cut_position);
  for (int q = 1; q <= cut_position; ++q) subsystem[q - 1] = q;
  return entropy_bound(circuit, subsystem);
}

CutReport entropy_bound(const Circuit& circuit,
                        const std::vector<int>& subsystem) {
  std::vector<char> in_a(circuit.n_qubits, 0);
  for (int q : subsystem) {
    if (q < 1 || q > circuit.n_qubits || in_a[q - 1])
      throw std::out_of_range("entropy_bound: bad subsystem");
    in_a[q - 1] = 1;
  }
  const auto size = static_cast<int>(subsystem.size());
  if (size == 0 || size == circuit.n_qubits)
    throw std::domain_error("entropy_bound: subsystem must be proper");
  return bound_for(build_graph(circuit), in_a);
}

VolumeLawReport volume_law_check(const Circuit& circuit) {
  const CircuitGraph graph = build_graph(circuit);
  VolumeLawReport report;
  report.volume_law = true;
  std::vector<char> in_a(circuit.n_qubits, 0);
  for (int k = 1; k < circuit.n_qubits; ++k) {
    in_a[k - 1] = 1;
    report.per_cut.push_back(bound_for(graph, in_a));
    if (report.per_cut.back().cut_bits < std::min(k, circuit.n_qubits - k))
      report.volume_law = false;
  }
  return report;
}

}  // namespace qcs
