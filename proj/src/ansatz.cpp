#include "qcs/ansatz.hpp"

#include <numeric>
#include <random>
#include <stdexcept>

namespace qcs {

StateVector run_circuit(const Circuit& circuit) {
  StateVector s = zero_state(circuit.n_qubits);
  apply_circuit(s, circuit);
  return s;
}

void apply_circuit(StateVector& state, const Circuit& circuit) {
  for (const Gate& g : circuit.gates) apply_gate(state, g);
}

void apply_circuit_dagger(StateVector& state, const Circuit& circuit) {
  for (auto it = circuit.gates.rbegin(); it != circuit.gates.rend(); ++it)
    apply_gate_dagger(state, *it);
}

namespace {

void validate(const AnsatzSpec& spec) {
  if (spec.L < 2 || spec.L > kMaxQubits)
    throw std::invalid_argument("AnsatzSpec: L out of range");
  switch (spec.kind) {
    case AnsatzKind::sequential_multiqubit:
      if (spec.l < 2 || spec.l > spec.L || spec.l > 12)
        throw std::invalid_argument("AnsatzSpec: need 2 <= l <= min(L, 12)");
      break;
    case AnsatzKind::sequential_layers:
    case AnsatzKind::brickwall:
      if (spec.m < 1) throw std::invalid_argument("AnsatzSpec: need m >= 1");
      break;
    case AnsatzKind::diamond:
      break;
  }
}

std::vector<int> window(int first, int size) {
  std::vector<int> loci(size);
  std::iota(loci.begin(), loci.end(), first);
  return loci;
}

}  // namespace

Circuit build(const AnsatzSpec& spec) {
  validate(spec);
  const int L = spec.L;
  Circuit c;
  c.n_qubits = L;
  switch (spec.kind) {
    case AnsatzKind::sequential_multiqubit:
      for (int i = 1; i + spec.l - 1 <= L; ++i)
        c.gates.push_back(Gate::identity(window(i, spec.l)));
      break;
    case AnsatzKind::sequential_layers:
      for (int layer = 0; layer < spec.m; ++layer)
        for (int j = 1; j < L; ++j)
          c.gates.push_back(Gate::identity({j, j + 1}));
      break;
    case AnsatzKind::brickwall:
      // One layer = odd-bond sub-layer followed by even-bond sub-layer, so
      // an m-layer brickwall holds m*(L-1) gates.
      for (int layer = 0; layer < spec.m; ++layer) {
        for (int j = 1; j < L; j += 2)
          c.gates.push_back(Gate::identity({j, j + 1}));
        for (int j = 2; j < L; j += 2)
          c.gates.push_back(Gate::identity({j, j + 1}));
      }
      break;
    case AnsatzKind::diamond: {
      // Each l-qubit gate of the exact single-layer circuit (l = floor(L/2)+1)
      // becomes a sequential run of two-qubit gates descending through its
      // window toward the window's first site. The descending orientation is
      // what produces the diamond spacetime pattern whose every cut severs
      // min(k, L-k) wires; ascending runs cap the center cut below that.
      const int l0 = L / 2 + 1;
      for (int i = 1; i + l0 - 1 <= L; ++i)
        for (int r = l0 - 2; r >= 0; --r)
          c.gates.push_back(Gate::identity({i + r, i + r + 1}));
      break;
    }
  }
  c.sweep_order.resize(c.gates.size());
  std::iota(c.sweep_order.begin(), c.sweep_order.end(), 0);
  return c;
}

std::int64_t count_gates(const AnsatzSpec& spec) {
  validate(spec);
  const std::int64_t L = spec.L;
  switch (spec.kind) {
    case AnsatzKind::sequential_multiqubit:
      return L - spec.l + 1;
    case AnsatzKind::sequential_layers:
    case AnsatzKind::brickwall:
      return static_cast<std::int64_t>(spec.m) * (L - 1);
    case AnsatzKind::diamond:
      return (L % 2 == 1) ? (L * L - 1) / 4 : L * L / 4;
  }
  return 0;
}

std::int64_t count_params(const AnsatzSpec& spec) {
  validate(spec);
  const std::int64_t L = spec.L;
  switch (spec.kind) {
    case AnsatzKind::sequential_multiqubit: {
      const int l = spec.l;
      return (std::int64_t{1} << (l + 1)) - 1 +
             3 * (L - l) * (std::int64_t{1} << (2 * l - 2));
    }
    case AnsatzKind::sequential_layers:
    case AnsatzKind::brickwall:
      // No closed-form leg reduction is defined for these; report the raw
      // 16 real parameters per U(4) gate.
      return count_gates(spec) * 16;
    case AnsatzKind::diamond: {
      const std::int64_t half = L / 2;
      return -1 - 4 * L + 16 * half * (L - half);
    }
  }
  return 0;
}

std::int64_t fixed_leg_params(int l, int p) {
  if (l < 1 || p < 0 || p >= l)
    throw std::invalid_argument("fixed_leg_params: need l >= 1, 0 <= p < l");
  return (std::int64_t{1} << (2 * l - 2 * p)) * ((std::int64_t{1} << (p + 1)) - 1);
}

void randomize_gates(Circuit& circuit, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (Gate& g : circuit.gates) {
    const Eigen::Index d = static_cast<Eigen::Index>(g.dim());
    Eigen::MatrixXcd a(d, d);
    for (Eigen::Index r = 0; r < d; ++r)
      for (Eigen::Index col = 0; col < d; ++col)
        a(r, col) = cplx{gauss(rng), gauss(rng)};
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
    Eigen::MatrixXcd q = qr.householderQ();
    const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index col = 0; col < d; ++col) {
      const cplx diag = r(col, col);
      if (std::abs(diag) > 0.0) q.col(col) *= diag / std::abs(diag);
    }
    g = Gate::from_matrix(g.loci, q);
    g.unitary_checked = true;
  }
}

std::string to_string(AnsatzKind kind) {
  switch (kind) {
    case AnsatzKind::sequential_multiqubit: return "sequential_multiqubit";
    case AnsatzKind::sequential_layers: return "sequential_layers";
    case AnsatzKind::brickwall: return "brickwall";
    case AnsatzKind::diamond: return "diamond";
  }
  return "?";
}

AnsatzKind ansatz_kind_from_string(const std::string& name) {
  if (name == "sequential_multiqubit") return AnsatzKind::sequential_multiqubit;
  if (name == "sequential_layers") return AnsatzKind::sequential_layers;
  if (name == "brickwall") return AnsatzKind::brickwall;
  if (name == "diamond") return AnsatzKind::diamond;
  throw std::invalid_argument("unknown ansatz kind: " + name);
}

}  // namespace qcs
