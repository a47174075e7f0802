#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace qcs {

using cplx = std::complex<double>;

inline constexpr int kMaxQubits = 24;  // 2^24 complex doubles ~ 256 MB

/// A unitary attached to an ordered set of qubit loci (1-based sites,
/// strictly ascending). The matrix is row-major with row = output local
/// index; bit t of a local index belongs to loci[t], so the first locus is
/// the least significant bit.
struct Gate {
  std::vector<int> loci;
  std::vector<cplx> matrix;  // 2^k x 2^k, row-major

  // Set by constructors that guarantee unitarity; apply_gate validates
  // once when this is false and then flips it.
  mutable bool unitary_checked = false;

  int size() const { return static_cast<int>(loci.size()); }
  std::uint64_t dim() const { return 1ull << loci.size(); }

  static Gate identity(std::vector<int> loci);
  static Gate from_matrix(std::vector<int> loci, const Eigen::MatrixXcd& m);
  Eigen::MatrixXcd as_eigen() const;
  bool is_unitary(double tol) const;
};

/// Dense amplitudes of an L-qubit pure state; index bit (j-1) encodes the
/// local state of site j (site 1 = least significant bit).
struct StateVector {
  int n_qubits = 0;
  std::vector<cplx> amp;

  StateVector() = default;
  explicit StateVector(int L) : n_qubits(L), amp(1ull << L, cplx{0.0, 0.0}) {}
};

StateVector product_state(int L, const std::string& bits);
StateVector zero_state(int L);

void apply_gate(StateVector& state, const Gate& gate);
void apply_gate_dagger(StateVector& state, const Gate& gate);

cplx overlap(const StateVector& a, const StateVector& b);  // <a|b>
double norm(const StateVector& state);
void normalize(StateVector& state);
double fidelity(const StateVector& a, const StateVector& b);  // |<a|b>|^2

struct DensityMatrix {
  std::vector<int> subsystem;  // 1-based sites, ascending
  Eigen::MatrixXcd entries;
};

DensityMatrix reduced_density_matrix(const StateVector& state,
                                     std::vector<int> subsystem);
double von_neumann_entropy(const DensityMatrix& rho);

/// Entropy of the bipartition {1..cut | cut+1..L}, in nats. Contiguous cuts
/// reduce to an SVD of the reshaped amplitude matrix.
double entanglement_entropy(const StateVector& state, int cut);

/// Schmidt rank across the contiguous cut, counting singular values above
/// rel_tol * largest.
int schmidt_rank(const StateVector& state, int cut, double rel_tol = 1e-10);

}  // namespace qcs
