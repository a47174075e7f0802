#pragma once

#include <Eigen/Dense>
#include <vector>

#include "qcs/ansatz.hpp"
#include "qcs/statevec.hpp"

namespace qcs {

/// Right-canonical MPS factorization produced by successive SVDs from the
/// right boundary. site_tensors[i-1] holds A^{[i]} as a chi_{i-1} x
/// (2*chi_i) matrix with column index (sigma_i + 2*lambda_i); the boundary
/// tensor B is chi_{L-l} x 2^l with the physical index of site L-l+k on
/// bit k-1. Bonds are capped at 2^{l-1}, so the factorization is exact
/// whenever l >= floor(L/2)+1 and a truncated approximation below that.
struct MpsFactorization {
  int L = 0;
  int l = 0;
  std::vector<Eigen::MatrixXcd> site_tensors;
  Eigen::MatrixXcd boundary_tensor;
  std::vector<int> bond_dims;  // chi_i for i = 1..L-l
};

MpsFactorization state_to_mps(const StateVector& state, int l);

/// Contracts the factorization back into amplitudes.
StateVector mps_reconstruct(const MpsFactorization& mps);

/// Embeds the factorization into a single-layer sequential circuit of
/// l-qubit gates; missing unitary columns are completed orthonormally.
Circuit mps_to_circuit(const MpsFactorization& mps);

Circuit state_to_circuit(const StateVector& state, int l);

/// Single-layer sequential circuit C with gate size floor((L+1)/2)+1 and
/// |psi2> = C |psi1>, built from the two exact encodings (psi1 decomposed
/// from the left, psi2 from the right) with same-window gates fused.
Circuit transition_circuit(const StateVector& psi1, const StateVector& psi2);

}  // namespace qcs
