#pragma once

#include <Eigen/Dense>
#include <vector>

#include "qcs/ansatz.hpp"
#include "qcs/statevec.hpp"

namespace qcs {

/// Quantum Ising chain in a transverse field g and longitudinal field h:
///   H = sum_j h_{j,j+1} + h_left + h_right
/// with ferromagnetic xx coupling J > 0 and the field terms split half-half
/// between the two sites of each bond. dt is the Trotter time step in 1/J.
struct ModelParams {
  int L = 0;
  double J = 1.0;
  double g = 0.0;
  double h = 0.0;
  double dt = 0.01;
};

void validate(const ModelParams& params);

/// A Hermitian term acting on one or two sites (1-based, ascending; the
/// first site is the least significant local bit).
struct Term {
  std::vector<int> sites;
  Eigen::MatrixXcd mat;
};

/// H split into the two Trotter layers. For even L both edge fields are
/// folded into the first/last odd-layer bond; for odd L the left edge lands
/// in the even layer and the right edge in the odd layer, each as a
/// single-site term since no bond of that layer covers the edge site.
struct LayeredTerms {
  std::vector<Term> odd;
  std::vector<Term> even;
  std::vector<Term> all() const;
};

LayeredTerms local_terms(const ModelParams& params);

/// out = H |in>.
StateVector apply_hamiltonian(const LayeredTerms& terms, const StateVector& in);
double energy_expectation(const LayeredTerms& terms, const StateVector& state);

/// Dense H as a real symmetric matrix. Guarded to L <= 14.
Eigen::MatrixXd dense_hamiltonian(const ModelParams& params);

/// Second-order Trotter step V(dt) = e^{-iH_odd dt/2} e^{-iH_even dt}
/// e^{-iH_odd dt/2} as a gate circuit.
struct TrotterStep {
  Circuit circuit;
  double dt = 0.0;
};

TrotterStep trotter_step(const ModelParams& params);

/// Reference propagator for e^{-iHt}: cached dense eigen-decomposition for
/// L <= 12, Lanczos-Krylov stepping with adaptive substeps above that.
class ExactEvolver {
 public:
  explicit ExactEvolver(const ModelParams& params);

  StateVector evolve(const StateVector& initial, double t,
                     double tol = 1e-12) const;

  const LayeredTerms& terms() const { return terms_; }

 private:
  StateVector evolve_krylov(const StateVector& initial, double t,
                            double tol) const;

  ModelParams params_;
  LayeredTerms terms_;
  bool dense_ = false;
  Eigen::MatrixXd eigvecs_;
  Eigen::VectorXd eigvals_;
};

StateVector exact_evolve(const StateVector& state, const ModelParams& params,
                         double t, double tol = 1e-12);

}  // namespace qcs
