#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "qcs/ansatz.hpp"
#include "qcs/model.hpp"
#include "qcs/statevec.hpp"

namespace qcs {

/// Sweep-count bounds and convergence thresholds of the gate-by-gate
/// optimizer. A run stops once w >= w_min, |1 - F_w| < eps_a and
/// |1 - F_w/F_{w-1}| < eps_r all hold, or at w = w_max.
struct OptimizerConfig {
  int w_min = 100;
  int w_max = 10000;
  double eps_a = 1e-14;
  double eps_r = 1e-4;
};

void validate(const OptimizerConfig& opts);

enum class Termination { absolute, relative, cap };

struct OptResult {
  Circuit circuit;
  std::vector<double> overlap_trace;  // F after each sweep, non-decreasing
  int sweeps_used = 0;
  Termination terminated_by = Termination::cap;
};

/// The partial contraction of bra and ket over everything outside one
/// gate's loci: F_i = Tr_complement |Psi_i><Phi_i|.
struct Environment {
  std::vector<int> loci;
  Eigen::MatrixXcd matrix;
};

/// Environment of gates[gate_index] for maximizing Re<0|C^dag|target>.
/// Rebuilds the bra/ket states from scratch; the sweep driver below keeps
/// incremental frontiers instead.
Environment environment(const StateVector& target, const Circuit& circuit,
                        int gate_index);

/// Locally optimal gate U with U^dag = Y X^dag from the SVD F = X D Y^dag;
/// the post-update objective Re Tr[F U^dag] equals the singular value sum.
Gate svd_update(const Environment& env);

/// One forward-plus-backward pass over sweep_order, updating every gate in
/// place. Returns |<target|C|0>| after the sweep.
double sweep(Circuit& circuit, const StateVector& target);

/// Incremental-frontier sweep driver: moves one gate per optimizer step,
/// never rebuilding the bra/ket states.
class SweepOptimizer {
 public:
  SweepOptimizer(Circuit circuit, StateVector target);

  double run_sweep();
  const Circuit& circuit() const { return circuit_; }
  Circuit take_circuit() { return std::move(circuit_); }

 private:
  void move_to(int i);
  double update_gate(int i);
  void rebuild_frontiers();

  Circuit circuit_;
  StateVector target_;
  StateVector ket_;  // gates [0, ket_applied_) applied to |0...0>
  StateVector bra_;  // gates [bra_from_, N) applied daggered to target
  int ket_applied_ = 0;
  int bra_from_ = 0;
  int sweeps_run_ = 0;
};

/// Sweeps until the termination condition holds. The target must be
/// normalized within 1e-8; it is renormalized exactly before fitting.
OptResult fit_state(const Circuit& initial, const StateVector& target,
                    const OptimizerConfig& opts);

struct ChainStep {
  double t = 0.0;
  double overlap_I = 1.0;  // I(t) = |<0|C_{t-dt}^dag V^dag C_t|0>|
  int sweeps_used = 0;
  Termination terminated_by = Termination::absolute;
  std::vector<double> overlap_trace;
  Circuit circuit;
};

using ChainCallback =
    std::function<bool(const ChainStep&, const StateVector& circuit_state)>;

/// Chained time evolution: at each Trotter step the previous optimized
/// circuit is evolved by V(dt), refit warm-started from itself, and
/// recorded. The callback may return false to stop early.
std::vector<ChainStep> evolve_chain(const ModelParams& params,
                                    const AnsatzSpec& spec, double t_max,
                                    const OptimizerConfig& opts,
                                    const ChainCallback& on_step = {});

}  // namespace qcs
