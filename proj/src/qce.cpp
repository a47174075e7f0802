#include "qcs/qce.hpp"

#include <cmath>
#include <stdexcept>

#include "qcs/kernels.hpp"

namespace qcs {

void validate(const OptimizerConfig& opts) {
  if (opts.w_min < 1 || opts.w_min > opts.w_max)
    throw std::invalid_argument("OptimizerConfig: need 1 <= w_min <= w_max");
  if (!(opts.eps_a > 0.0) || !(opts.eps_r > 0.0))
    throw std::invalid_argument("OptimizerConfig: need eps_a, eps_r > 0");
}

Environment environment(const StateVector& target, const Circuit& circuit,
                        int gate_index) {
  const int n = circuit.size();
  if (gate_index < 0 || gate_index >= n)
    throw std::out_of_range("environment: gate index out of range");

  StateVector ket = zero_state(circuit.n_qubits);
  for (int j = 0; j < gate_index; ++j) apply_gate(ket, circuit.gates[j]);
  StateVector bra = target;
  for (int j = n - 1; j > gate_index; --j)
    apply_gate_dagger(bra, circuit.gates[j]);

  const Gate& g = circuit.gates[gate_index];
  std::vector<int> loci0;
  for (int q : g.loci) loci0.push_back(q - 1);
  const std::uint64_t dim = g.dim();
  std::vector<cplx> env(dim * dim);
  kernels::environment_serial(bra.amp.data(), ket.amp.data(), circuit.n_qubits,
                              loci0.data(), g.size(), env.data());
  Environment out;
  out.loci = g.loci;
  out.matrix.resize(dim, dim);
  for (std::uint64_t r = 0; r < dim; ++r)
    for (std::uint64_t c = 0; c < dim; ++c) out.matrix(r, c) = env[r * dim + c];
  return out;
}

Gate svd_update(const Environment& env) {
  if (!env.matrix.allFinite())
    throw std::runtime_error("svd_update: environment is not finite");
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(
      env.matrix, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Gate g = Gate::from_matrix(env.loci, svd.matrixU() * svd.matrixV().adjoint());
  g.unitary_checked = true;
  return g;
}

SweepOptimizer::SweepOptimizer(Circuit circuit, StateVector target)
    : circuit_(std::move(circuit)),
      target_(std::move(target)),
      ket_(zero_state(circuit_.n_qubits)),
      bra_(target_),
      bra_from_(circuit_.size()) {
  if (target_.n_qubits != circuit_.n_qubits)
    throw std::length_error("SweepOptimizer: size mismatch");
}

void SweepOptimizer::move_to(int i) {
  while (ket_applied_ > i) apply_gate_dagger(ket_, circuit_.gates[--ket_applied_]);
  while (ket_applied_ < i) apply_gate(ket_, circuit_.gates[ket_applied_++]);
  while (bra_from_ > i + 1) apply_gate_dagger(bra_, circuit_.gates[--bra_from_]);
  while (bra_from_ < i + 1) apply_gate(bra_, circuit_.gates[bra_from_++]);
}

double SweepOptimizer::update_gate(int i) {
  move_to(i);
  Gate& g = circuit_.gates[i];
  std::vector<int> loci0;
  for (int q : g.loci) loci0.push_back(q - 1);
  const std::uint64_t dim = g.dim();
  std::vector<cplx> envbuf(dim * dim);
  kernels::environment_serial(bra_.amp.data(), ket_.amp.data(),
                              circuit_.n_qubits, loci0.data(), g.size(),
                              envbuf.data());
  Eigen::MatrixXcd f(dim, dim);
  for (std::uint64_t r = 0; r < dim; ++r)
    for (std::uint64_t c = 0; c < dim; ++c) f(r, c) = envbuf[r * dim + c];
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(
      f, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::MatrixXcd u = svd.matrixU() * svd.matrixV().adjoint();
  for (std::uint64_t r = 0; r < dim; ++r)
    for (std::uint64_t c = 0; c < dim; ++c) g.matrix[r * dim + c] = u(r, c);
  g.unitary_checked = true;
  return svd.singularValues().sum();
}

void SweepOptimizer::rebuild_frontiers() {
  ket_ = zero_state(circuit_.n_qubits);
  for (int j = 0; j < ket_applied_; ++j) apply_gate(ket_, circuit_.gates[j]);
  bra_ = target_;
  for (int j = circuit_.size() - 1; j >= bra_from_; --j)
    apply_gate_dagger(bra_, circuit_.gates[j]);
}

double SweepOptimizer::run_sweep() {
  // The frontier states pick up ~1e-15 of norm/orthogonality drift per gate
  // application; keep it from compounding across thousands of sweeps, or
  // the absolute termination threshold becomes unreachable.
  if (sweeps_run_ > 0 && sweeps_run_ % 64 == 0) rebuild_frontiers();
  const auto& order = circuit_.sweep_order;
  for (int idx : order) update_gate(idx);
  for (auto it = order.rbegin(); it != order.rend(); ++it) update_gate(*it);
  normalize(ket_);
  normalize(bra_);
  ++sweeps_run_;
  // Report |<target|C|0>| from a direct overlap rather than the singular
  // value sum: the SVD readout alone carries ~dim*eps of noise.
  if (order.empty()) return std::abs(overlap(bra_, ket_));
  const int last = order.front();
  move_to(last);
  StateVector st = ket_;
  apply_gate(st, circuit_.gates[last]);
  return std::abs(overlap(bra_, st));
}

double sweep(Circuit& circuit, const StateVector& target) {
  SweepOptimizer opt(circuit, target);
  const double objective = opt.run_sweep();
  circuit = opt.take_circuit();
  return objective;
}

OptResult fit_state(const Circuit& initial, const StateVector& target,
                    const OptimizerConfig& opts) {
  validate(opts);
  StateVector t = target;
  const double n = norm(t);
  if (std::abs(n - 1.0) > 1e-8)
    throw std::invalid_argument("fit_state: target is not normalized");
  for (cplx& a : t.amp) a /= n;

  SweepOptimizer opt(initial, std::move(t));
  OptResult result;
  double prev = -1.0;
  for (int w = 1; w <= opts.w_max; ++w) {
    const double f = opt.run_sweep();
    result.overlap_trace.push_back(f);
    result.sweeps_used = w;
    const bool abs_ok = std::abs(1.0 - f) < opts.eps_a;
    const bool rel_ok = w > 1 && std::abs(1.0 - f / prev) < opts.eps_r;
    if (w >= opts.w_min && abs_ok && rel_ok) {
      result.terminated_by = Termination::absolute;
      break;
    }
    result.terminated_by = Termination::cap;
    prev = f;
  }
  result.circuit = opt.take_circuit();
  return result;
}

std::vector<ChainStep> evolve_chain(const ModelParams& params,
                                    const AnsatzSpec& spec, double t_max,
                                    const OptimizerConfig& opts,
                                    const ChainCallback& on_step) {
  validate(params);
  validate(opts);
  if (t_max < 0.0) throw std::invalid_argument("evolve_chain: t_max < 0");
  const double steps_real = t_max / params.dt;
  const int n_steps = static_cast<int>(std::llround(steps_real));
  if (std::abs(steps_real - n_steps) > 1e-9)
    throw std::invalid_argument("evolve_chain: t_max must be a multiple of dt");

  Circuit circuit = build(spec);
  const TrotterStep step = trotter_step(params);
  StateVector state = zero_state(params.L);

  std::vector<ChainStep> series;
  series.push_back({0.0, 1.0, 0, Termination::absolute, {}, circuit});
  if (on_step && !on_step(series.back(), state)) return series;

  for (int ns = 1; ns <= n_steps; ++ns) {
    StateVector target = state;
    apply_circuit(target, step.circuit);
    const double nrm = norm(target);
    if (std::abs(nrm - 1.0) > 1e-8)
      throw std::runtime_error("evolve_chain: target drifted off unit norm");
    for (cplx& a : target.amp) a /= nrm;

    OptResult fit = fit_state(circuit, target, opts);
    circuit = std::move(fit.circuit);
    state = run_circuit(circuit);

    ChainStep record;
    record.t = ns * params.dt;
    record.overlap_I = fit.overlap_trace.back();
    record.sweeps_used = fit.sweeps_used;
    record.terminated_by = fit.terminated_by;
    record.overlap_trace = std::move(fit.overlap_trace);
    record.circuit = circuit;
    series.push_back(std::move(record));
    if (on_step && !on_step(series.back(), state)) break;
  }
  return series;
}

}  // namespace qcs
