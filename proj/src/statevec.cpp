#include "qcs/statevec.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qcs/kernels.hpp"

namespace qcs {

Gate Gate::identity(std::vector<int> loci) {
  Gate g;
  g.loci = std::move(loci);
  const std::uint64_t d = g.dim();
  g.matrix.assign(d * d, cplx{0.0, 0.0});
  for (std::uint64_t i = 0; i < d; ++i) g.matrix[i * d + i] = 1.0;
  g.unitary_checked = true;
  return g;
}

Gate Gate::from_matrix(std::vector<int> loci, const Eigen::MatrixXcd& m) {
  Gate g;
  g.loci = std::move(loci);
  const std::uint64_t d = g.dim();
  if (m.rows() != static_cast<Eigen::Index>(d) ||
      m.cols() != static_cast<Eigen::Index>(d))
    throw std::invalid_argument("Gate::from_matrix: dimension mismatch");
  g.matrix.resize(d * d);
  for (std::uint64_t r = 0; r < d; ++r)
    for (std::uint64_t c = 0; c < d; ++c) g.matrix[r * d + c] = m(r, c);
  return g;
}

Eigen::MatrixXcd Gate::as_eigen() const {
  const std::uint64_t d = dim();
  Eigen::MatrixXcd m(d, d);
  for (std::uint64_t r = 0; r < d; ++r)
    for (std::uint64_t c = 0; c < d; ++c) m(r, c) = matrix[r * d + c];
  return m;
}

bool Gate::is_unitary(double tol) const {
  const Eigen::MatrixXcd m = as_eigen();
  const Eigen::MatrixXcd err =
      m.adjoint() * m - Eigen::MatrixXcd::Identity(m.rows(), m.cols());
  return err.cwiseAbs().maxCoeff() < tol;
}

StateVector product_state(int L, const std::string& bits) {
  if (L < 1 || L > kMaxQubits)
    throw std::length_error("product_state: L out of range [1, 24]");
  if (static_cast<int>(bits.size()) != L)
    throw std::length_error("product_state: bit-string length != L");
  std::uint64_t idx = 0;
  for (int j = 0; j < L; ++j) {
    const char b = bits[j];
    if (b != '0' && b != '1')
      throw std::invalid_argument("product_state: bits must be 0/1");
    if (b == '1') idx |= 1ull << j;  // bits[0] is site 1, the LSB
  }
  StateVector s(L);
  s.amp[idx] = 1.0;
  return s;
}

StateVector zero_state(int L) { return product_state(L, std::string(L, '0')); }

namespace {

std::vector<int> checked_loci0(const StateVector& state, const Gate& gate) {
  std::vector<int> loci0;
  loci0.reserve(gate.loci.size());
  for (int q : gate.loci) {
    if (q < 1 || q > state.n_qubits)
      throw std::out_of_range("apply_gate: locus out of range");
    loci0.push_back(q - 1);
  }
  std::vector<int> sorted = loci0;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::out_of_range("apply_gate: duplicate loci");
  if (sorted != loci0)
    throw std::invalid_argument("apply_gate: loci must be ascending");
  return loci0;
}

void check_unitary(const Gate& gate) {
  if (gate.unitary_checked) return;
  if (!gate.is_unitary(1e-10))
    throw std::invalid_argument("apply_gate: matrix is not unitary");
  gate.unitary_checked = true;
}

}  // namespace

void apply_gate(StateVector& state, const Gate& gate) {
  const auto loci0 = checked_loci0(state, gate);
  check_unitary(gate);
  kernels::apply_gate(state.amp.data(), state.n_qubits, loci0.data(),
                      gate.size(), gate.matrix.data(), /*dagger=*/false);
}

void apply_gate_dagger(StateVector& state, const Gate& gate) {
  const auto loci0 = checked_loci0(state, gate);
  check_unitary(gate);
  kernels::apply_gate(state.amp.data(), state.n_qubits, loci0.data(),
                      gate.size(), gate.matrix.data(), /*dagger=*/true);
}

// Overlap and norm reductions accumulate in extended precision: the sweep
// optimizer's absolute threshold sits at 1e-14, within a factor of ten of
// what plain double accumulation leaves over 2^L terms.
cplx overlap(const StateVector& a, const StateVector& b) {
  if (a.n_qubits != b.n_qubits)
    throw std::length_error("overlap: size mismatch");
  long double re = 0.0L, im = 0.0L;
  for (std::size_t i = 0; i < a.amp.size(); ++i) {
    const cplx p = std::conj(a.amp[i]) * b.amp[i];
    re += p.real();
    im += p.imag();
  }
  return {static_cast<double>(re), static_cast<double>(im)};
}

double norm(const StateVector& state) {
  long double acc = 0.0L;
  for (const cplx& a : state.amp) acc += std::norm(a);
  return static_cast<double>(std::sqrt(acc));
}

void normalize(StateVector& state) {
  const double n = norm(state);
  if (n <= 0.0) throw std::domain_error("normalize: zero state");
  for (cplx& a : state.amp) a /= n;
}

double fidelity(const StateVector& a, const StateVector& b) {
  return std::norm(overlap(a, b));
}

DensityMatrix reduced_density_matrix(const StateVector& state,
                                     std::vector<int> subsystem) {
  const int L = state.n_qubits;
  std::sort(subsystem.begin(), subsystem.end());
  if (subsystem.empty() || static_cast<int>(subsystem.size()) >= L)
    throw std::domain_error(
        "reduced_density_matrix: subsystem must be a nonempty proper subset");
  if (subsystem.size() > 14)
    throw std::domain_error("reduced_density_matrix: |B| > 14");
  for (int q : subsystem)
    if (q < 1 || q > L)
      throw std::out_of_range("reduced_density_matrix: site out of range");
  if (std::adjacent_find(subsystem.begin(), subsystem.end()) != subsystem.end())
    throw std::out_of_range("reduced_density_matrix: duplicate site");

  const int k = static_cast<int>(subsystem.size());
  std::vector<int> loci0(k);
  for (int t = 0; t < k; ++t) loci0[t] = subsystem[t] - 1;
  const std::uint64_t dim = 1ull << k;
  const std::uint64_t n_blocks = 1ull << (L - k);

  std::vector<std::uint64_t> offs(dim);
  for (std::uint64_t a = 0; a < dim; ++a) {
    std::uint64_t o = 0;
    for (int t = 0; t < k; ++t)
      if (a >> t & 1) o |= 1ull << loci0[t];
    offs[a] = o;
  }

  DensityMatrix rho;
  rho.subsystem = subsystem;
  rho.entries = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::uint64_t c = 0; c < n_blocks; ++c) {
    const std::uint64_t base = kernels::expand_complement(c, loci0.data(), k);
    for (std::uint64_t a = 0; a < dim; ++a) {
      const cplx va = state.amp[base | offs[a]];
      for (std::uint64_t b = 0; b < dim; ++b)
        rho.entries(a, b) += va * std::conj(state.amp[base | offs[b]]);
    }
  }
  return rho;
}

double von_neumann_entropy(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho.entries,
                                                     Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("von_neumann_entropy: eigensolver failed");
  double s = 0.0;
  for (double lam : es.eigenvalues())
    if (lam > 1e-14) s -= lam * std::log(lam);
  return s;
}

namespace {

Eigen::VectorXd schmidt_values(const StateVector& state, int cut) {
  const int L = state.n_qubits;
  if (cut < 1 || cut >= L)
    throw std::domain_error("entanglement cut must be in [1, L-1]");
  const std::uint64_t rows = 1ull << cut;       // sites 1..cut (low bits)
  const std::uint64_t cols = 1ull << (L - cut);
  Eigen::MatrixXcd m(rows, cols);
  for (std::uint64_t c = 0; c < cols; ++c)
    for (std::uint64_t r = 0; r < rows; ++r) m(r, c) = state.amp[(c << cut) | r];
  return Eigen::BDCSVD<Eigen::MatrixXcd>(m).singularValues();
}

}  // namespace

double entanglement_entropy(const StateVector& state, int cut) {
  const Eigen::VectorXd sv = schmidt_values(state, cut);
  double s = 0.0;
  for (double w : sv) {
    const double p = w * w;
    if (p > 1e-14) s -= p * std::log(p);
  }
  return s;
}

int schmidt_rank(const StateVector& state, int cut, double rel_tol) {
  const Eigen::VectorXd sv = schmidt_values(state, cut);
  if (sv.size() == 0) return 0;
  const double thresh = sv(0) * rel_tol;
  int rank = 0;
  for (double w : sv)
    if (w > thresh) ++rank;
  return rank;
}

}  // namespace qcs
