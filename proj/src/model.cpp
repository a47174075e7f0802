#include "qcs/model.hpp"

#include <cmath>
#include <stdexcept>

#include "qcs/kernels.hpp"

namespace qcs {

void validate(const ModelParams& params) {
  if (params.L < 2 || params.L > kMaxQubits)
    throw std::invalid_argument("ModelParams: L out of range");
  if (!(params.J > 0.0)) throw std::invalid_argument("ModelParams: need J > 0");
  if (!(params.dt > 0.0))
    throw std::invalid_argument("ModelParams: need dt > 0");
}

namespace {

Eigen::Matrix2cd pauli_x() {
  Eigen::Matrix2cd m;
  m << 0, 1, 1, 0;
  return m;
}

Eigen::Matrix2cd pauli_z() {
  // sigma^z |0> = |0>
  Eigen::Matrix2cd m;
  m << 1, 0, 0, -1;
  return m;
}

// A on the first (LSB) site, B on the second.
Eigen::Matrix4cd two_site(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  Eigen::Matrix4cd m;
  for (int r1 = 0; r1 < 2; ++r1)
    for (int r0 = 0; r0 < 2; ++r0)
      for (int c1 = 0; c1 < 2; ++c1)
        for (int c0 = 0; c0 < 2; ++c0)
          m(r1 * 2 + r0, c1 * 2 + c0) = b(r1, c1) * a(r0, c0);
  return m;
}

// The single-site edge field -J (g/2 sigma^z + h/2 sigma^x).
Eigen::Matrix2cd edge_field(const ModelParams& p) {
  return -p.J * (0.5 * p.g * pauli_z() + 0.5 * p.h * pauli_x());
}

// h_{j,j+1} of the bulk.
Eigen::Matrix4cd bond_term(const ModelParams& p) {
  const Eigen::Matrix2cd sx = pauli_x();
  const Eigen::Matrix2cd sz = pauli_z();
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  Eigen::Matrix4cd m = two_site(sx, sx);
  m += 0.5 * p.g * (two_site(sz, id) + two_site(id, sz));
  m += 0.5 * p.h * (two_site(sx, id) + two_site(id, sx));
  return -p.J * m;
}

}  // namespace

std::vector<Term> LayeredTerms::all() const {
  std::vector<Term> out = odd;
  out.insert(out.end(), even.begin(), even.end());
  return out;
}

LayeredTerms local_terms(const ModelParams& p) {
  validate(p);
  const int L = p.L;
  const Eigen::Matrix4cd bond = bond_term(p);
  const Eigen::Matrix2cd edge = edge_field(p);
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  LayeredTerms terms;

  for (int j = 1; j < L; j += 2) {  // odd bonds (1,2), (3,4), ...
    Eigen::Matrix4cd m = bond;
    if (L % 2 == 0) {
      if (j == 1) m += two_site(edge, id);          // h_left
      if (j + 1 == L) m += two_site(id, edge);      // h_right
    }
    terms.odd.push_back({{j, j + 1}, m});
  }
  for (int j = 2; j < L; j += 2)  // even bonds (2,3), (4,5), ...
    terms.even.push_back({{j, j + 1}, Eigen::Matrix4cd(bond)});

  if (L % 2 == 1) {
    // No even bond touches site 1 and no odd bond touches site L.
    terms.even.insert(terms.even.begin(), Term{{1}, edge});
    terms.odd.push_back({{L}, edge});
  }
  return terms;
}

StateVector apply_hamiltonian(const LayeredTerms& terms, const StateVector& in) {
  StateVector out(in.n_qubits);
  for (const Term& term : terms.all()) {
    std::vector<int> loci0;
    for (int s : term.sites) loci0.push_back(s - 1);
    const int k = static_cast<int>(loci0.size());
    std::vector<cplx> m(term.mat.size());
    for (Eigen::Index r = 0; r < term.mat.rows(); ++r)
      for (Eigen::Index c = 0; c < term.mat.cols(); ++c)
        m[r * term.mat.cols() + c] = term.mat(r, c);
    kernels::accumulate_local(in.amp.data(), out.amp.data(), in.n_qubits,
                              loci0.data(), k, m.data());
  }
  return out;
}

double energy_expectation(const LayeredTerms& terms, const StateVector& state) {
  return std::real(overlap(state, apply_hamiltonian(terms, state)));
}

Eigen::MatrixXd dense_hamiltonian(const ModelParams& params) {
  validate(params);
  if (params.L > 14)
    throw std::length_error("dense_hamiltonian: L > 14");
  const std::uint64_t dim = 1ull << params.L;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  const LayeredTerms terms = local_terms(params);
  for (const Term& term : terms.all()) {
    const int k = static_cast<int>(term.sites.size());
    std::vector<int> loci0;
    for (int s : term.sites) loci0.push_back(s - 1);
    const std::uint64_t d = 1ull << k;
    std::vector<std::uint64_t> offs(d);
    for (std::uint64_t a = 0; a < d; ++a) {
      std::uint64_t o = 0;
      for (int t = 0; t < k; ++t)
        if (a >> t & 1) o |= 1ull << loci0[t];
      offs[a] = o;
    }
    for (std::uint64_t c = 0; c < dim >> k; ++c) {
      const std::uint64_t base = kernels::expand_complement(c, loci0.data(), k);
      for (std::uint64_t r = 0; r < d; ++r)
        for (std::uint64_t s = 0; s < d; ++s)
          h(base | offs[r], base | offs[s]) += std::real(term.mat(r, s));
    }
  }
  return h;
}

TrotterStep trotter_step(const ModelParams& params) {
  validate(params);
  const LayeredTerms terms = local_terms(params);
  TrotterStep step;
  step.dt = params.dt;
  step.circuit.n_qubits = params.L;

  auto push_layer = [&step](const std::vector<Term>& layer, double tau) {
    for (const Term& term : layer) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(term.mat);
      if (es.info() != Eigen::Success)
        throw std::runtime_error("trotter_step: eigensolver failed");
      const Eigen::VectorXd lam = es.eigenvalues();
      Eigen::VectorXcd phase(lam.size());
      for (Eigen::Index i = 0; i < lam.size(); ++i)
        phase(i) = std::exp(cplx{0.0, -lam(i) * tau});
      const Eigen::MatrixXcd u = es.eigenvectors() * phase.asDiagonal() *
                                 es.eigenvectors().adjoint();
      Gate g = Gate::from_matrix(term.sites, u);
      g.unitary_checked = true;
      step.circuit.gates.push_back(std::move(g));
    }
  };

  push_layer(terms.odd, 0.5 * params.dt);
  push_layer(terms.even, params.dt);
  push_layer(terms.odd, 0.5 * params.dt);
  step.circuit.sweep_order.resize(step.circuit.gates.size());
  for (std::size_t i = 0; i < step.circuit.sweep_order.size(); ++i)
    step.circuit.sweep_order[i] = static_cast<int>(i);
  return step;
}

ExactEvolver::ExactEvolver(const ModelParams& params)
    : params_(params), terms_(local_terms(params)) {
  dense_ = params.L <= 12;
  if (dense_) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
        dense_hamiltonian(params));
    if (es.info() != Eigen::Success)
      throw std::runtime_error("ExactEvolver: dense eigensolver failed");
    eigvecs_ = es.eigenvectors();
    eigvals_ = es.eigenvalues();
  }
}

StateVector ExactEvolver::evolve(const StateVector& initial, double t,
                                 double tol) const {
  if (initial.n_qubits != params_.L)
    throw std::length_error("ExactEvolver: state size mismatch");
  if (tol < 1e-13) throw std::invalid_argument("ExactEvolver: tol < 1e-13");
  if (t == 0.0) return initial;
  if (!dense_) return evolve_krylov(initial, t, tol);

  const std::uint64_t dim = 1ull << params_.L;
  Eigen::VectorXd re(dim), im(dim);
  for (std::uint64_t i = 0; i < dim; ++i) {
    re(i) = initial.amp[i].real();
    im(i) = initial.amp[i].imag();
  }
  const Eigen::VectorXd cr = eigvecs_.transpose() * re;
  const Eigen::VectorXd ci = eigvecs_.transpose() * im;
  Eigen::VectorXd dr(dim), di(dim);
  for (std::uint64_t i = 0; i < dim; ++i) {
    const double c = std::cos(eigvals_(i) * t);
    const double s = std::sin(eigvals_(i) * t);
    // (cr + i ci) * e^{-i lambda t}
    dr(i) = cr(i) * c + ci(i) * s;
    di(i) = ci(i) * c - cr(i) * s;
  }
  const Eigen::VectorXd outr = eigvecs_ * dr;
  const Eigen::VectorXd outi = eigvecs_ * di;
  StateVector out(params_.L);
  for (std::uint64_t i = 0; i < dim; ++i) out.amp[i] = cplx{outr(i), outi(i)};
  return out;
}

StateVector ExactEvolver::evolve_krylov(const StateVector& initial, double t,
                                        double tol) const {
  const int max_basis = 40;
  const std::uint64_t dim = 1ull << params_.L;
  StateVector psi = initial;
  double remaining = std::abs(t);
  const double sign = t >= 0.0 ? 1.0 : -1.0;
  int guard = 0;

  while (remaining > 1e-14 * std::abs(t)) {
    if (++guard > 100000)
      throw std::runtime_error(
          "ExactEvolver: Krylov stepping exceeded the iteration cap (t=" +
          std::to_string(t) + ", remaining=" + std::to_string(remaining) + ")");

    const double beta0 = norm(psi);
    std::vector<StateVector> basis;
    basis.push_back(psi);
    for (cplx& a : basis[0].amp) a /= beta0;

    std::vector<double> alpha, beta;
    int m = 0;
    bool breakdown = false;
    for (; m < max_basis; ++m) {
      StateVector w = apply_hamiltonian(terms_, basis[m]);
      // Full reorthogonalization keeps the small problem well conditioned.
      for (int j = 0; j <= m; ++j) {
        const cplx proj = overlap(basis[j], w);
        for (std::uint64_t i = 0; i < dim; ++i)
          w.amp[i] -= proj * basis[j].amp[i];
        if (j == m) alpha.push_back(std::real(proj));
      }
      const double b = norm(w);
      beta.push_back(b);
      if (b < 1e-12) {
        breakdown = true;
        ++m;
        break;
      }
      for (cplx& a : w.amp) a /= b;
      basis.push_back(std::move(w));
    }

    Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
      tri(i, i) = alpha[i];
      if (i + 1 < m) tri(i, i + 1) = tri(i + 1, i) = beta[i];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tri);

    double tau = remaining;
    Eigen::VectorXcd u;
    while (true) {
      Eigen::VectorXcd phase(m);
      for (int i = 0; i < m; ++i)
        phase(i) = std::exp(cplx{0.0, -sign * es.eigenvalues()(i) * tau});
      const Eigen::VectorXd e1 = es.eigenvectors().row(0).transpose();
      u = es.eigenvectors() * phase.asDiagonal().toDenseMatrix() *
          e1.cast<cplx>();
      const double err =
          breakdown ? 0.0 : beta[m - 1] * std::abs(u(m - 1)) * tau;
      if (err < tol * (tau / std::abs(t)) || breakdown) break;
      tau *= 0.5;
      if (tau < 1e-12 * std::abs(t))
        throw std::runtime_error(
            "ExactEvolver: Krylov substep underflow, no convergence");
    }

    StateVector next(params_.L);
    for (int j = 0; j < m; ++j) {
      const cplx coeff = beta0 * u(j);
      for (std::uint64_t i = 0; i < dim; ++i)
        next.amp[i] += coeff * basis[j].amp[i];
    }
    psi = std::move(next);
    remaining -= tau;
  }
  return psi;
}

StateVector exact_evolve(const StateVector& state, const ModelParams& params,
                         double t, double tol) {
  return ExactEvolver(params).evolve(state, t, tol);
}

}  // namespace qcs
