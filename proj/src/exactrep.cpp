#include "qcs/exactrep.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qcs {
namespace {

int bond_bits(int chi) {
  int w = 0;
  while ((1 << w) < chi) ++w;
  return w;
}

std::uint64_t bit_reverse(std::uint64_t x, int n) {
  std::uint64_t r = 0;
  for (int b = 0; b < n; ++b)
    if (x >> b & 1) r |= 1ull << (n - 1 - b);
  return r;
}

// Extends a set of orthonormal columns to a full unitary by Gram-Schmidt
// over the standard basis (two passes for stability).
Eigen::MatrixXcd complete_unitary(const Eigen::MatrixXcd& cols) {
  const Eigen::Index d = cols.rows();
  Eigen::MatrixXcd u(d, d);
  u.leftCols(cols.cols()) = cols;
  Eigen::Index have = cols.cols();
  for (Eigen::Index j = 0; j < d && have < d; ++j) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Unit(d, j);
    for (int pass = 0; pass < 2; ++pass)
      v -= u.leftCols(have) * (u.leftCols(have).adjoint() * v);
    const double nv = v.norm();
    if (nv > 1e-8) u.col(have++) = v / nv;
  }
  if (have < d)
    throw std::runtime_error("complete_unitary: basis completion failed");
  return u;
}

// A gate on the contiguous sites lo .. lo + k - 1, not yet padded to any
// window size.
struct RawGate {
  int lo = 1;
  Eigen::MatrixXcd mat;

  int size() const {
    int k = 0;
    while ((1ll << k) < mat.rows()) ++k;
    return k;
  }
  int hi() const { return lo + size() - 1; }
};

// The gate sequence realizing the factorization: gate i consumes the bond
// lambda_{i-1} (sites i .. i+w_{i-1}-1) and emits sigma_i on site i plus
// lambda_i on sites i+1 .. i+w_i; the boundary gate maps lambda_{L-l} to
// the last l physical sites. Applied in list order to |0...0>.
std::vector<RawGate> raw_gates(const MpsFactorization& mps) {
  const int n = mps.L - mps.l;
  std::vector<RawGate> out;
  int w_prev = 0;
  for (int i = 1; i <= n; ++i) {
    const auto& a = mps.site_tensors[i - 1];  // chi_{i-1} x 2 chi_i
    const int w = bond_bits(mps.bond_dims[i - 1]);
    const int k = 1 + std::max(w, std::max(w_prev - 1, 0));
    Eigen::MatrixXcd cols = Eigen::MatrixXcd::Zero(1ll << k, a.rows());
    for (Eigen::Index lam = 0; lam < a.rows(); ++lam)
      for (Eigen::Index rc = 0; rc < a.cols(); ++rc)
        cols(rc, lam) = a(lam, rc);
    out.push_back({i, complete_unitary(cols)});
    w_prev = w;
  }
  out.push_back(
      {mps.L - mps.l + 1, complete_unitary(mps.boundary_tensor.transpose())});
  return out;
}

// Pads a k-qubit matrix acting on local bits [offset, offset + k) with
// identity on the remaining bits of an l-qubit window.
Eigen::MatrixXcd embed_at(const Eigen::MatrixXcd& u, int offset, int l) {
  const int k = [&] {
    int b = 0;
    while ((1ll << b) < u.rows()) ++b;
    return b;
  }();
  const std::uint64_t dim = 1ull << l;
  const std::uint64_t mask = ((1ull << k) - 1) << offset;
  Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::uint64_t r = 0; r < dim; ++r) {
    const std::uint64_t rest = r & ~mask;
    const std::uint64_t rloc = (r & mask) >> offset;
    for (std::uint64_t cloc = 0; cloc < (1ull << k); ++cloc)
      e(r, rest | (cloc << offset)) = u(rloc, cloc);
  }
  return e;
}

Gate window_gate(int lo, int l, const Eigen::MatrixXcd& mat) {
  std::vector<int> loci(l);
  std::iota(loci.begin(), loci.end(), lo);
  Gate g = Gate::from_matrix(std::move(loci), mat);
  g.unitary_checked = true;
  return g;
}

void require_normalized(const StateVector& state, const char* who) {
  if (std::abs(norm(state) - 1.0) > 1e-8)
    throw std::invalid_argument(std::string(who) + ": state is not normalized");
}

}  // namespace

MpsFactorization state_to_mps(const StateVector& state, int l) {
  const int L = state.n_qubits;
  if (l < 2 || l > L)
    throw std::invalid_argument("state_to_mps: need 2 <= l <= L");
  require_normalized(state, "state_to_mps");

  MpsFactorization mps;
  mps.L = L;
  mps.l = l;
  const int n = L - l;
  const int cap = 1 << (l - 1);
  if (n == 0) {
    mps.boundary_tensor.resize(1, 1ll << L);
    for (std::uint64_t c = 0; c < (1ull << L); ++c)
      mps.boundary_tensor(0, c) = state.amp[c];
    return mps;
  }
  mps.bond_dims.resize(n);
  mps.site_tensors.resize(n);

  // First split: rows are the low L-l physical bits, columns the top l.
  Eigen::MatrixXcd m(1ll << n, 1ll << l);
  for (Eigen::Index c = 0; c < m.cols(); ++c)
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      m(r, c) = state.amp[(static_cast<std::uint64_t>(c) << n) | r];

  // Bond dimension of an SVD: numerical rank (singular values above
  // 1e-13 of the largest), capped at 2^(l-1). Discarding exact zeros keeps
  // the factorization exact while reporting the true Schmidt rank.
  const auto rank = [cap](const Eigen::VectorXd& sv) {
    const double thresh = sv.size() > 0 ? sv(0) * 1e-13 : 0.0;
    int chi = 0;
    for (double s : sv)
      if (s > thresh) ++chi;
    return std::min(std::max(chi, 1), cap);
  };

  Eigen::MatrixXcd x;  // running left block, 2^i x chi_i
  {
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(
        m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const int chi = rank(svd.singularValues());
    x = svd.matrixU().leftCols(chi) *
        svd.singularValues().head(chi).asDiagonal();
    mps.boundary_tensor = svd.matrixV().leftCols(chi).adjoint();
    mps.bond_dims[n - 1] = chi;
  }

  // Peel one site at a time from the right edge of the left block.
  for (int i = n; i >= 2; --i) {
    const Eigen::Index rows = 1ll << (i - 1);
    const Eigen::Index chi_i = x.cols();
    Eigen::MatrixXcd res(rows, 2 * chi_i);
    for (Eigen::Index lam = 0; lam < chi_i; ++lam)
      for (Eigen::Index sigma = 0; sigma < 2; ++sigma)
        res.col(sigma + 2 * lam) = x.col(lam).segment(sigma * rows, rows);
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(
        res, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const int chi = rank(svd.singularValues());
    mps.site_tensors[i - 1] = svd.matrixV().leftCols(chi).adjoint();
    x = svd.matrixU().leftCols(chi) *
        svd.singularValues().head(chi).asDiagonal();
    mps.bond_dims[i - 2] = chi;
  }

  // x is now 2 x chi_1; fold it into the first tensor and renormalize so a
  // truncated factorization still yields a unit-norm state.
  Eigen::MatrixXcd a1(1, 2 * x.cols());
  for (Eigen::Index lam = 0; lam < x.cols(); ++lam)
    for (Eigen::Index sigma = 0; sigma < 2; ++sigma)
      a1(0, sigma + 2 * lam) = x(sigma, lam);
  mps.site_tensors[0] = a1 / a1.norm();
  return mps;
}

StateVector mps_reconstruct(const MpsFactorization& mps) {
  const int L = mps.L;
  const int n = L - mps.l;
  StateVector out(L);
  if (n == 0) {
    for (std::uint64_t c = 0; c < (1ull << L); ++c)
      out.amp[c] = mps.boundary_tensor(0, c);
    return out;
  }
  const auto& a1 = mps.site_tensors[0];
  Eigen::MatrixXcd r(2, a1.cols() / 2);
  for (Eigen::Index lam = 0; lam < r.cols(); ++lam)
    for (Eigen::Index sigma = 0; sigma < 2; ++sigma)
      r(sigma, lam) = a1(0, sigma + 2 * lam);
  for (int i = 2; i <= n; ++i) {
    const auto& a = mps.site_tensors[i - 1];
    Eigen::MatrixXcd next(2 * r.rows(), a.cols() / 2);
    for (Eigen::Index lam = 0; lam < next.cols(); ++lam)
      for (Eigen::Index sigma = 0; sigma < 2; ++sigma)
        next.col(lam).segment(sigma * r.rows(), r.rows()) =
            r * a.col(sigma + 2 * lam);
    r = std::move(next);
  }
  const Eigen::MatrixXcd full = r * mps.boundary_tensor;  // 2^n x 2^l
  for (Eigen::Index c = 0; c < full.cols(); ++c)
    for (Eigen::Index row = 0; row < full.rows(); ++row)
      out.amp[(static_cast<std::uint64_t>(c) << n) | row] = full(row, c);
  return out;
}

Circuit mps_to_circuit(const MpsFactorization& mps) {
  const int L = mps.L;
  const int l = mps.l;
  Circuit c;
  c.n_qubits = L;
  for (const RawGate& g : raw_gates(mps)) {
    const int w = std::min(g.lo, L - l + 1);
    c.gates.push_back(window_gate(w, l, embed_at(g.mat, g.lo - w, l)));
  }
  c.sweep_order.resize(c.size());
  std::iota(c.sweep_order.begin(), c.sweep_order.end(), 0);
  return c;
}

Circuit state_to_circuit(const StateVector& state, int l) {
  return mps_to_circuit(state_to_mps(state, l));
}

Circuit transition_circuit(const StateVector& psi1, const StateVector& psi2) {
  if (psi1.n_qubits != psi2.n_qubits)
    throw std::length_error("transition_circuit: size mismatch");
  const int L = psi1.n_qubits;
  if (L < 2) throw std::invalid_argument("transition_circuit: need L >= 2");
  require_normalized(psi1, "transition_circuit");
  require_normalized(psi2, "transition_circuit");

  const int l0 = L / 2 + 1;        // exact encoding gate size
  const int lt = (L + 1) / 2 + 1;  // fused circuit gate size

  // psi1 is factorized from the left by bit-reversing it, encoding, and
  // mirroring every gate back; psi2 is encoded as usual from the right.
  StateVector rev(L);
  for (std::uint64_t idx = 0; idx < (1ull << L); ++idx)
    rev.amp[bit_reverse(idx, L)] = psi1.amp[idx];
  const auto raw1 = raw_gates(state_to_mps(rev, l0));
  const auto raw2 = raw_gates(state_to_mps(psi2, l0));

  std::vector<RawGate> seq;
  for (auto it = raw1.rbegin(); it != raw1.rend(); ++it) {
    const int k = it->size();
    Eigen::MatrixXcd mir(it->mat.rows(), it->mat.cols());
    for (Eigen::Index r = 0; r < mir.rows(); ++r)
      for (Eigen::Index c = 0; c < mir.cols(); ++c)
        mir(bit_reverse(r, k), bit_reverse(c, k)) = it->mat(r, c);
    seq.push_back({L + 1 - it->hi(), mir.adjoint()});
  }
  seq.insert(seq.end(), raw2.begin(), raw2.end());

  // Pack the sequence into sequential windows: each element lands in the
  // leftmost window containing its support, pushed right past every earlier
  // element it overlaps so the application order is preserved.
  const int n_w = L - lt + 1;
  std::vector<Eigen::MatrixXcd> win(
      n_w, Eigen::MatrixXcd::Identity(1ll << lt, 1ll << lt));
  struct Placed {
    int w, lo, hi;
  };
  std::vector<Placed> placed;
  for (const RawGate& g : seq) {
    int w = std::max(1, g.hi() - lt + 1);
    for (const Placed& p : placed)
      if (g.lo <= p.hi && p.lo <= g.hi() && p.w > w) w = p.w;
    if (w > std::min(g.lo, n_w))
      throw std::logic_error("transition_circuit: window packing failed");
    placed.push_back({w, g.lo, g.hi()});
    win[w - 1] = embed_at(g.mat, g.lo - w, lt) * win[w - 1];
  }

  Circuit c;
  c.n_qubits = L;
  for (int w = 1; w <= n_w; ++w)
    c.gates.push_back(window_gate(w, lt, win[w - 1]));
  c.sweep_order.resize(n_w);
  std::iota(c.sweep_order.begin(), c.sweep_order.end(), 0);
  return c;
}

}  // namespace qcs
