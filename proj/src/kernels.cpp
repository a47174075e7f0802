#include "qcs/kernels.hpp"

#include <vector>

namespace qcs::kernels {

std::uint64_t expand_complement(std::uint64_t c, const int* loci0, int k) {
  std::uint64_t idx = c;
  for (int t = 0; t < k; ++t) {
    const std::uint64_t low = idx & ((1ull << loci0[t]) - 1);
    idx = ((idx >> loci0[t]) << (loci0[t] + 1)) | low;
  }
  return idx;
}

namespace {

// One gathered block: y = U x (or U^dagger x), scattered back.
inline void gate_block(cplx* amp, std::uint64_t base, const std::uint64_t* offs,
                       std::uint64_t dim, const cplx* U, bool dagger,
                       cplx* x, cplx* y) {
  for (std::uint64_t a = 0; a < dim; ++a) x[a] = amp[base | offs[a]];
  if (!dagger) {
    for (std::uint64_t r = 0; r < dim; ++r) {
      cplx acc = 0.0;
      const cplx* row = U + r * dim;
      for (std::uint64_t s = 0; s < dim; ++s) acc += row[s] * x[s];
      y[r] = acc;
    }
  } else {
    for (std::uint64_t r = 0; r < dim; ++r) y[r] = 0.0;
    for (std::uint64_t s = 0; s < dim; ++s) {
      const cplx* row = U + s * dim;
      const cplx xs = x[s];
      for (std::uint64_t r = 0; r < dim; ++r) y[r] += std::conj(row[r]) * xs;
    }
  }
  for (std::uint64_t r = 0; r < dim; ++r) amp[base | offs[r]] = y[r];
}

// Precomputed offsets of the loci-bit patterns within the full index.
std::vector<std::uint64_t> loci_offsets(const int* loci0, int k) {
  const std::uint64_t dim = 1ull << k;
  std::vector<std::uint64_t> offs(dim);
  for (std::uint64_t a = 0; a < dim; ++a) {
    std::uint64_t o = 0;
    for (int t = 0; t < k; ++t)
      if (a >> t & 1) o |= 1ull << loci0[t];
    offs[a] = o;
  }
  return offs;
}

}  // namespace

void apply_gate_serial(cplx* amp, int n_qubits, const int* loci0, int k,
                       const cplx* U, bool dagger) {
  const std::uint64_t dim = 1ull << k;
  const std::uint64_t n_blocks = 1ull << (n_qubits - k);
  const auto offs = loci_offsets(loci0, k);
  std::vector<cplx> x(dim), y(dim);
  for (std::uint64_t c = 0; c < n_blocks; ++c)
    gate_block(amp, expand_complement(c, loci0, k), offs.data(), dim, U,
               dagger, x.data(), y.data());
}

void apply_gate_omp(cplx* amp, int n_qubits, const int* loci0, int k,
                    const cplx* U, bool dagger) {
  const std::uint64_t dim = 1ull << k;
  const std::int64_t n_blocks = 1ll << (n_qubits - k);
  const auto offs = loci_offsets(loci0, k);
#pragma omp parallel
  {
    std::vector<cplx> x(dim), y(dim);
#pragma omp for schedule(static)
    for (std::int64_t c = 0; c < n_blocks; ++c)
      gate_block(amp, expand_complement(c, loci0, k), offs.data(), dim, U,
                 dagger, x.data(), y.data());
  }
}

void apply_gate(cplx* amp, int n_qubits, const int* loci0, int k,
                const cplx* U, bool dagger) {
  if ((1ull << n_qubits) >= kParallelThreshold)
    apply_gate_omp(amp, n_qubits, loci0, k, U, dagger);
  else
    apply_gate_serial(amp, n_qubits, loci0, k, U, dagger);
}

void accumulate_local_serial(const cplx* in, cplx* out, int n_qubits,
                             const int* loci0, int k, const cplx* M) {
  const std::uint64_t dim = 1ull << k;
  const std::uint64_t n_blocks = 1ull << (n_qubits - k);
  const auto offs = loci_offsets(loci0, k);
  for (std::uint64_t c = 0; c < n_blocks; ++c) {
    const std::uint64_t base = expand_complement(c, loci0, k);
    for (std::uint64_t r = 0; r < dim; ++r) {
      cplx acc = 0.0;
      const cplx* row = M + r * dim;
      for (std::uint64_t s = 0; s < dim; ++s) acc += row[s] * in[base | offs[s]];
      out[base | offs[r]] += acc;
    }
  }
}

void accumulate_local_omp(const cplx* in, cplx* out, int n_qubits,
                          const int* loci0, int k, const cplx* M) {
  const std::uint64_t dim = 1ull << k;
  const std::int64_t n_blocks = 1ll << (n_qubits - k);
  const auto offs = loci_offsets(loci0, k);
#pragma omp parallel for schedule(static)
  for (std::int64_t c = 0; c < n_blocks; ++c) {
    const std::uint64_t base = expand_complement(c, loci0, k);
    for (std::uint64_t r = 0; r < dim; ++r) {
      cplx acc = 0.0;
      const cplx* row = M + r * dim;
      for (std::uint64_t s = 0; s < dim; ++s) acc += row[s] * in[base | offs[s]];
      out[base | offs[r]] += acc;
    }
  }
}

void accumulate_local(const cplx* in, cplx* out, int n_qubits,
                      const int* loci0, int k, const cplx* M) {
  if ((1ull << n_qubits) >= kParallelThreshold)
    accumulate_local_omp(in, out, n_qubits, loci0, k, M);
  else
    accumulate_local_serial(in, out, n_qubits, loci0, k, M);
}

void environment_serial(const cplx* bra, const cplx* ket, int n_qubits,
                        const int* loci0, int k, cplx* env) {
  const std::uint64_t dim = 1ull << k;
  const std::uint64_t n_blocks = 1ull << (n_qubits - k);
  const auto offs = loci_offsets(loci0, k);
  for (std::uint64_t i = 0; i < dim * dim; ++i) env[i] = 0.0;
  std::vector<cplx> x(dim), y(dim);
  for (std::uint64_t c = 0; c < n_blocks; ++c) {
    const std::uint64_t base = expand_complement(c, loci0, k);
    for (std::uint64_t a = 0; a < dim; ++a) {
      x[a] = bra[base | offs[a]];
      y[a] = std::conj(ket[base | offs[a]]);
    }
    for (std::uint64_t a = 0; a < dim; ++a) {
      const cplx xa = x[a];
      cplx* row = env + a * dim;
      for (std::uint64_t b = 0; b < dim; ++b) row[b] += xa * y[b];
    }
  }
}

}  // namespace qcs::kernels
