#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>

// Low-level amplitude kernels. Each kernel exists in a serial reference
// version and an OpenMP version; the unsuffixed entry point dispatches on
// problem size. The serial versions are the ground truth the parallel ones
// are tested and benchmarked against.
namespace qcs::kernels {

using cplx = std::complex<double>;

// Number of amplitudes below which the OpenMP path is not worth spawning.
inline constexpr std::uint64_t kParallelThreshold = 1ull << 14;

// Applies a k-qubit unitary U (row-major, 2^k x 2^k, row = output index,
// bit t of a local index belongs to loci0[t]) to a 2^L amplitude array.
// loci0 holds 0-based qubit bit positions, strictly ascending.
// If dagger is set, U^dagger is applied instead.
void apply_gate_serial(cplx* amp, int n_qubits, const int* loci0, int k,
                       const cplx* U, bool dagger);
void apply_gate_omp(cplx* amp, int n_qubits, const int* loci0, int k,
                    const cplx* U, bool dagger);
void apply_gate(cplx* amp, int n_qubits, const int* loci0, int k,
                const cplx* U, bool dagger);

// out += M * in restricted to the given loci (M is 2^k x 2^k, same index
// convention as apply_gate). Used for Hamiltonian matvecs.
void accumulate_local_serial(const cplx* in, cplx* out, int n_qubits,
                             const int* loci0, int k, const cplx* M);
void accumulate_local_omp(const cplx* in, cplx* out, int n_qubits,
                          const int* loci0, int k, const cplx* M);
void accumulate_local(const cplx* in, cplx* out, int n_qubits,
                      const int* loci0, int k, const cplx* M);

// env[a*2^k + b] = sum_c bra[idx(a,c)] * conj(ket[idx(b,c)]) where a, b run
// over the loci bits and c over the complement bits.
void environment_serial(const cplx* bra, const cplx* ket, int n_qubits,
                        const int* loci0, int k, cplx* env);

// Inserts zero bits of the complement expansion: returns the 2^L index whose
// complement bits equal c and whose loci bits are zero.
std::uint64_t expand_complement(std::uint64_t c, const int* loci0, int k);

}  // namespace qcs::kernels
