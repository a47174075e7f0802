// Timing comparison of the serial reference kernels against the OpenMP
// versions. Run with OMP_NUM_THREADS set to taste.

#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#include "qcs/kernels.hpp"

namespace {

using qcs::kernels::cplx;

std::vector<cplx> random_vec(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> dist;
  std::vector<cplx> v(n);
  for (cplx& x : v) x = {dist(rng), dist(rng)};
  return v;
}

template <class F>
double time_ms(F&& body, int reps) {
  const auto t0 = std::chrono::steady_clock::now();
  for (int r = 0; r < reps; ++r) body();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

}  // namespace

int main() {
  std::mt19937_64 rng(7);
  std::printf("%-18s %4s %4s %12s %12s %8s\n", "kernel", "L", "k",
              "serial(ms)", "omp(ms)", "speedup");
  for (int L : {16, 18, 20}) {
    const std::size_t dim = 1ull << L;
    for (int k : {2, 6}) {
      std::vector<int> loci0(k);
      for (int i = 0; i < k; ++i) loci0[i] = i * 2;  // strided support
      const auto u = random_vec(1ull << (2 * k), rng);
      auto amp_a = random_vec(dim, rng);
      auto amp_b = amp_a;
      const int reps = L >= 20 ? 3 : 10;

      const double ts = time_ms(
          [&] {
            qcs::kernels::apply_gate_serial(amp_a.data(), L, loci0.data(), k,
                                            u.data(), false);
          },
          reps);
      const double tp = time_ms(
          [&] {
            qcs::kernels::apply_gate_omp(amp_b.data(), L, loci0.data(), k,
                                         u.data(), false);
          },
          reps);
      std::printf("%-18s %4d %4d %12.3f %12.3f %7.2fx\n", "apply_gate", L, k,
                  ts, tp, ts / tp);

      const auto in = random_vec(dim, rng);
      std::vector<cplx> out_a(dim), out_b(dim);
      const double as = time_ms(
          [&] {
            qcs::kernels::accumulate_local_serial(in.data(), out_a.data(), L,
                                                  loci0.data(), k, u.data());
          },
          reps);
      const double ap = time_ms(
          [&] {
            qcs::kernels::accumulate_local_omp(in.data(), out_b.data(), L,
                                               loci0.data(), k, u.data());
          },
          reps);
      std::printf("%-18s %4d %4d %12.3f %12.3f %7.2fx\n", "accumulate_local",
                  L, k, as, ap, as / ap);
    }
  }
  return 0;
}
