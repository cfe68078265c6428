// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <map>
#include <random>

#include "anw/biphoton.hpp"
#include "anw/kernels.hpp"
#include "anw/lattice.hpp"

namespace {

using namespace anw;

struct Fixture {
  Eigensystem es;
  std::vector<cplx> eta;
  ComplexMatrix q_tilde;

  explicit Fixture(std::size_t n) : es(diagonalize(build_coupling_matrix(make_profile(ProfileKind::parabolic, n, 1.0)))) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (std::size_t j = 0; j < n; ++j) eta.emplace_back(u(rng), u(rng));
    q_tilde = kernels::serial::congruence_diag(es.s_matrix, eta);
  }
};

const Fixture& fixture(std::size_t n) {
  static std::map<std::size_t, Fixture> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, Fixture(n)).first;
  return it->second;
}

void BM_congruence_diag_serial(benchmark::State& st) {
  const Fixture& f = fixture(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(kernels::serial::congruence_diag(f.es.s_matrix, f.eta));
}
void BM_congruence_diag_parallel(benchmark::State& st) {
  const Fixture& f = fixture(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(kernels::congruence_diag(f.es.s_matrix, f.eta));
}
void BM_congruence_transpose_serial(benchmark::State& st) {
  const Fixture& f = fixture(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(kernels::serial::congruence_transpose(f.es.s_matrix, f.q_tilde));
}
void BM_congruence_transpose_parallel(benchmark::State& st) {
  const Fixture& f = fixture(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(kernels::congruence_transpose(f.es.s_matrix, f.q_tilde));
}
void BM_phase_matching_serial(benchmark::State& st) {
  const Fixture& f = fixture(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(kernels::serial::phase_matching(f.es.eigenvalues, 20.0));
}
void BM_phase_matching_parallel(benchmark::State& st) {
  const Fixture& f = fixture(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(kernels::phase_matching(f.es.eigenvalues, 20.0));
}

}  // namespace

BENCHMARK(BM_congruence_diag_serial)->Arg(64)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_congruence_diag_parallel)->Arg(64)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_congruence_transpose_serial)->Arg(64)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_congruence_transpose_parallel)->Arg(64)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_phase_matching_serial)->Arg(256)->Arg(1024)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_phase_matching_parallel)->Arg(256)->Arg(1024)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
