// SPDX-License-Identifier: Apache-2.0
// Per-leaf parallelism: serial vs OpenMP verification and certification.

#include <benchmark/benchmark.h>

#include "branchproof/generators.hpp"
#include "branchproof/proof.hpp"
#include "branchproof/recompile.hpp"

using namespace branchproof;

namespace {

struct Fixture {
  InequalitySystem K;
  BranchNode T;
};

// Recompiled thin segment has 6 leaves; the Tseitin grid's branching form has many more.
const Fixture& grid() {
  static const Fixture f = [] {
    TseitinInstance g = tseitin_grid(2, 3);
    return Fixture{tseitin_polytope(g), to_branching(tseitin_sp_refutation(g))};
  }();
  return f;
}

void BM_VerifySerial(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(verify_branching_proof_serial(grid().K, grid().T));
}
void BM_VerifyParallel(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(verify_branching_proof(grid().K, grid().T));
}
void BM_CertifySerial(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(certify_serial(grid().K, grid().T));
}
void BM_CertifyParallel(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(certify(grid().K, grid().T));
}
void BM_RecompileThin(benchmark::State& s) {
  auto [K, T] = thin_segment(Integer(1000000));
  RecompileOptions opt;
  opt.parallel = s.range(0) != 0;
  for (auto _ : s) benchmark::DoNotOptimize(recompile(K, T, opt));
}

}  // namespace

BENCHMARK(BM_VerifySerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VerifyParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CertifySerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CertifyParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RecompileThin)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
