#include <benchmark/benchmark.h>

#include "zsm/chains.hpp"
#include "zsm/elasticity.hpp"
#include "zsm/hilbert.hpp"

using namespace zsm;

static void BM_EnumerateAtoms(benchmark::State& state) {
  const Int w = state.range(0);
  std::vector<Int> g;
  for (Int x = -w; x <= w; ++x)
    if (x != 0) g.push_back(x);
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_atoms(g, Budget::unlimited()).atoms.size());
}
BENCHMARK(BM_EnumerateAtoms)->DenseRange(3, 6);

static void BM_LengthSet(benchmark::State& state) {
  Sequence b = Sequence::parse("3^2 2^3 -2^3 -1^6").power(state.range(0));
  auto atoms = atoms_for_element(b);
  for (auto _ : state) benchmark::DoNotOptimize(length_set(b, atoms, Budget::unlimited()).lengths.size());
}
BENCHMARK(BM_LengthSet)->DenseRange(1, 4);

static void BM_Catenary(benchmark::State& state) {
  Sequence b = Sequence::parse("2^2 1^2 -1^2 -2^2").power(state.range(0));
  auto atoms = atoms_for_element(b);
  for (auto _ : state) benchmark::DoNotOptimize(catenary(b, atoms, Budget::unlimited()));
}
BENCHMARK(BM_Catenary)->DenseRange(1, 3);

static void BM_KernelHilbert(benchmark::State& state) {
  Matrix a{{3, -2, 1, -4}, {1, 2, -3, 0}};
  for (auto _ : state) benchmark::DoNotOptimize(kernel_hilbert_basis(a, Budget::unlimited()).basis.size());
}
BENCHMARK(BM_KernelHilbert);

static void BM_ExactElasticity(benchmark::State& state) {
  GroundSpec odd({-2, -1}, {Progression{1, 2}});
  for (auto _ : state) benchmark::DoNotOptimize(exact_elasticity(odd).rho);
}
BENCHMARK(BM_ExactElasticity);

static void BM_ChainToUpsilon(benchmark::State& state) {
  Sequence b = Sequence::parse("3^2 2^3 -2^3 -1^6").power(state.range(0));
  auto atoms = atoms_for_element(b);
  auto z = factorizations(b, atoms, Budget::unlimited());
  for (auto _ : state)
    for (const auto& x : z.all) benchmark::DoNotOptimize(chain_to_upsilon(b, x, atoms).max_step);
}
BENCHMARK(BM_ChainToUpsilon)->DenseRange(1, 2);

BENCHMARK_MAIN();
