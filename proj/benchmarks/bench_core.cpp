#include <alloyrep/asl2.hpp>
#include <alloyrep/rep.hpp>
#include <alloyrep/rng.hpp>

#include <benchmark/benchmark.h>

using namespace alloyrep;

namespace {

Asl2Params sampled_params(const std::vector<Index>& dims, std::uint64_t seed) {
  Rng rng(seed);
  Asl2Params p;
  p.gamma = rng.cuniform();
  p.dims = dims;
  for (size_t i = 1; i < dims.size(); ++i) {
    p.A.push_back(rng.matrix(dims[i - 1], dims[i]));
    p.B.push_back(rng.matrix(dims[i], dims[i - 1]));
  }
  return p;
}

void BM_Kron(benchmark::State& state) {
  Rng rng(1);
  const Index n = state.range(0);
  const CMatrix a = rng.matrix(n, n);
  const CMatrix b = rng.matrix(n, n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kron(a, b));
  }
}
BENCHMARK(BM_Kron)->Arg(2)->Arg(4)->Arg(8);

void BM_BuildAndCheck(benchmark::State& state) {
  const Asl2Params p = sampled_params({1, 2, 2, 1}, 7);
  for (auto _ : state) {
    const AlloyRep r = build_rep(p);
    benchmark::DoNotOptimize(check_rep(r));
  }
}
BENCHMARK(BM_BuildAndCheck);

void BM_BurnsideTest(benchmark::State& state) {
  const AlloyRep r = build_rep(sampled_params({1, 2, 1}, 11));
  for (auto _ : state) {
    benchmark::DoNotOptimize(is_irreducible(r));
  }
}
BENCHMARK(BM_BurnsideTest);

void BM_TensorDecompose(benchmark::State& state) {
  const AlloyRep s1 = build_rep(spin_rep(1));
  const AlloyRep prod = tensor_product(s1, s1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(decompose(prod, 3));
  }
}
BENCHMARK(BM_TensorDecompose);

void BM_AlloyabilitySearchIter(benchmark::State& state) {
  Rng rng(13);
  QuaternaryAlgebra q1(3);
  q1.tensor() = rng.matrix(3, q1.pair_pair_dim());
  const CanonicalPartner cp = canonical_partner(q1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        alloyability_search(q1, cp.partner, {1, 50, 5}));
  }
}
BENCHMARK(BM_AlloyabilitySearchIter);

}  // namespace

BENCHMARK_MAIN();
