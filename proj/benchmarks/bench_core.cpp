#include <benchmark/benchmark.h>

#include "hus/block_matrix.hpp"
#include "hus/calculus.hpp"
#include "hus/random_models.hpp"
#include "hus/stability.hpp"
#include "hus/zoo.hpp"

namespace {

const hus::ToleranceConfig kTol;

void BM_SymbolicGamma(benchmark::State& state) {
  const auto d = hus::paper_diagonal(hus::PaperDiagonal::MixedUnstable);
  const hus::OperatorModel op(d);
  for (auto _ : state) {
    benchmark::DoNotOptimize(hus::gamma(op, kTol).value);
  }
}
BENCHMARK(BM_SymbolicGamma);

void BM_TruncationGamma(benchmark::State& state) {
  const auto d = hus::paper_diagonal(hus::PaperDiagonal::MixedUnstable);
  const long long n = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        hus::gamma(hus::OperatorModel(hus::truncate(d, n)), kTol).value);
  }
}
BENCHMARK(BM_TruncationGamma)->Arg(64)->Arg(256)->Arg(1024);

void BM_DenseGamma(benchmark::State& state) {
  hus::DrawSource rng(1);
  const auto m = hus::random_matrix(rng, state.range(0), state.range(0), true);
  const hus::OperatorModel op(m);
  for (auto _ : state) {
    benchmark::DoNotOptimize(hus::gamma(op, kTol).value);
  }
}
BENCHMARK(BM_DenseGamma)->Arg(16)->Arg(32)->Arg(64);

void BM_PseudoInverse(benchmark::State& state) {
  hus::DrawSource rng(2);
  const auto m = hus::random_matrix(rng, state.range(0), state.range(0), true);
  const hus::OperatorModel op(m);
  for (auto _ : state) {
    benchmark::DoNotOptimize(hus::pseudo_inverse(op, kTol));
  }
}
BENCHMARK(BM_PseudoInverse)->Arg(16)->Arg(32)->Arg(64);

void BM_BlockCellAnalysis(benchmark::State& state) {
  hus::DrawSource rng(3);
  const auto m = hus::random_schur_block(rng, hus::BlockFamily::Generic, false);
  for (auto _ : state) {
    benchmark::DoNotOptimize(hus::block_cell_analysis(m).gamma.value);
  }
}
BENCHMARK(BM_BlockCellAnalysis);

void BM_FactorizationCheck(benchmark::State& state) {
  hus::DrawSource rng(4);
  const auto m = hus::random_factorization_block(rng, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        hus::factorization_check(m, m.mu(), hus::Complement::Schur2, kTol, state.range(0)));
  }
}
BENCHMARK(BM_FactorizationCheck)->Arg(16)->Arg(64);

void BM_SeriesWitness(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(hus::szasz_instability_witness({1, 10.0}).sup_norm);
  }
}
BENCHMARK(BM_SeriesWitness);

}  // namespace
