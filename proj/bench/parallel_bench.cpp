// Serial reference vs OpenMP paths of the data-parallel kernels.

#include <benchmark/benchmark.h>

#include "ca/corpus.hpp"
#include "ca/frobmult.hpp"
#include "ca/koszul.hpp"

namespace {

ca::Exec policy(const benchmark::State& state) { return state.range(0) ? ca::Exec::Parallel : ca::Exec::Serial; }

void label(benchmark::State& state) { state.SetLabel(state.range(0) ? "parallel" : "serial"); }

void BM_CertifyCorpus(benchmark::State& state) {
  auto corpus = ca::exactness_corpus(11, 32);
  for (auto _ : state) benchmark::DoNotOptimize(ca::certify_corpus(corpus, 3, policy(state)));
  label(state);
}
BENCHMARK(BM_CertifyCorpus)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_ChiInfinity(benchmark::State& state) {
  ca::PolyRing base(2, {"x", "y", "z"});
  auto ring = std::make_shared<ca::QuotientRing>(base, std::vector<ca::Poly>{});
  std::vector<ca::Poly> rel{ca::parse_poly("x*y + z^2", base), ca::parse_poly("x^2 + y*z", base),
                            ca::parse_poly("x*z + y^2", base)};
  ca::FgModule m = ca::FgModule::cyclic(ring, rel);
  std::vector<ca::Poly> seq{ca::parse_poly("z", base)};
  ca::LimitOptions o;
  o.nmax = 3;
  o.exec = policy(state);
  for (auto _ : state) benchmark::DoNotOptimize(ca::chi_infinity(m, seq, o));
  label(state);
}
BENCHMARK(BM_ChiInfinity)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_EvaluatedRank(benchmark::State& state) {
  ca::PolyRing base(5, {"x", "y", "z"});
  std::mt19937_64 rng(5);
  ca::PolyMatrix m(base.field, std::vector<int>(6, 0), std::vector<int>(6, 2));
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) m.at(i, j) = ca::random_form(rng, base, 2, 4);
  for (auto _ : state) benchmark::DoNotOptimize(ca::evaluated_rank(m, 3, 9, 64, policy(state)));
  label(state);
}
BENCHMARK(BM_EvaluatedRank)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

}  // namespace
BENCHMARK_MAIN();
