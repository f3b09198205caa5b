#include <benchmark/benchmark.h>

#include <random>

#include "cyclo/criteria.hpp"
#include "cyclo/mapping.hpp"

using namespace cyclo;

namespace {

// Field order as (p, m) pairs indexed by the benchmark argument.
FieldPtr field_for(int64_t which) {
  switch (which) {
    case 0: return Field::make(3, 4);
    case 1: return Field::make(2, 10);
    case 2: return Field::make(7, 4);
    default: return Field::make(2, 16);
  }
}

void BM_FieldMul(benchmark::State& state) {
  const auto f = field_for(state.range(0));
  std::mt19937_64 rng(1);
  std::vector<Elem> xs;
  for (int i = 0; i < 1024; ++i) xs.push_back(f->elem(1 + rng() % (f->q() - 1)));
  Elem acc = f->one();
  std::size_t i = 0;
  for (auto _ : state) {
    acc = acc * xs[i++ & 1023];
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_FieldMul)->DenseRange(0, 3);

void BM_FieldAdd(benchmark::State& state) {
  const auto f = field_for(state.range(0));
  std::mt19937_64 rng(2);
  std::vector<Elem> xs;
  for (int i = 0; i < 1024; ++i) xs.push_back(f->elem(rng() % f->q()));
  Elem acc = f->zero();
  std::size_t i = 0;
  for (auto _ : state) {
    acc = acc + xs[i++ & 1023];
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_FieldAdd)->DenseRange(0, 3);

void BM_FieldConstruction(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(field_for(state.range(0)));
}
BENCHMARK(BM_FieldConstruction)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

void BM_EvalAll(benchmark::State& state) {
  const auto f = field_for(state.range(0));
  std::mt19937_64 rng(3);
  std::vector<Poly::Term> ts;
  for (int k = 0; k < 8; ++k) ts.push_back({rng() % f->q(), f->elem(1 + rng() % (f->q() - 1))});
  const auto p = Poly::from_terms(f, ts).canonical();
  for (auto _ : state) benchmark::DoNotOptimize(p.eval_all());
  state.SetItemsProcessed(state.iterations() * f->q());
}
BENCHMARK(BM_EvalAll)->DenseRange(0, 3);

void BM_MapToPoly(benchmark::State& state) {
  const auto f = Field::make(3, 4);
  const auto cs = make_cosets(f, static_cast<std::uint64_t>(state.range(0)));
  std::mt19937_64 rng(4);
  std::vector<std::uint64_t> exps;
  std::vector<Elem> consts;
  for (std::uint64_t i = 0; i < cs->ell(); ++i) {
    exps.push_back(1 + rng() % 79);
    consts.push_back(f->elem(1 + rng() % 80));
  }
  const auto m = CycloMap::monomial(cs, exps, consts);
  for (auto _ : state) benchmark::DoNotOptimize(map_to_poly(m));
}
BENCHMARK(BM_MapToPoly)->Arg(2)->Arg(4)->Arg(8)->Arg(16)->Arg(40);

void BM_CheckMain2VsBrute(benchmark::State& state) {
  const auto f = Field::make(3, 4);
  const auto cs = make_cosets(f, 8);
  std::mt19937_64 rng(5);
  MonomialMapSpec sp{cs, {}, {}, std::nullopt};
  for (int i = 0; i < 8; ++i) {
    sp.exps.push_back(1 + rng() % 79);
    sp.consts.push_back(f->elem(1 + rng() % 80));
  }
  const bool brute = state.range(0) != 0;
  for (auto _ : state) {
    if (brute) {
      benchmark::DoNotOptimize(is_bijection_brute(sp.to_map()));
    } else {
      benchmark::DoNotOptimize(check_main2(sp));
    }
  }
}
BENCHMARK(BM_CheckMain2VsBrute)->Arg(0)->Arg(1);

}  // namespace

BENCHMARK_MAIN();
