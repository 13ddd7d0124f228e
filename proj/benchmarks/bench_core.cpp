#include <benchmark/benchmark.h>

#include <random>

#include "mfpm/divided_congruence.hpp"
#include "mfpm/eigen_classify.hpp"

using namespace mfpm;

namespace {

const std::string kFixtures = MFPM_FIXTURE_DIR;

SpacePtr space(const std::string& name) {
  return SpaceBasis::from_file(read_space_file(kFixtures + "/" + name));
}

void BM_HeckeMatrix(benchmark::State& state) {
  auto s = space("S_2_G0_52.basis");
  for (auto _ : state) benchmark::DoNotOptimize(hecke_matrix(*s, state.range(0)));
}
BENCHMARK(BM_HeckeMatrix)->Arg(5)->Arg(11)->Arg(37);

void BM_AlgebraRank(benchmark::State& state) {
  auto s = space("S_2_G0_52.basis");
  for (auto _ : state) benchmark::DoNotOptimize(algebra_rank(*s, 14));
}
BENCHMARK(BM_AlgebraRank);

void BM_Howell(benchmark::State& state) {
  auto ring = ModRing::integers_mod(3, static_cast<int>(state.range(1)));
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(1);
  ChainRingMatrix a(ring, n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a(i, j) = ring->from_integer(static_cast<int64_t>(rng() % 729) * (rng() % 2 ? 3 : 1));
  }
  for (auto _ : state) benchmark::DoNotOptimize(howell_form(a));
}
BENCHMARK(BM_Howell)->Args({4, 2})->Args({8, 4})->Args({16, 6});

void BM_Enumerate(benchmark::State& state) {
  auto s = space("S_2_G0_52.basis");
  auto ring = ModRing::integers_mod(3, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    HeckeCache cache;
    benchmark::DoNotOptimize(enumerate_weak_eigenforms(s, ring, 156, 14, &cache));
  }
}
BENCHMARK(BM_Enumerate)->Arg(1)->Arg(2)->Arg(3);

void BM_EqualizingSeries(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(equalizing_series(5, state.range(0), 200));
}
BENCHMARK(BM_EqualizingSeries)->Arg(1)->Arg(2)->Arg(3);

void BM_StripLevel(benchmark::State& state) {
  auto bases = directory_bases(kFixtures, 1);
  auto delta = read_space_file(kFixtures + "/S_12_G0_1.basis").integer_rows().at(0);
  auto ring = ModRing::integers_mod(5, 2);
  auto f = reduce_mod(multiply(delta, equalizing_series(5, 2, 200)), ring);
  f.set_level(5);
  for (auto _ : state) benchmark::DoNotOptimize(strip_level_search(f, 1, 30, 200, bases));
}
BENCHMARK(BM_StripLevel);

}  // namespace
BENCHMARK_MAIN();
