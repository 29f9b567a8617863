#include <benchmark/benchmark.h>

#include "tourprof/certificate.hpp"
#include "tourprof/flags.hpp"
#include "tourprof/generators.hpp"
#include "tourprof/incremental.hpp"
#include "tourprof/profiles.hpp"
#include "tourprof/random.hpp"
#include "tourprof/search.hpp"

using namespace tourprof;

static void BM_Profile3(benchmark::State& state) {
  const Tournament t = random_tournament(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(profile3(t));
}
BENCHMARK(BM_Profile3)->RangeMultiplier(4)->Range(64, 4096);

static void BM_Profile4(benchmark::State& state) {
  const Tournament t = random_tournament(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(profile4(t));
}
BENCHMARK(BM_Profile4)->RangeMultiplier(4)->Range(64, 2048)->Unit(benchmark::kMillisecond);

static void BM_EdgeStats(benchmark::State& state) {
  const Tournament t = random_tournament(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(edge_stats(t));
}
BENCHMARK(BM_EdgeStats)->RangeMultiplier(4)->Range(64, 2048)->Unit(benchmark::kMillisecond);

static void BM_SampledProfile4(benchmark::State& state) {
  const Tournament t = random_tournament(4096, 3);
  for (auto _ : state) benchmark::DoNotOptimize(sample_profile4(t, 100000, 4));
}
BENCHMARK(BM_SampledProfile4)->Unit(benchmark::kMillisecond);

static void BM_IncrementalFlip(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  IncrementalState s(random_tournament(n, 5));
  Rng rng(6);
  for (auto _ : state) {
    const Vertex u = rng.index(n);
    Vertex v = rng.index(n - 1);
    if (v >= u) ++v;
    s.flip(u, v);
  }
  benchmark::DoNotOptimize(s.c4_count());
}
BENCHMARK(BM_IncrementalFlip)->RangeMultiplier(4)->Range(64, 4096);

static void BM_CanonicalCode(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<Tournament> pool;
  for (std::uint64_t seed = 0; seed < 64; ++seed) pool.push_back(random_tournament(n, seed));
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(canonical_code(pool[i++ % pool.size()]));
}
BENCHMARK(BM_CanonicalCode)->DenseRange(4, 6);

static void BM_EnumerateTypes6(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_types(6));
}
BENCHMARK(BM_EnumerateTypes6)->Unit(benchmark::kMillisecond);

static void BM_ProductTable(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(product_table(k));
}
BENCHMARK(BM_ProductTable)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_VerifyCertificate(benchmark::State& state) {
  const Certificate cert = lift_certificate(lemma1_certificate(0.1));
  const ProductTable& table = shared_product_table(4);
  for (auto _ : state) benchmark::DoNotOptimize(verify_certificate(cert, table));
}
BENCHMARK(BM_VerifyCertificate);

static void BM_Anneal(benchmark::State& state) {
  AnnealOptions options;
  options.schedule.moves = 20000;
  for (auto _ : state) benchmark::DoNotOptimize(anneal(64, 1.0 / 16, options, 1));
}
BENCHMARK(BM_Anneal)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
