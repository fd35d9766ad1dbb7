// Parallel kernels against their serial references.

#include <benchmark/benchmark.h>

#include "malle/catalog.hpp"
#include "malle/counting.hpp"
#include "malle/dirichlet.hpp"
#include "malle/invariants.hpp"

using namespace malle;

namespace {

FrobenianFamily c2_family() {
  const auto& T = catalog_entry("C2").group;
  return family_from_twist(T, twist_preset("trivial-pi-over-Q", T, T), Ordering::disc_pi);
}

void BM_expand_parallel(benchmark::State& st) {
  const auto f = c2_family();
  const auto n = static_cast<std::uint64_t>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(expand(f, n, n));
}

void BM_expand_serial(benchmark::State& st) {
  const auto f = c2_family();
  const auto n = static_cast<std::uint64_t>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(reference::expand(f, n, n));
}

void BM_zeta_parallel(benchmark::State& st) {
  const auto f = c2_family();
  for (auto _ : st) benchmark::DoNotOptimize(zeta_factor_estimate(f, 1.5, st.range(0)));
}

void BM_zeta_serial(benchmark::State& st) {
  const auto f = c2_family();
  for (auto _ : st) benchmark::DoNotOptimize(reference::zeta_factor_estimate(f, 1.5, st.range(0)));
}

void BM_count_parallel(benchmark::State& st) {
  const FiniteAbelianGroup T({2, 2});
  const auto grid = default_grid(static_cast<std::uint64_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(count(T, Ordering::disc_pi, grid));
}

void BM_count_serial(benchmark::State& st) {
  const FiniteAbelianGroup T({2, 2});
  const auto grid = default_grid(static_cast<std::uint64_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(reference::count(T, Ordering::disc_pi, grid));
}

void BM_turkelli_parallel(benchmark::State& st) {
  const auto& G = catalog_entry("kluners").group;
  const auto T = abelian_normal_targets(G).back();
  const auto g = twist_preset("kluners-split", G, T);
  for (auto _ : st) benchmark::DoNotOptimize(turkelli_B(G, T, g));
}

void BM_turkelli_serial(benchmark::State& st) {
  const auto& G = catalog_entry("kluners").group;
  const auto T = abelian_normal_targets(G).back();
  const auto g = twist_preset("kluners-split", G, T);
  for (auto _ : st) benchmark::DoNotOptimize(reference::turkelli_B(G, T, g));
}

}  // namespace

BENCHMARK(BM_expand_parallel)->Arg(100'000)->Arg(1'000'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_expand_serial)->Arg(100'000)->Arg(1'000'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_zeta_parallel)->Arg(1'000'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_zeta_serial)->Arg(1'000'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_count_parallel)->Arg(1'000'000'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_count_serial)->Arg(1'000'000'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_turkelli_parallel)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_turkelli_serial)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
