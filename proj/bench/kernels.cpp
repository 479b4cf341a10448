#include <cmath>
#include <random>

#include <benchmark/benchmark.h>

#include "wprs/bipartite.hpp"
#include "wprs/embed.hpp"
#include "wprs/kerr.hpp"
#include "wprs/neighbors.hpp"
#include "wprs/recur.hpp"

using namespace wprs;

namespace {

struct KerrSetup {
  fock::FockState state;
  kerr::SingleModeSpectrum spec;
};

KerrSetup kerr_setup() {
  const double a = 10.0;
  const int n_max = fock::choose_truncation(a, 5);
  return {fock::pacs_amplitudes(a, 5, n_max), kerr::kerr_spectrum(1.0, 0.01, n_max)};
}

std::vector<bipartite::SectorState> bipartite_setup() {
  const double a = std::sqrt(5.0);
  const auto field = fock::pacs_amplitudes(a, 5, fock::choose_truncation(a, 5));
  return bipartite::decompose_initial(field, {1.0, 1.0, 5.0, 1.0});
}

TimeSeries quasi_series(std::size_t n) {
  TimeSeries s;
  s.dt = 1e-2;
  s.values.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double t = static_cast<double>(k) * s.dt;
    s.values[k] = std::sin(t) + 0.6 * std::sin(std::sqrt(2.0) * t) + 0.3 * std::sin(std::sqrt(5.0) * t);
  }
  return s;
}

void BM_KerrSeries(benchmark::State& st) {
  const auto k = kerr_setup();
  for (auto _ : st) benchmark::DoNotOptimize(kerr::generate_series_x(k.state, k.spec, 1e-3, st.range(0)));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_KerrSeriesReference(benchmark::State& st) {
  const auto k = kerr_setup();
  for (auto _ : st) benchmark::DoNotOptimize(kerr::generate_series_x_reference(k.state, k.spec, 1e-3, st.range(0)));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_BipartiteObservables(benchmark::State& st) {
  const auto secs = bipartite_setup();
  for (auto _ : st) benchmark::DoNotOptimize(bipartite::evolve_observables(secs, 1e-3, st.range(0)));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_BipartiteObservablesReference(benchmark::State& st) {
  const auto secs = bipartite_setup();
  for (auto _ : st) benchmark::DoNotOptimize(bipartite::evolve_observables_reference(secs, 1e-3, st.range(0)));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_RecurrenceMatrix(benchmark::State& st) {
  const auto s = quasi_series(10000);
  for (auto _ : st) benchmark::DoNotOptimize(recur::recurrence_matrix(s, 0, st.range(0), 0.1));
}

void BM_RecurrenceMatrixReference(benchmark::State& st) {
  const auto s = quasi_series(10000);
  for (auto _ : st) benchmark::DoNotOptimize(recur::recurrence_matrix_reference(s, 0, st.range(0), 0.1));
}

void BM_MutualInformation(benchmark::State& st) {
  const auto s = quasi_series(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(embed::mutual_information_delay(s, 200, 16));
}

void BM_MutualInformationReference(benchmark::State& st) {
  const auto s = quasi_series(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(embed::mutual_information_delay_reference(s, 200, 16));
}

void BM_NearestGrid(benchmark::State& st) {
  const auto s = quasi_series(static_cast<std::size_t>(st.range(0)));
  const embed::DelayVectors v(s.view(), {50, 3});
  const embed::BoxGrid grid(v, embed::Metric::euclidean);
  const embed::NeighborFilter f{100, -1, -1};
  for (auto _ : st)
    for (std::int64_t i = 0; i < v.size(); i += 97) benchmark::DoNotOptimize(grid.nearest(i, f));
}

void BM_NearestBrute(benchmark::State& st) {
  const auto s = quasi_series(static_cast<std::size_t>(st.range(0)));
  const embed::DelayVectors v(s.view(), {50, 3});
  const embed::NeighborFilter f{100, -1, -1};
  for (auto _ : st)
    for (std::int64_t i = 0; i < v.size(); i += 97)
      benchmark::DoNotOptimize(embed::nearest_brute(v, embed::Metric::euclidean, i, f));
}

}  // namespace

BENCHMARK(BM_KerrSeries)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_KerrSeriesReference)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BipartiteObservables)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BipartiteObservablesReference)->Arg(20000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RecurrenceMatrix)->Arg(4000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RecurrenceMatrixReference)->Arg(4000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MutualInformation)->Arg(200000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MutualInformationReference)->Arg(200000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_NearestGrid)->Arg(20000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_NearestBrute)->Arg(20000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
