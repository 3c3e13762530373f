#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "fwm/constants.hpp"
#include "fwm/medium.hpp"
#include "fwm/pulse.hpp"
#include "fwm/scan.hpp"

namespace {

fwm::MediumModel demo_like_medium() {
  fwm::MediumModel m;
  m.n0 = 1.0;
  m.length = 0.017;
  m.lines.push_back({-150.0, fwm::two_pi * 377.107e12, fwm::two_pi * 3e8});
  m.lines.push_back({-150.0, fwm::two_pi * 377.103965e12, fwm::two_pi * 3e8});
  m.lines.push_back({std::log(4.0) / 0.017, fwm::two_pi * 377.1108e12,
                     fwm::two_pi * 1e7});
  m.lines.push_back({std::log(2.0) / 0.017, fwm::two_pi * 377.1048e12,
                     fwm::two_pi * 1e7});
  return m;
}

void bm_complex_index_grid(benchmark::State& state) {
  const fwm::MediumModel m = demo_like_medium();
  const std::int64_t points = state.range(0);
  for (auto _ : state) {
    std::complex<double> acc = 0.0;
    for (std::int64_t i = 0; i < points; ++i) {
      const double omega = fwm::two_pi * (377.1068e12 + 8e9 * i / points);
      acc += fwm::complex_index(m, omega);
    }
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * points);
}
BENCHMARK(bm_complex_index_grid)->Arg(1024)->Arg(8192);

void bm_group_index_grid(benchmark::State& state) {
  const fwm::MediumModel m = demo_like_medium();
  const std::int64_t points = state.range(0);
  for (auto _ : state) {
    double acc = 0.0;
    for (std::int64_t i = 0; i < points; ++i) {
      const double omega = fwm::two_pi * (377.1068e12 + 8e9 * i / points);
      acc += fwm::group_index(m, omega);
    }
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * points);
}
BENCHMARK(bm_group_index_grid)->Arg(1024)->Arg(8192);

void bm_propagate(benchmark::State& state) {
  const fwm::MediumModel m = demo_like_medium();
  const fwm::Pulse input = fwm::make_gaussian_pulse(
      fwm::two_pi * 377.1108e12, 200e-9, 5e-9, state.range(0), 0.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fwm::propagate(m, input));
  }
}
BENCHMARK(bm_propagate)->Arg(2048)->Arg(8192);

void bm_fit_lines(benchmark::State& state) {
  fwm::MediumModel m;
  m.n0 = 1.0;
  m.length = 0.017;
  m.lines.push_back({50.0, fwm::two_pi * (377.1108e12 - 4e7), fwm::two_pi * 8e6});
  m.lines.push_back({-120.0, fwm::two_pi * (377.1108e12 + 6e7), fwm::two_pi * 1.5e7});
  fwm::FrequencyGrid grid;
  grid.start_hz = -4e8;
  grid.stop_hz = 4e8;
  grid.points = state.range(0);
  const fwm::ScanData scan = fwm::emit_scan(m, 377.1108e12, grid, 0.0, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        fwm::fit_lines(scan, 2, {-4e7, 6e7}, 0.017, 377.1108e12));
  }
}
BENCHMARK(bm_fit_lines)->Arg(512)->Arg(2048);

void bm_kramers_kronig(benchmark::State& state) {
  const std::int64_t n = state.range(0);
  std::vector<double> im(n);
  for (std::int64_t i = 0; i < n; ++i) {
    const double d = (i - n / 2) * 40.0 / n;
    im[i] = -1.0 / (d * d + 1.0);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(fwm::kramers_kronig(im));
  }
}
BENCHMARK(bm_kramers_kronig)->Arg(1024)->Arg(8192);

}  // namespace

BENCHMARK_MAIN();
