#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

#include "nslife/initial_data.hpp"
#include "nslife/kernels/cubature.hpp"
#include "nslife/kernels/recurrence_batch.hpp"

namespace {

using namespace nslife;
using namespace nslife::kernels;

// |a|^3 of the unit vortex over a 3-D box.
Integrand vortex_power() {
  const VortexGaussian a(3, 1.0, 1.0);
  return [a](std::span<const double> x) { return std::pow(a.magnitude(x), 3.0); };
}

Box cube(double h) { return {{-h, -h, -h}, {h, h, h}}; }

CubatureOptions loose() {
  CubatureOptions o;
  o.rel_tol = 1e-8;
  return o;
}

void BM_CubatureSerial(benchmark::State& st) {
  const auto f = vortex_power();
  for (auto _ : st) benchmark::DoNotOptimize(cubature_serial(f, cube(8.0), loose()).value);
}
BENCHMARK(BM_CubatureSerial)->Unit(benchmark::kMillisecond);

void BM_CubatureOmp(benchmark::State& st) {
  const auto f = vortex_power();
  for (auto _ : st) benchmark::DoNotOptimize(cubature_omp(f, cube(8.0), loose()).value);
}
BENCHMARK(BM_CubatureOmp)->Unit(benchmark::kMillisecond);

std::vector<ScalarRecurrence> draws(std::size_t n) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<ScalarRecurrence> v(n);
  for (auto& r : v) {
    r.beta = 0.1 + u(rng);
    r.gamma = 0.1 + u(rng);
    r.alpha = 0.2 * u(rng) * (1.0 - r.beta) * (1.0 - r.beta) / r.gamma;
    r.x0 = 0.0;
  }
  return v;
}

void BM_RecurrenceSerial(benchmark::State& st) {
  const auto v = draws(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(extremal_sup_serial(v, 10000).size());
}
BENCHMARK(BM_RecurrenceSerial)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_RecurrenceOmp(benchmark::State& st) {
  const auto v = draws(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(extremal_sup_omp(v, 10000).size());
}
BENCHMARK(BM_RecurrenceOmp)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
