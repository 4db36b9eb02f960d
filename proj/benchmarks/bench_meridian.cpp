#include <benchmark/benchmark.h>

#include "meridian/bessel.hpp"
#include "meridian/dynamics.hpp"
#include "meridian/field.hpp"
#include "meridian/series.hpp"

using namespace meridian;

static void BenchBesselJY(benchmark::State& state) {
  double x = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bessel_jy(2.5, x));
    x += 0.1;
    if (x > 29.0) x = 0.1;
  }
}
BENCHMARK(BenchBesselJY);

static void BesselK(benchmark::State& state) {
  double x = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bessel(BesselKind::K, 1.5, x));
    x += 0.1;
    if (x > 20.0) x = 0.5;
  }
}
BENCHMARK(BesselK);

static void SpectrumJoukowski(benchmark::State& state) {
  const auto f = make_joukowski_field(1.0, 1.0);
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(spectrum(f, {1.0 + 0.1 * t, 0.8, 0.6}));
    t = (t > 10.0) ? 0.0 : t + 0.01;
  }
}
BENCHMARK(SpectrumJoukowski);

static void GaspSample(benchmark::State& state) {
  GaspSeries s;
  s.alpha = 2.0;
  s.terms.push_back({1.0, 1.0, 0.5, 0.7, 0.0});
  s.terms.push_back({2.0, 0.3, 0.0, 0.0, 0.4});
  const auto f = make_gasp_field(s);
  for (auto _ : state) {
    benchmark::DoNotOptimize(f.sample({0.4, 1.3}));
  }
}
BENCHMARK(GaspSample);

static void FindEquilibria(benchmark::State& state) {
  const auto f = make_holo_field_from_derivative(
      HoloExpr::sum({HoloExpr::power(2), HoloExpr::constant(1.0)}));
  for (auto _ : state) {
    benchmark::DoNotOptimize(find_equilibria(f, {-2.0, 2.0, 0.1, 2.0},
                                             static_cast<int>(state.range(0)), 1e-10));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(FindEquilibria)->RangeMultiplier(2)->Range(4, 32)->Complexity();

static void Pathline(benchmark::State& state) {
  const auto f = make_holo_field(HoloExpr::scale(0.5, HoloExpr::power(2)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(integrate_pathline({f}, {1.0, 0.5, 0.0}, 0.6931, 1e-10));
  }
}
BENCHMARK(Pathline);

BENCHMARK_MAIN();
