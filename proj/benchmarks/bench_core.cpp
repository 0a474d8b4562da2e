#include <benchmark/benchmark.h>

#include <random>

#include "afxy/ballconstruct.hpp"
#include "afxy/extension.hpp"
#include "afxy/recovery.hpp"
#include "afxy/spinfield.hpp"
#include "afxy/vorticity.hpp"

using namespace afxy;

namespace {

const Region kSquare = Region::rectangle({0, 0}, {1, 1});

Recovery vortex_field(double eps) {
  AtomicMeasure mu;
  mu.add({0.5, 0.5}, 1);
  return build_recovery(mu, eps, kSquare);
}

}  // namespace

static void BM_TriangleEnumeration(benchmark::State& state) {
  const double eps = std::ldexp(1.0, -static_cast<int>(state.range(0)));
  for (auto _ : state) {
    std::size_t n = 0;
    for_each_triangle_in(kSquare, eps, [&](const TriangleId&) { ++n; });
    benchmark::DoNotOptimize(n);
  }
}
BENCHMARK(BM_TriangleEnumeration)->DenseRange(6, 9);

static void BM_EnergyAfxy(benchmark::State& state) {
  const Recovery rec = vortex_field(std::ldexp(1.0, -static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(energy_afxy(rec.u, kSquare));
}
BENCHMARK(BM_EnergyAfxy)->DenseRange(6, 9);

static void BM_VorticityMeasure(benchmark::State& state) {
  const Recovery rec = vortex_field(std::ldexp(1.0, -static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(vorticity_measure(rec.v, kSquare).measure.mass());
}
BENCHMARK(BM_VorticityMeasure)->DenseRange(6, 8);

static void BM_FlatNorm(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> pos(0.05, 0.95);
  AtomicMeasure mu;
  for (int k = 0; k < state.range(0); ++k) mu.add({pos(rng), pos(rng)}, k % 2 ? 1 : -1);
  for (auto _ : state) benchmark::DoNotOptimize(flat_norm(mu, kSquare));
}
BENCHMARK(BM_FlatNorm)->RangeMultiplier(2)->Range(4, 128);

static void BM_BallConstruction(benchmark::State& state) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> pos(0, 50), rad(0.05, 0.5);
  std::vector<Ball> balls;
  AtomicMeasure mu;
  while (static_cast<int>(balls.size()) < state.range(0)) {
    const Ball b{{pos(rng), pos(rng)}, rad(rng)};
    bool ok = true;
    for (const Ball& o : balls) ok = ok && norm(o.center - b.center) >= o.radius + b.radius;
    if (!ok) continue;
    balls.push_back(b);
    mu.add(b.center, balls.size() % 2 ? 1 : -1);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(ball_construct(balls, mu, 0.05, {0.0, 1.0, 10.0, 100.0}).families.size());
  }
}
BENCHMARK(BM_BallConstruction)->RangeMultiplier(2)->Range(8, 128);

static void BM_Extension(benchmark::State& state) {
  const double eps = std::ldexp(1.0, -static_cast<int>(state.range(0)));
  const SpinField v = sample_from_continuum([](Vec2 x) { return 0.3 * x.x - 0.2 * x.y * x.y; }, eps,
                                            Region::disk({0, 0}, 0.6));
  for (auto _ : state) {
    benchmark::DoNotOptimize(extend_zero_degree(v, Region::annulus({0, 0}, 0.25, 0.5)).energy_ball);
  }
}
BENCHMARK(BM_Extension)->DenseRange(5, 7)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
