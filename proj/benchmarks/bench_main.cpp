#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "maxvar/averages.hpp"
#include "maxvar/ball_geometry.hpp"
#include "maxvar/best_ball.hpp"
#include "maxvar/families.hpp"
#include "maxvar/grid.hpp"

namespace {

using namespace maxvar;

std::vector<AxisBall> balls(int count, double support) {
  std::mt19937_64 rng(11);
  std::vector<AxisBall> out(count);
  for (AxisBall& b : out) b = random_ball(rng, support);
  return out;
}

void BM_CapArea(benchmark::State& state) {
  const AmbientParams params(static_cast<int>(state.range(0)), 0.5);
  double t = 0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cap_area(t, 0.7, 0.5, params));
    t = t < 1.1 ? t + 1e-3 : 0.3;
  }
}
BENCHMARK(BM_CapArea)->Arg(2)->Arg(3)->Arg(5);

void BM_CapFirstMoment(benchmark::State& state) {
  const AmbientParams params(static_cast<int>(state.range(0)), 0.5);
  double t = 0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cap_first_moment(t, 0.7, 0.5, params));
    t = t < 1.1 ? t + 1e-3 : 0.3;
  }
}
BENCHMARK(BM_CapFirstMoment)->Arg(2)->Arg(3)->Arg(5);

void BM_BallAverage(benchmark::State& state) {
  std::mt19937_64 rng(5);
  const RadialProfile prof = random_profile(rng, 8);
  const AmbientParams params(static_cast<int>(state.range(0)), 0.5);
  const QuadratureConfig q;
  const std::vector<AxisBall> bs = balls(64, prof.support_radius());
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ball_average(prof, bs[i], params, q));
    i = (i + 1) % bs.size();
  }
}
BENCHMARK(BM_BallAverage)->Arg(1)->Arg(2)->Arg(3);

void BM_GradientAxial(benchmark::State& state) {
  std::mt19937_64 rng(5);
  const RadialProfile prof = random_profile(rng, 8);
  const AmbientParams params(2, 0.5);
  const QuadratureConfig q;
  const std::vector<AxisBall> bs = balls(64, prof.support_radius());
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(gradient_axial_component(prof, bs[i], params, q));
    i = (i + 1) % bs.size();
  }
}
BENCHMARK(BM_GradientAxial);

void BM_Search(benchmark::State& state) {
  const RadialProfile prof = standard_family().front().profile;
  const AmbientParams params(2, 0.5);
  const SearchConfig scfg;
  const QuadratureConfig q;
  for (auto _ : state) {
    benchmark::DoNotOptimize(search(prof, 0.7, params, scfg, q));
  }
}
BENCHMARK(BM_Search)->Unit(benchmark::kMillisecond);

void BM_MaximalProfile(benchmark::State& state) {
  const RadialProfile prof = standard_family().front().profile;
  const AmbientParams params(2, 0.5);
  const GridSpec grid = GridSpec::standard(prof.support_radius());
  const SearchConfig scfg;
  const QuadratureConfig q;
  for (auto _ : state) {
    benchmark::DoNotOptimize(maximal_profile(prof, grid, params, scfg, q));
  }
}
BENCHMARK(BM_MaximalProfile)->Unit(benchmark::kMillisecond)->Iterations(1);

}  // namespace

BENCHMARK_MAIN();
