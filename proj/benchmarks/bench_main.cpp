#include <benchmark/benchmark.h>

#include <cmath>

#include "shiftgreen/greens.hpp"
#include "shiftgreen/nystrom.hpp"
#include "shiftgreen/rayleigh.hpp"
#include "shiftgreen/specfun.hpp"
#include "shiftgreen/woodsolve.hpp"

using namespace shiftgreen;

namespace {

constexpr double kL = 2 * kPi;

WaveConfig littrow(double k) {
  WaveConfig w;
  w.period = kL;
  w.k = k;
  w.theta = std::asin(kPi / (k * kL));
  return w;
}

// R = 0.1 L circle, h = 2 height
ShiftConfig circle_shift(const geometry::NystromMesh& mesh, int j, double n_per, double k) {
  ShiftConfig s;
  s.j = j;
  s.h = 2.0 * mesh.height();
  s.window = n_per * kL;
  s.gamma = k;
  return s;
}

}  // namespace

static void BM_Hankel(benchmark::State& state) {
  const double x0 = static_cast<double>(state.range(0));
  double x = x0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(specfun::hankel1_01(x));
    x = x < 2 * x0 ? x + 1e-3 : x0;
  }
}
BENCHMARK(BM_Hankel)->Arg(1)->Arg(12)->Arg(1000);

static void BM_LatticeSum(benchmark::State& state) {
  const int j = static_cast<int>(state.range(0));
  const WaveConfig w = littrow(1.5);
  ShiftConfig s;
  s.j = j;
  s.h = 1.5;
  s.window = static_cast<double>(state.range(1)) * kL;
  const greens::WindowedLattice lattice(s, w);
  for (auto _ : state) benchmark::DoNotOptimize(lattice.evaluate(0.3, 0.2));
  state.SetItemsProcessed(state.iterations() * state.range(1) * 2 * (j + 1));
}
BENCHMARK(BM_LatticeSum)->Args({0, 100})->Args({5, 200})->Args({5, 1000});

static void BM_Assembly(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto mesh = geometry::build_mesh(geometry::make_circle(0.1 * kL), n);
  const WaveConfig w = littrow(1.5);
  const ShiftConfig s = circle_shift(mesh, 5, 200, w.k);
  const auto modes = rayleigh::build_modes(w, s);
  for (auto _ : state) benchmark::DoNotOptimize(nystrom::assemble_Ak(mesh, w, s, modes));
}
BENCHMARK(BM_Assembly)->Arg(18)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_Solve(benchmark::State& state) {
  const double k = state.range(0) / 100.0;
  const auto mesh = geometry::build_mesh(geometry::make_circle(0.1 * kL), 18);
  const WaveConfig w = littrow(k);
  const ShiftConfig s = circle_shift(mesh, 5, 200, k);
  for (auto _ : state) benchmark::DoNotOptimize(woodsolve::solve(mesh, w, s));
}
BENCHMARK(BM_Solve)->Arg(100)->Arg(149)->Arg(150)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
