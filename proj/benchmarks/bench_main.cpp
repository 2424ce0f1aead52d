#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "hhj/ensemble.hpp"
#include "hhj/helmholtz.hpp"
#include "hhj/klein_gordon.hpp"
#include "hhj/madelung.hpp"
#include "hhj/operators.hpp"
#include "hhj/poisson.hpp"
#include "hhj/rotor.hpp"

using namespace hhj;

namespace {

Grid cube(const benchmark::State& st) { return Grid::cube(3, static_cast<std::size_t>(st.range(0)), 0, 1); }

ScalarField smooth(const Grid& g) {
  return ScalarField::sample(g, [](const Point& p) { return std::sin(3 * p[0]) * std::cos(2 * p[1]) + p[2] * p[2]; });
}

}  // namespace

static void BM_Gradient(benchmark::State& st) {
  const ScalarField s = smooth(cube(st));
  for (auto _ : st) benchmark::DoNotOptimize(gradient(s));
  st.SetItemsProcessed(st.iterations() * static_cast<int64_t>(s.grid().size()));
}
BENCHMARK(BM_Gradient)->Arg(17)->Arg(33)->Arg(65);

static void BM_Laplacian(benchmark::State& st) {
  const ScalarField s = smooth(cube(st));
  for (auto _ : st) benchmark::DoNotOptimize(laplacian(s));
  st.SetItemsProcessed(st.iterations() * static_cast<int64_t>(s.grid().size()));
}
BENCHMARK(BM_Laplacian)->Arg(17)->Arg(33)->Arg(65);

static void BM_NeumannSolve(benchmark::State& st) {
  const Grid g = cube(st);
  const auto f = VectorField::sample(g, 3, [](const Point& p) {
    return Point{std::sin(3 * p[1]), p[0] * p[2], std::cos(2 * p[0])};
  });
  const ScalarField src = divergence(f);
  const BoundaryField bc = boundary_normal_component(f);
  SolverConfig cfg;
  cfg.method = st.range(1) == 0 ? SolverMethod::conjugate_gradient : SolverMethod::successive_over_relaxation;
  for (auto _ : st) benchmark::DoNotOptimize(solve_scalar_neumann(src, bc, cfg));
}
BENCHMARK(BM_NeumannSolve)->Args({17, 0})->Args({33, 0})->Args({17, 1})->Unit(benchmark::kMillisecond);

static void BM_Decompose(benchmark::State& st) {
  const Grid g = Grid::cube(3, static_cast<std::size_t>(st.range(0)), -0.5, 0.5);
  const auto f = VectorField::sample(g, 3, [](const Point& p) { return Point{-p[1], p[0], 0}; });
  for (auto _ : st) benchmark::DoNotOptimize(decompose(f, SolverConfig{}));
}
BENCHMARK(BM_Decompose)->Arg(17)->Arg(33)->Unit(benchmark::kMillisecond);

static void BM_EnsembleLeapfrog(benchmark::State& st) {
  const RotorScenario sc;
  const Grid lat = Grid::cube(2, 65, -1, 1);
  const Ensemble e = seed_ensemble(lat, [&](const Point& q) { return momentum_field(q, 0.0, sc); }, 0.0);
  const HamiltonianSpec h = free_hamiltonian(1.0);
  for (auto _ : st) benchmark::DoNotOptimize(integrate_ensemble(e, h, 0.01, 100));
}
BENCHMARK(BM_EnsembleLeapfrog)->Unit(benchmark::kMillisecond);

static void BM_EnsembleMidpoint(benchmark::State& st) {
  const RotorScenario sc;
  const Grid lat = Grid::cube(2, 33, -1, 1);
  const Ensemble e = seed_ensemble(lat, [](const Point&) { return Point{}; }, 0.0);
  const HamiltonianSpec h = rotor_hamiltonian(sc);
  for (auto _ : st) benchmark::DoNotOptimize(integrate_ensemble(e, h, 0.01, 20));
}
BENCHMARK(BM_EnsembleMidpoint)->Unit(benchmark::kMillisecond);

static void BM_MadelungPipeline(benchmark::State& st) {
  const PhysicalConstants pc;
  const auto n = static_cast<std::size_t>(st.range(0));
  const Grid g({n, n}, {0, 0}, {2 * std::numbers::pi, 2 * std::numbers::pi});
  const ComplexField f = make_superposition({{1.0, 1.0}, {0.5, 2.0}}, pc, g);
  for (auto _ : st) {
    MadelungState m = madelung(f, pc);
    solve_omega(m, pc);
    benchmark::DoNotOptimize(kg_residual(f, pc));
    benchmark::DoNotOptimize(quantum_hj_residual(m, pc));
  }
}
BENCHMARK(BM_MadelungPipeline)->Arg(129)->Arg(257)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
