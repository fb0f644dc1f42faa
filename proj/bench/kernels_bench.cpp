// Serial reference kernels against their OpenMP versions.

#include <benchmark/benchmark.h>

#include <random>

#include "nilca/kernels.hpp"
#include "nilca/probes.hpp"

using namespace nilca;

namespace {

std::vector<Symbol> random_cells(std::size_t n, Symbol q, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Symbol> sym(0, q - 1);
  std::vector<Symbol> v(n);
  for (auto& s : v) s = sym(rng);
  return v;
}

template <Execution ex>
void box_step_life(benchmark::State& state) {
  const auto gol = make_builtin(Builtin::GameOfLife);
  const BoxStepper stepper(gol.neighborhood(), state.range(0));
  const auto in = random_cells(stepper.outer_size(), 2, 1);
  std::vector<Symbol> out(stepper.inner_size());
  for (auto _ : state) {
    kernels::box_step(ex, gol, stepper, in, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(out.size()));
}

template <Execution ex>
void torus_step_life(benchmark::State& state) {
  const auto gol = make_builtin(Builtin::GameOfLife);
  const Coord side = state.range(0);
  TorusConfig x({2}, {side, side});
  const auto cells = random_cells(x.volume(), 2, 2);
  for (std::size_t i = 0; i < cells.size(); ++i) x.set(x.cell_at(i), cells[i]);
  for (auto _ : state) {
    auto y = ex == Execution::Serial ? kernels::serial::torus_step(gol, x) : kernels::parallel::torus_step(gol, x);
    benchmark::DoNotOptimize(y);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(x.volume()));
}

template <Execution ex>
void nilpotency_windows(benchmark::State& state) {
  // (not l) and c and r: nilpotent with index 2, so every window is visited.
  const auto c = make_table_automaton(1, {2}, Neighborhood::ball(1, 1), {0, 0, 0, 1, 0, 0, 0, 0});
  ProbeOptions opts;
  opts.execution = ex;
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto r = nilpotency_within(c, n, opts);
    benchmark::DoNotOptimize(r);
  }
}

}  // namespace

BENCHMARK(box_step_life<Execution::Serial>)->Arg(256)->Arg(1024);
BENCHMARK(box_step_life<Execution::Parallel>)->Arg(256)->Arg(1024);
BENCHMARK(torus_step_life<Execution::Serial>)->Arg(256)->Arg(1024);
BENCHMARK(torus_step_life<Execution::Parallel>)->Arg(256)->Arg(1024);
BENCHMARK(nilpotency_windows<Execution::Serial>)->Arg(6)->Arg(8);
BENCHMARK(nilpotency_windows<Execution::Parallel>)->Arg(6)->Arg(8);

BENCHMARK_MAIN();
