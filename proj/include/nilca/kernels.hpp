#pragma once

// Data-parallel inner loops. Each kernel has a serial reference in
// kernels::serial and an OpenMP version in kernels::parallel with identical
// results; tests compare the two and bench/ times them.

#include <atomic>
#include <cstdint>
#include <optional>
#include <span>

#include "nilca/automaton.hpp"

namespace nilca {

enum class Execution { Serial, Parallel };

namespace kernels {

namespace serial {

// One dense step from the box B_R(0) to B_{R-r}(0).
void box_step(const CellularAutomaton& c, const BoxStepper& stepper,
              std::span<const Symbol> outer, std::span<Symbol> inner);

TorusConfig torus_step(const CellularAutomaton& c, const TorusConfig& x);

// Smallest index in [0, count) for which `fails` is true.
template <class Fails>
std::optional<std::uint64_t> first_failure(std::uint64_t count, Fails&& fails) {
  for (std::uint64_t i = 0; i < count; ++i) {
    if (fails(i)) return i;
  }
  return std::nullopt;
}

}  // namespace serial

namespace parallel {

void box_step(const CellularAutomaton& c, const BoxStepper& stepper,
              std::span<const Symbol> outer, std::span<Symbol> inner);

TorusConfig torus_step(const CellularAutomaton& c, const TorusConfig& x);

// Same contract as serial::first_failure: the minimum failing index wins
// regardless of which thread finds it first. `fails` must not throw.
template <class Fails>
std::optional<std::uint64_t> first_failure(std::uint64_t count, Fails&& fails) {
  std::atomic<std::uint64_t> best{count};
  const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto idx = static_cast<std::uint64_t>(i);
    if (idx >= best.load(std::memory_order_relaxed)) continue;
    if (fails(idx)) {
      std::uint64_t current = best.load(std::memory_order_relaxed);
      while (idx < current && !best.compare_exchange_weak(current, idx)) {
      }
    }
  }
  const std::uint64_t found = best.load();
  if (found == count) return std::nullopt;
  return found;
}

}  // namespace parallel

inline void box_step(Execution ex, const CellularAutomaton& c, const BoxStepper& stepper,
                     std::span<const Symbol> outer, std::span<Symbol> inner) {
  if (ex == Execution::Parallel) {
    parallel::box_step(c, stepper, outer, inner);
  } else {
    serial::box_step(c, stepper, outer, inner);
  }
}

template <class Fails>
std::optional<std::uint64_t> first_failure(Execution ex, std::uint64_t count, Fails&& fails) {
  if (ex == Execution::Parallel) return parallel::first_failure(count, fails);
  return serial::first_failure(count, fails);
}

}  // namespace kernels
}  // namespace nilca
