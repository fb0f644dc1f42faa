#pragma once

#include <cstdint>
#include <optional>

namespace nilca {

struct CycleShape {
  std::uint64_t preperiod = 0;
  std::uint64_t period = 0;
  std::uint64_t evaluations = 0;
};

// Brent's cycle detection on the orbit of x0 under f. Gives up (nullopt)
// once the hare has taken `max_steps` steps without closing a cycle.
template <class State, class Step>
std::optional<CycleShape> brent(const State& x0, Step&& f, std::uint64_t max_steps) {
  CycleShape shape;
  std::uint64_t power = 1;
  std::uint64_t lam = 1;
  State tortoise = x0;
  State hare = f(x0);
  shape.evaluations = 1;
  while (!(tortoise == hare)) {
    if (shape.evaluations >= max_steps) return std::nullopt;
    if (power == lam) {
      tortoise = hare;
      power *= 2;
      lam = 0;
    }
    hare = f(hare);
    ++shape.evaluations;
    ++lam;
  }
  shape.period = lam;

  tortoise = x0;
  hare = x0;
  for (std::uint64_t i = 0; i < lam; ++i) {
    hare = f(hare);
    ++shape.evaluations;
  }
  while (!(tortoise == hare)) {
    tortoise = f(tortoise);
    hare = f(hare);
    shape.evaluations += 2;
    ++shape.preperiod;
  }
  return shape;
}

}  // namespace nilca
