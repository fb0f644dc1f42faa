#include <random>

#include "doctest.h"
#include "nilca/kernels.hpp"
#include "oracles.hpp"

using namespace nilca;

TEST_CASE("serial and parallel box steps agree") {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 30; ++trial) {
    const int d = 1 + trial % 2;
    const auto ca = oracle::random_rule(rng, d, 2 + trial % 3).automaton();
    const Coord outer = d == 1 ? 3000 : 60;
    const BoxStepper stepper(ca.neighborhood(), outer);
    std::vector<Symbol> in(stepper.outer_size());
    std::uniform_int_distribution<Symbol> sym(0, ca.alphabet().size - 1);
    for (auto& s : in) s = sym(rng);
    std::vector<Symbol> a(stepper.inner_size()), b(stepper.inner_size());
    kernels::serial::box_step(ca, stepper, in, a);
    kernels::parallel::box_step(ca, stepper, in, b);
    CHECK(a == b);
  }
}

TEST_CASE("box step matches the table oracle") {
  std::mt19937_64 rng(102);
  for (int trial = 0; trial < 20; ++trial) {
    const int d = 1 + trial % 2;
    const auto rule = oracle::random_rule(rng, d, 3);
    const auto ca = rule.automaton();
    const Coord outer = 5;
    const BoxStepper stepper(ca.neighborhood(), outer);
    const Box big(CellVector::zero(d), outer), small(CellVector::zero(d), outer - 1);
    std::vector<Symbol> in(stepper.outer_size());
    oracle::Grid g;
    std::uniform_int_distribution<Symbol> sym(0, 2);
    for (std::size_t i = 0; i < in.size(); ++i) {
      in[i] = sym(rng);
      if (in[i]) g[big.cell_at(i)] = in[i];
    }
    std::vector<Symbol> out(stepper.inner_size());
    kernels::serial::box_step(ca, stepper, in, out);
    for (std::size_t i = 0; i < out.size(); ++i) CHECK(out[i] == rule.eval(g, small.cell_at(i)));
  }
}

TEST_CASE("serial and parallel torus steps agree") {
  std::mt19937_64 rng(103);
  for (int trial = 0; trial < 20; ++trial) {
    const int d = 1 + trial % 2;
    const auto ca = oracle::random_rule(rng, d, 3).automaton();
    std::vector<Coord> periods(d, d == 1 ? 5000 : 70);
    periods[0] += trial;
    TorusConfig x({3}, periods);
    std::uniform_int_distribution<Symbol> sym(0, 2);
    for (std::size_t i = 0; i < x.volume(); ++i) x.set(x.cell_at(i), sym(rng));
    CHECK(kernels::serial::torus_step(ca, x) == kernels::parallel::torus_step(ca, x));
  }
}

TEST_CASE("first failure is the minimum failing index") {
  std::mt19937_64 rng(104);
  for (int trial = 0; trial < 50; ++trial) {
    const std::uint64_t count = 1 + rng() % 100000;
    std::vector<bool> fail(count);
    const int hits = trial % 5;
    for (int h = 0; h < hits; ++h) fail[rng() % count] = true;
    auto pred = [&](std::uint64_t i) { return static_cast<bool>(fail[i]); };
    const auto s = kernels::serial::first_failure(count, pred);
    const auto p = kernels::parallel::first_failure(count, pred);
    CHECK(s == p);
    if (s) {
      CHECK(fail[*s]);
      for (std::uint64_t i = 0; i < *s; ++i) REQUIRE_FALSE(fail[i]);
    } else {
      CHECK(hits == 0);
    }
  }
  CHECK_FALSE(kernels::parallel::first_failure(0, [](std::uint64_t) { return true; }));
}
