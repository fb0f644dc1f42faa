#include <random>

#include "doctest.h"
#include "nilca/automaton.hpp"
#include "nilca/error.hpp"
#include "nilca/evolution.hpp"
#include "nilca/fixtures.hpp"
#include "oracles.hpp"

using namespace nilca;

namespace {

oracle::Grid grid_of(const FiniteConfig& x) {
  oracle::Grid g;
  for (const auto& [v, s] : x.cells()) g[v] = s;
  return g;
}

// Tube rule evaluation straight from the definition: read neighbors with
// the tube axis reduced mod p.
oracle::Grid tube_step(const oracle::TableCa& c, const oracle::Grid& quotient, int axis, Coord p,
                       const std::vector<CellVector>& cells) {
  auto at = [&](CellVector v) {
    v[axis] = floor_mod(v[axis], p);
    auto it = quotient.find(v);
    return it == quotient.end() ? Symbol{0} : it->second;
  };
  oracle::Grid out;
  for (const auto& v : cells) {
    std::size_t idx = 0;
    for (const auto& o : c.offsets) idx = idx * c.q + at(v + o);
    if (c.table[idx] != 0) out[v] = c.table[idx];
  }
  return out;
}

bool same_finite(const Configuration& a, const Configuration& b) {
  const auto* fa = a.as<FiniteConfig>();
  const auto* fb = b.as<FiniteConfig>();
  return fa && fb && *fa == *fb;
}

Configuration one_d(std::initializer_list<std::pair<Coord, Symbol>> cells, Symbol q = 2) {
  FiniteConfig x(1, {q});
  for (const auto& [p, s] : cells) x.set(CellVector{p}, s);
  return x;
}

}  // namespace

TEST_CASE("quiescent symbols") {
  CHECK(quiescent_symbols(make_builtin(Builtin::GameOfLife)) == std::vector<Symbol>{0});
  CHECK(quiescent_symbols(make_builtin(Builtin::Identity, 1, {4})) == std::vector<Symbol>{0, 1, 2, 3});
  CHECK(quiescent_symbols(make_builtin(Builtin::Countdown)) == std::vector<Symbol>{0});
}

TEST_CASE("table automata validate their shape") {
  const Neighborhood v({{0}, {1}});
  CHECK_THROWS_AS(make_table_automaton(1, {2}, v, {0, 1, 0}), Error);
  CHECK_THROWS_AS(make_table_automaton(1, {2}, v, {0, 1, 0, 2}), Error);
  CHECK_THROWS_AS(Neighborhood({{0}, {0}}), Error);
  CHECK_THROWS_AS((Neighborhood({{0}, {0, 1}})), Error);
  CHECK(make_table_automaton(1, {2}, v, {0, 1, 0, 1}).radius() == 1);
}

TEST_CASE("step examples") {
  const auto countdown = make_builtin(Builtin::Countdown, 2, {3});
  const FiniteConfig two(2, {3}, {{{0, 0}, 2}});
  CHECK(step(countdown, two) == FiniteConfig(2, {3}, {{{0, 0}, 1}}));

  const auto shift = make_builtin(Builtin::ShiftLeft);
  const auto moved = step(shift, one_d({{3, 1}}));
  CHECK(*moved.as<FiniteConfig>() == *one_d({{2, 1}}).as<FiniteConfig>());

  // 0 not quiescent.
  const auto ones = make_table_automaton(1, {2}, Neighborhood({CellVector{0}}), {1, 1});
  CHECK_THROWS_AS(step(ones, FiniteConfig(1, {2})), Error);
  TorusConfig t({2}, {3});
  CHECK(step(ones, t).get(CellVector{1}) == 1);
}

TEST_CASE("game of life glider moves diagonally") {
  const auto gol = make_builtin(Builtin::GameOfLife);
  const auto p1 = *find_seed("P1");
  const auto* start = p1.as<FiniteConfig>();
  REQUIRE(start);
  CHECK(start->cells().size() == 5);
  FiniteConfig x = *start;
  for (int i = 0; i < 4; ++i) {
    x = step(gol, x);
    CHECK(x.cells().size() == 5);
  }
  // The displaced support is the original one moved by some (+-1, +-1).
  bool found = false;
  for (Coord dx : {-1, 1}) {
    for (Coord dy : {-1, 1}) {
      FiniteConfig moved(2, {2});
      for (const auto& [v, s] : start->cells()) moved.set(v + CellVector{dx, dy}, s);
      found = found || moved == x;
    }
  }
  CHECK(found);
}

TEST_CASE("step agrees with the table oracle") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 1 + trial % 2;
    const Symbol q = static_cast<Symbol>(2 + trial % 2);
    const auto rule = oracle::random_rule(rng, d, q);
    const auto ca = rule.automaton();
    auto g = oracle::random_grid(rng, d, q, 6, 4);
    for (int t = 0; t < 3; ++t) {
      const auto next = oracle::step(rule, g);
      CHECK(step(ca, oracle::to_config(g, d, q)) == oracle::to_config(next, d, q));
      g = next;
    }
  }
}

TEST_CASE("torus and tube steps agree with the wraparound oracle") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const Symbol q = static_cast<Symbol>(2 + trial % 2);
    const auto rule = oracle::random_rule(rng, 2, q);
    const auto ca = rule.automaton();
    const Coord p = 1 + trial % 4;
    auto g = oracle::random_grid(rng, 2, q, 5, 3);
    TubeConfig tube(2, {q}, 1, p);
    oracle::Grid quotient;
    for (const auto& [v, s] : g) {
      CellVector r = v;
      r[1] = floor_mod(r[1], p);
      tube.set(r, s);
      quotient[r] = s;
    }
    const auto next = step(ca, tube);
    const auto cells = oracle::box_cells({-6, 0}, {6, p - 1});
    const auto expect = tube_step(rule, quotient, 1, p, cells);
    for (const auto& v : cells) {
      const auto it = expect.find(v);
      CHECK(next.get(v) == (it == expect.end() ? 0 : it->second));
    }

    TorusConfig torus({q}, {3, p});
    oracle::Grid flat;
    for (const auto& [v, s] : g) {
      CellVector r{floor_mod(v[0], 3), floor_mod(v[1], p)};
      torus.set(r, s);
      flat[r] = s;
    }
    const auto tnext = step(ca, torus);
    for (const auto& v : oracle::box_cells({0, 0}, {2, p - 1})) {
      std::size_t idx = 0;
      for (const auto& o : rule.offsets) {
        const CellVector w{floor_mod(v[0] + o[0], 3), floor_mod(v[1] + o[1], p)};
        const auto it = flat.find(w);
        idx = idx * q + (it == flat.end() ? 0 : it->second);
      }
      CHECK(tnext.get(v) == rule.table[idx]);
    }
  }
}

TEST_CASE("shift commutation") {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<Coord> off(-7, 7);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 1 + trial % 2;
    const auto rule = oracle::random_rule(rng, d, 3);
    const auto ca = rule.automaton();
    const Configuration x = oracle::to_config(oracle::random_grid(rng, d, 3, 5, 4), d, 3);
    std::vector<Coord> u(d);
    for (auto& c : u) c = off(rng);
    const CellVector v(u);
    CHECK(same_finite(step(ca, shift(x, v)), shift(step(ca, x), v)));
  }
}

TEST_CASE("support growth stays within the radius") {
  std::mt19937_64 rng(77);
  std::vector<CellularAutomaton> automata;
  for (const auto& name : fixture_names()) automata.push_back(fixture(name).automaton);
  for (int trial = 0; trial < 200; ++trial) {
    const auto& ca = automata[trial % automata.size()];
    const int d = ca.dimension();
    const Symbol q = ca.alphabet().size;
    const Configuration x = oracle::to_config(oracle::random_grid(rng, d, q, 1 + trial % 8, 6), d, q);
    const auto before = support(x);
    const auto after = support(step(ca, x));
    CHECK(after.is_subset_of(ball_enumerate(ca.radius(), before)));
  }
}

TEST_CASE("cone_eval examples") {
  const auto shift = make_builtin(Builtin::ShiftLeft);
  const auto x = one_d({{4, 1}, {-2, 1}});
  CHECK(cone_eval(shift, x, CellVector{4}, 0) == 1);
  CHECK(cone_eval(shift, x, CellVector{3}, 0) == 0);
  for (Coord k = 0; k < 12; ++k) {
    CHECK(cone_eval(shift, one_d({{k, 1}}), CellVector{0}, static_cast<int>(k)) == 1);
  }
}

TEST_CASE("cone_eval equals iterated step") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 1 + trial % 2;
    const Symbol q = static_cast<Symbol>(2 + trial % 2);
    const auto rule = oracle::random_rule(rng, d, q);
    const auto ca = rule.automaton();
    const int n = trial % 9;
    auto g = oracle::random_grid(rng, d, q, 5, 3);
    const Configuration x = oracle::to_config(g, d, q);
    for (int t = 0; t < n; ++t) g = oracle::step(rule, g);
    for (const auto& v : oracle::ball_offsets(d, d == 1 ? 6 : 3)) {
      const auto it = g.find(v);
      CHECK(cone_eval(ca, x, v, n) == (it == g.end() ? 0 : it->second));
    }
  }
}

TEST_CASE("trace examples") {
  const auto shift = make_builtin(Builtin::ShiftLeft);
  const auto a = trace(shift, one_d({{7, 1}}), CellVector{0}, 20);
  CHECK(a.support == std::vector<int>{7});
  CHECK_FALSE(a.truncated);
  CHECK(a.word.size() == 20);

  const auto countdown = make_builtin(Builtin::Countdown, 1, {3});
  const auto b = trace(countdown, one_d({{0, 2}}, 3), CellVector{0}, 10);
  CHECK(b.support == std::vector<int>{0, 1});
  CHECK(b.word[0] == 2);
  CHECK(b.word[1] == 1);

  const auto lr = make_builtin(Builtin::LrAnnihilation);
  const auto c = trace(lr, one_d({{-3, 2}, {5, 1}}, 3), CellVector{0}, 20);
  CHECK(c.support == std::vector<int>{3});

  // A late nonzero entry marks the report truncated.
  CHECK(trace(shift, one_d({{19, 1}}), CellVector{0}, 20).truncated);
  CHECK(trace(shift, one_d({{16, 1}}), CellVector{0}, 20).truncated);
  CHECK_FALSE(trace(shift, one_d({{14, 1}}), CellVector{0}, 20).truncated);
}

TEST_CASE("trace horizons are prefixes") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    const auto rule = oracle::random_rule(rng, 1, 3);
    const auto ca = rule.automaton();
    const Configuration x = oracle::to_config(oracle::random_grid(rng, 1, 3, 4, 5), 1, 3);
    const auto shortr = trace(ca, x, CellVector{0}, 10);
    const auto longr = trace(ca, x, CellVector{0}, 25);
    CHECK(std::equal(shortr.word.begin(), shortr.word.end(), longr.word.begin()));
    for (int n : shortr.support) CHECK(std::find(longr.support.begin(), longr.support.end(), n) != longr.support.end());
  }
}

TEST_CASE("power") {
  const auto shift = make_builtin(Builtin::ShiftLeft);
  const auto s3 = power(shift, 3);
  CHECK(*step(s3, one_d({{5, 1}})).as<FiniteConfig>() == *one_d({{2, 1}}).as<FiniteConfig>());

  const auto countdown = make_builtin(Builtin::Countdown, 2, {3});
  const auto c2 = power(countdown, 2);
  for (Symbol s = 0; s < 3; ++s) {
    CHECK(step(c2, FiniteConfig(2, {3}, {{{1, -4}, s}})).is_zero());
  }

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const int d = 1 + trial % 2;
    const auto rule = oracle::random_rule(rng, d, 2 + trial % 2);
    const auto ca = rule.automaton();
    const int n = 1 + trial % 4;
    const auto cn = power(ca, n);
    CHECK(cn.radius() == n * ca.radius());
    auto g = oracle::random_grid(rng, d, rule.q, 5, 3);
    const auto x = oracle::to_config(g, d, rule.q);
    for (int t = 0; t < n; ++t) g = oracle::step(rule, g);
    CHECK(step(cn, x) == oracle::to_config(g, d, rule.q));
  }
}

TEST_CASE("fold and unfold") {
  TubeConfig x(2, {2}, 1, 2);
  x.set(CellVector{0, 0}, 1);
  const auto f = fold(x);
  CHECK(f.dimension() == 1);
  CHECK(f.alphabet().size == 4);
  CHECK(f.cells().size() == 1);
  CHECK(f.get(CellVector{0}) == 1);  // column (1,0), little-endian
  x.set(CellVector{0, 1}, 1);
  CHECK(fold(x).get(CellVector{0}) == 3);
  CHECK(fold(TubeConfig(2, {2}, 1, 3)).is_zero());

  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const int axis = trial % 2;
    const Coord p = 1 + trial % 4;
    TubeConfig t(2, {3}, axis, p);
    for (const auto& [v, s] : oracle::random_grid(rng, 2, 3, 5, 4)) {
      CellVector r = v;
      r[axis] = floor_mod(r[axis], p);
      t.set(r, s);
    }
    const auto back = unfold(fold(t), axis, p, {3});
    CHECK(back == t);
    // Shift along the remaining axis commutes with folding.
    const int other = 1 - axis;
    const auto moved = shift(t, CellVector::unit(2, other, 1));
    const auto lhs = fold(*moved.as<TubeConfig>());
    const auto rhs = shift(fold(t), CellVector{1});
    CHECK(same_finite(lhs, rhs));
  }
}

TEST_CASE("reduce_dimension on game of life with period 1") {
  const auto r = reduce_dimension(make_builtin(Builtin::GameOfLife), 1, 1);
  CHECK(r.dimension() == 1);
  CHECK(r.alphabet().size == 2);
  CHECK(r.neighborhood() == Neighborhood::ball(1, 1));
  const std::vector<Symbol> lar{1, 1, 0};
  CHECK(r.apply(lar) == 0);
  const std::vector<Symbol> ldr{1, 0, 1};
  CHECK(r.apply(ldr) == 0);
  // Oracle over all columns: 2a + 3L + 3R live neighbors.
  for (Symbol l = 0; l < 2; ++l) {
    for (Symbol a = 0; a < 2; ++a) {
      for (Symbol rr = 0; rr < 2; ++rr) {
        const int live = 2 * a + 3 * l + 3 * rr;
        const Symbol expect = (live == 3 || (a == 1 && live == 2)) ? 1 : 0;
        const std::vector<Symbol> vals{l, a, rr};
        CHECK(r.apply(vals) == expect);
      }
    }
  }
}

TEST_CASE("reduce_dimension of identity is identity") {
  for (Coord p = 1; p <= 3; ++p) {
    const auto id = reduce_dimension(make_builtin(Builtin::Identity, 2, {3}), 0, p);
    const auto q = id.alphabet().size;
    CHECK(q == static_cast<Symbol>(p == 1 ? 3 : p == 2 ? 9 : 27));
    const auto center = static_cast<std::size_t>(id.neighborhood().size() / 2);
    std::vector<Symbol> vals(id.neighborhood().size(), 0);
    for (Symbol s = 0; s < q; ++s) {
      vals[center] = s;
      CHECK(id.apply(vals) == s);
    }
  }
  CHECK_THROWS_AS(reduce_dimension(make_builtin(Builtin::ShiftLeft), 0, 2), Error);
}

TEST_CASE("fold conjugacy on random rules") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const Symbol q = static_cast<Symbol>(2 + trial % 2);
    const auto ca = oracle::random_rule(rng, 2, q).automaton();
    const int axis = trial % 2;
    const Coord p = 1 + trial % 4;
    TubeConfig t(2, {q}, axis, p);
    for (const auto& [v, s] : oracle::random_grid(rng, 2, q, 6, 4)) {
      CellVector r = v;
      r[axis] = floor_mod(r[axis], p);
      t.set(r, s);
    }
    const auto reduced = reduce_dimension(ca, axis, p);
    CHECK(step(reduced, fold(t)) == fold(step(ca, t)));
  }
}

TEST_CASE("evolution steps overlays of finite parts on a tube") {
  const auto gol = make_builtin(Builtin::GameOfLife);
  TubeConfig column(2, {2}, 1, 9);
  const auto glider = *find_seed("P1");
  for (const auto& [v, s] : glider.as<FiniteConfig>()->cells()) {
    CellVector r = v;
    r[1] = floor_mod(r[1], 9);
    column.set(r, s);
  }
  const Configuration far = shift(*find_seed("P1"), CellVector{40, 0});
  Evolution e(gol, sum(column, far));
  Evolution a(gol, column);
  Evolution b(gol, far);
  for (int t = 0; t < 12; ++t) {
    for (const auto& v : oracle::box_cells({-45, -10}, {10, 10})) {
      CHECK(e.get(v) == (a.get(v) | b.get(v)));
    }
    e.advance();
    a.advance();
    b.advance();
  }
}
