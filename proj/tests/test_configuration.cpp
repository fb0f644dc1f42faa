#include <random>

#include "doctest.h"
#include "nilca/configuration.hpp"
#include "nilca/error.hpp"
#include "oracles.hpp"

using namespace nilca;

namespace {

FiniteConfig random_finite(std::mt19937_64& rng, int dim, Symbol q, int cells, Coord spread) {
  return oracle::to_config(oracle::random_grid(rng, dim, q, cells, spread), dim, q);
}

std::vector<CellVector> window_cells(int dim, Coord r) {
  return oracle::box_cells(std::vector<Coord>(dim, -r), std::vector<Coord>(dim, r));
}

}  // namespace

TEST_CASE("get on each kind") {
  FiniteConfig f(2, {3}, {{{2, 3}, 1}});
  CHECK(f.get(CellVector{2, 3}) == 1);
  CHECK(f.get(CellVector{0, 0}) == 0);

  TubeConfig t(2, {3}, 1, 3);
  t.set(CellVector{0, 1}, 2);
  CHECK(t.get(CellVector{0, 7}) == 2);
  CHECK(t.get(CellVector{0, -2}) == 2);
  CHECK(t.get(CellVector{1, 7}) == 0);

  TorusConfig torus({2}, {3, 4});
  torus.set(CellVector{1, 2}, 1);
  CHECK(torus.get(CellVector{4, 6}) == 1);
  CHECK(torus.get(CellVector{-2, -2}) == 1);
  CHECK(torus.volume() == 12);
}

TEST_CASE("finite configurations never store zeros") {
  FiniteConfig f(1, {3});
  f.set(CellVector{4}, 2);
  f.set(CellVector{4}, 0);
  CHECK(f.is_zero());
  CHECK(f.cells().empty());
  CHECK_THROWS_AS(f.set(CellVector{1}, 3), Error);
  CHECK_THROWS_AS(f.set((CellVector{1, 2}), 1), Error);
}

TEST_CASE("shift examples") {
  const Configuration x = FiniteConfig(2, {2}, {{{5, 5}, 1}});
  const auto moved = shift(x, CellVector{5, 5});
  CHECK(moved.get(CellVector{0, 0}) == 1);
  CHECK(moved.kind() == ConfigKind::Finite);
  CHECK(*moved.as<FiniteConfig>() == FiniteConfig(2, {2}, {{{0, 0}, 1}}));
  CHECK(*shift(x, CellVector{0, 0}).as<FiniteConfig>() == *x.as<FiniteConfig>());

  TubeConfig t(2, {2}, 1, 2);
  t.set(CellVector{0, 0}, 1);
  t.set(CellVector{3, 1}, 1);
  const auto shifted = shift(t, CellVector{0, 2});
  CHECK(shifted.kind() == ConfigKind::Tube);
  CHECK(equal_on(shifted, t, CellSet(window_cells(2, 5))));
}

TEST_CASE("shift composes additively") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<Coord> c(-5, 5);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 1 + trial % 3;
    const Configuration x = random_finite(rng, d, 3, 4, 4);
    std::vector<Coord> a(d), b(d);
    for (auto& v : a) v = c(rng);
    for (auto& v : b) v = c(rng);
    const CellVector u(a), v(b);
    const auto lhs = shift(shift(x, u), v);
    const auto rhs = shift(x, u + v);
    for (const auto& w : window_cells(d, d == 3 ? 4 : 8)) {
      CHECK(lhs.get(w) == rhs.get(w));
      CHECK(lhs.get(w) == x.get(w + u + v));
    }
  }
}

TEST_CASE("sum examples") {
  const Configuration a = FiniteConfig(2, {3}, {{{0, 0}, 1}});
  const Configuration b = FiniteConfig(2, {3}, {{{5, 0}, 2}});
  const auto s = sum(a, b);
  REQUIRE(s.kind() == ConfigKind::Finite);
  CHECK(s.as<FiniteConfig>()->cells().size() == 2);
  CHECK_THROWS_AS(sum(a, FiniteConfig(2, {3}, {{{0, 0}, 2}})), Error);
  const auto e = sum(a, FiniteConfig(2, {3}));
  CHECK(*e.as<FiniteConfig>() == *a.as<FiniteConfig>());
}

TEST_CASE("overlay checks disjointness lazily for periodic parts") {
  TubeConfig t(2, {2}, 1, 4);
  t.set(CellVector{0, 0}, 1);
  const Configuration far = FiniteConfig(2, {2}, {{{10, 3}, 1}});
  const auto ok = sum(t, far);
  CHECK(ok.kind() == ConfigKind::Overlay);
  CHECK(ok.get(CellVector{0, 8}) == 1);
  CHECK(ok.get(CellVector{10, 3}) == 1);
  CHECK(ok.get(CellVector{5, 5}) == 0);
  // A finite part sitting on a lift of the tube is caught eagerly.
  CHECK_THROWS_AS(sum(t, FiniteConfig(2, {2}, {{{0, 12}, 1}})), Error);
  // Two tubes along one axis are checked over the lcm of their periods.
  TubeConfig u(2, {2}, 1, 6);
  u.set(CellVector{0, 4}, 1);
  CHECK_THROWS_AS(sum(t, u), Error);
}

TEST_CASE("sum is commutative and associative") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    const auto x = random_finite(rng, 2, 3, 3, 3);
    FiniteConfig y(2, {3}), z(2, {3});
    const auto ys = random_finite(rng, 2, 3, 3, 3);
    const auto zs = random_finite(rng, 2, 3, 3, 3);
    for (const auto& [v, s] : ys.cells()) y.set(v + CellVector{20, 0}, s);
    for (const auto& [v, s] : zs.cells()) z.set(v + CellVector{0, 20}, s);
    const auto a = sum(sum(x, y), z);
    const auto b = sum(x, sum(y, z));
    const auto c = sum(sum(z, y), x);
    for (const auto& w : oracle::box_cells({-5, -5}, {25, 25})) {
      CHECK(a.get(w) == b.get(w));
      CHECK(a.get(w) == c.get(w));
    }
    CHECK(support(a) == x.support().united(y.support()).united(z.support()));
  }
}

TEST_CASE("overlays of finite parts flatten pointwise") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    const auto x = random_finite(rng, 2, 3, 4, 3);
    const auto y = shift(random_finite(rng, 2, 3, 4, 3), CellVector{-12, 0});
    const Configuration overlay = OverlayConfig(2, {3}, {Configuration(x), y});
    const auto flat = flatten(overlay);
    REQUIRE(flat);
    const auto domain = ball_enumerate(2, flat->support());
    for (const auto& w : domain) CHECK(flat->get(w) == overlay.get(w));
  }
}

TEST_CASE("periodize") {
  const FiniteConfig one(2, {2}, {{{0, 0}, 1}});
  const auto column = periodize(one, 1, 1);
  for (Coord y = -5; y <= 5; ++y) CHECK(column.get(CellVector{0, y}) == 1);
  CHECK(column.get(CellVector{1, 0}) == 0);

  const FiniteConfig tall(2, {2}, {{{0, 0}, 1}, {{1, 1}, 1}, {{0, 2}, 1}, {{2, 2}, 1}, {{1, 2}, 1}});
  CHECK_THROWS_AS(periodize(tall, 1, 2), Error);
  const auto tube = periodize(tall, 1, 9);
  CHECK(tube.cells().size() == 5);
  // Equal to x inside one fundamental slab.
  for (const auto& w : oracle::box_cells({-3, 0}, {5, 8})) CHECK(tube.get(w) == tall.get(w));
  CHECK(tube.get(CellVector{1, 10}) == 1);
  CHECK(tube.get(CellVector{1, -8}) == 1);
}

TEST_CASE("window and support") {
  CHECK(window(FiniteConfig(1, {2}), CellSet{}).empty());
  const Configuration x = FiniteConfig(2, {3}, {{{1, 1}, 2}});
  const auto w = window(x, ball_enumerate(1, CellSet{{1, 1}}));
  CHECK(w.size() == 9);
  CHECK(std::count_if(w.begin(), w.end(), [](const auto& e) { return e.second == 2; }) == 1);

  const Configuration far = sum(x, FiniteConfig(2, {3}, {{{50, 50}, 1}}));
  const auto part = window(far, ball_enumerate(1, CellSet{{1, 1}}));
  for (const auto& [v, s] : part) CHECK(s == x.get(v));

  CHECK(support(FiniteConfig(2, {2})).empty());
  CHECK(support(FiniteConfig(2, {3}, {{{2, 3}, 1}, {{4, 4}, 2}})) == CellSet{{2, 3}, {4, 4}});
  TubeConfig t(2, {2}, 1, 3);
  t.set(CellVector{0, 4}, 1);
  CHECK(support(t) == CellSet{{0, 1}});
}

TEST_CASE("collapse merges periodic parts of one kind") {
  TubeConfig a(2, {2}, 1, 2), b(2, {2}, 1, 3);
  a.set(CellVector{0, 0}, 1);
  b.set(CellVector{4, 0}, 1);
  const auto merged = collapse(OverlayConfig(2, {2}, {Configuration(a), Configuration(b)}));
  REQUIRE(merged);
  const auto* tube = merged->as<TubeConfig>();
  REQUIRE(tube);
  CHECK(tube->period() == 6);
  for (const auto& w : oracle::box_cells({-1, -7}, {5, 7})) CHECK(tube->get(w) == a.get(w) + b.get(w));

  TubeConfig across(2, {2}, 0, 2);
  across.set(CellVector{0, 9}, 1);
  CHECK_FALSE(collapse(OverlayConfig(2, {2}, {Configuration(a), Configuration(across)})));
}
