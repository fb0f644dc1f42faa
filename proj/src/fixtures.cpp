#include "nilca/fixtures.hpp"

#include <algorithm>

#include "nilca/error.hpp"
#include "nilca/text_format.hpp"

namespace nilca {

namespace {

// Game of Life patterns, y pointing up. P1 is a glider heading to (-1,-1),
// P2 the 36-cell Gosper glider gun, P3 a lightweight spaceship heading to -x.
constexpr std::string_view kGlider = R"(%CA-CONFIG v1
dim: 2
alphabet: 2
kind: finite
cells:
(6,7)=1
(5,6)=1
(5,5)=1
(6,5)=1
(7,5)=1
)";

constexpr std::string_view kGosperGun = R"(%CA-CONFIG v1
dim: 2
alphabet: 2
kind: finite
cells:
(-56,38)=1
(-56,39)=1
(-55,38)=1
(-55,39)=1
(-46,37)=1
(-46,38)=1
(-46,39)=1
(-45,36)=1
(-45,40)=1
(-44,35)=1
(-44,41)=1
(-43,35)=1
(-43,41)=1
(-42,38)=1
(-41,36)=1
(-41,40)=1
(-40,37)=1
(-40,38)=1
(-40,39)=1
(-39,38)=1
(-36,39)=1
(-36,40)=1
(-36,41)=1
(-35,39)=1
(-35,40)=1
(-35,41)=1
(-34,38)=1
(-34,42)=1
(-32,37)=1
(-32,38)=1
(-32,42)=1
(-32,43)=1
(-22,40)=1
(-22,41)=1
(-21,40)=1
(-21,41)=1
)";

constexpr std::string_view kSpaceship = R"(%CA-CONFIG v1
dim: 2
alphabet: 2
kind: finite
cells:
(81,-2)=1
(81,0)=1
(80,1)=1
(79,1)=1
(78,1)=1
(77,1)=1
(77,0)=1
(77,-1)=1
(78,-2)=1
)";

FiniteConfig line(Alphabet a, std::initializer_list<std::pair<Coord, Symbol>> cells) {
  FiniteConfig x(1, a);
  for (const auto& [i, s] : cells) x.set(CellVector{i}, s);
  return x;
}

std::vector<FixtureEntry> build() {
  std::vector<FixtureEntry> out;
  constexpr Symbol l = 1, r = 2;

  FixtureEntry shift{"shift-single-one",
                     "shift-left on the sofic shift of configurations with at most one 1",
                     make_builtin(Builtin::ShiftLeft),
                     single_one_presentation(),
                     {},
                     {"every trace support is finite", "a 1 at n gives trace support {n}",
                      "not nilpotent: no uniform bound on the death time"}};
  shift.seeds.emplace("one-at-7", line({2}, {{7, 1}}));
  shift.seeds.emplace("one-at-0", line({2}, {{0, 1}}));
  out.push_back(std::move(shift));

  FixtureEntry lr{"lr-annihilation",
                  "l (1) moves left, r (2) moves right, colliding pairs vanish",
                  make_builtin(Builtin::LrAnnihilation),
                  lr_presentation(),
                  {},
                  {"an r/l pair with gap g dies after ceil(g/2) steps",
                   "asymptotically nilpotent but not nilpotent on its habitat"}};
  lr.seeds.emplace("approaching-pair", line({3}, {{-10, r}, {10, l}}));
  lr.seeds.emplace("close-pair", line({3}, {{-3, r}, {3, l}}));
  lr.seeds.emplace("diverging-pair", line({3}, {{0, l}, {5, r}}));
  lr.seeds.emplace("lone-r", line({3}, {{-10, r}}));
  lr.seeds.emplace("lone-l", line({3}, {{10, l}}));
  out.push_back(std::move(lr));

  FixtureEntry life{"game-of-life",
                    "B3/S23 with the glider P1, the Gosper gun P2 and the spaceship P3",
                    make_builtin(Builtin::GameOfLife),
                    std::nullopt,
                    {},
                    {"P1 moves by (-1,-1) every 4 steps and leaves every vertical tower",
                     "P2 emits a glider every 30 steps", "P3 moves by (-2,0) every 4 steps"}};
  life.seeds.emplace("P1", parse_config(kGlider));
  life.seeds.emplace("P2", parse_config(kGosperGun));
  life.seeds.emplace("P3", parse_config(kSpaceship));
  out.push_back(std::move(life));

  FixtureEntry xorpair{"xor-pair",
                       "x_v + x_{v+1} mod 2; a single 1 never dies",
                       make_builtin(Builtin::XorPair),
                       std::nullopt,
                       {},
                       {"a single 1 spreads as Pascal's triangle mod 2",
                        "on Z_3 the orbit of (1,0,0) has preperiod 1 and period 3"}};
  xorpair.seeds.emplace("single-one", line({2}, {{0, 1}}));
  TorusConfig ring(Alphabet{2}, {3});
  ring.set(CellVector{0}, 1);
  xorpair.seeds.emplace("ring-100", ring);
  out.push_back(std::move(xorpair));

  FixtureEntry countdown{"countdown",
                         "s -> max(s - 1, 0) on three symbols",
                         make_builtin(Builtin::Countdown),
                         std::nullopt,
                         {},
                         {"nilpotent with index 2"}};
  countdown.seeds.emplace("center-two", line({3}, {{0, 2}}));
  out.push_back(std::move(countdown));
  return out;
}

const std::vector<FixtureEntry>& registry() {
  static const std::vector<FixtureEntry> entries = build();
  return entries;
}

}  // namespace

const FixtureEntry& fixture(std::string_view name) {
  for (const auto& e : registry()) {
    if (e.name == name) return e;
  }
  throw Error(ErrorKind::UnknownName, "unknown fixture '" + std::string(name) + "'");
}

std::vector<std::string> fixture_names() {
  std::vector<std::string> names;
  for (const auto& e : registry()) names.push_back(e.name);
  return names;
}

std::optional<Configuration> find_seed(std::string_view ref) {
  if (const auto colon = ref.find(':'); colon != std::string_view::npos) {
    const auto name = ref.substr(0, colon);
    const auto seed = std::string(ref.substr(colon + 1));
    for (const auto& e : registry()) {
      if (e.name != name) continue;
      if (auto it = e.seeds.find(seed); it != e.seeds.end()) return it->second;
    }
    return std::nullopt;
  }
  std::optional<Configuration> found;
  for (const auto& e : registry()) {
    if (auto it = e.seeds.find(std::string(ref)); it != e.seeds.end()) {
      if (found) return std::nullopt;
      found = it->second;
    }
  }
  return found;
}

AlexandroffState alexandroff_step(AlexandroffState s) {
  if (!s.value || *s.value == 0) return AlexandroffState::infinity();
  return AlexandroffState::of(*s.value - 1);
}

std::uint64_t alexandroff_hitting_time(std::uint64_t n) {
  AlexandroffState s = AlexandroffState::of(n);
  std::uint64_t steps = 0;
  while (!s.is_infinity()) {
    s = alexandroff_step(s);
    ++steps;
  }
  return steps;
}

}  // namespace nilca
