#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nilca/automaton.hpp"
#include "nilca/subshift.hpp"

namespace nilca {

struct FixtureEntry {
  std::string name;
  std::string summary;
  CellularAutomaton automaton;
  std::optional<SoficPresentation> habitat;
  std::map<std::string, Configuration> seeds;
  std::vector<std::string> expectations;
};

// Throws UnknownName for names outside fixture_names().
const FixtureEntry& fixture(std::string_view name);
std::vector<std::string> fixture_names();

// Looks a seed up as "fixture:seed", or by a seed name that is unique
// across the registry (P1, P2, P3, ...).
std::optional<Configuration> find_seed(std::string_view ref);

// Natural numbers with a point at infinity; nullopt is infinity.
struct AlexandroffState {
  std::optional<std::uint64_t> value;

  static AlexandroffState infinity() { return {}; }
  static AlexandroffState of(std::uint64_t n) { return {n}; }
  bool is_infinity() const { return !value; }
  friend bool operator==(const AlexandroffState&, const AlexandroffState&) = default;
};

// n -> n-1 for 0 < n < inf; 0 -> inf; inf -> inf.
AlexandroffState alexandroff_step(AlexandroffState s);

// Steps from n until the first visit to infinity (always n + 1).
std::uint64_t alexandroff_hitting_time(std::uint64_t n);

}  // namespace nilca
