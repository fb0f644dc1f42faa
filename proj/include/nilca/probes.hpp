#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nilca/automaton.hpp"
#include "nilca/kernels.hpp"
#include "nilca/subshift.hpp"

namespace nilca {

enum class Verdict { Holds, Fails, Unknown };

const char* to_string(Verdict v);

struct Witness {
  std::optional<Pattern> window;
  std::optional<CellVector> cell;
  std::optional<int> time;
  std::optional<Word> word;
  std::string note;
};

struct ProbeReport {
  std::string probe;
  Verdict verdict = Verdict::Unknown;
  int horizon = 0;
  std::optional<Witness> witness;
  std::map<std::string, std::string> certificate;
  std::map<std::string, std::int64_t> stats;

  // Line-oriented form with a fixed key order:
  //   probe=, verdict=, horizon=, witness=, certificate=, stats.<key>=
  std::string to_text(Alphabet alphabet) const;
};

struct ProbeOptions {
  std::uint64_t window_guard = std::uint64_t{1} << 24;
  std::uint64_t torus_guard = std::uint64_t{1} << 20;
  std::uint64_t preimage_guard = std::uint64_t{1} << 20;
  std::uint64_t max_orbit = std::uint64_t{1} << 24;
  Execution execution = Execution::Parallel;
};

// Does c^n send every window B_{rn}(0) to 0 at the origin? Windows are
// tried uniform ones first, then in lexicographic order.
ProbeReport nilpotency_within(const CellularAutomaton& c, int n, const ProbeOptions& opts = {});

// Is there a chain of `depth` preimages above the 1-D word w?
ProbeReport deep_preimage(const CellularAutomaton& c, const Word& w, int depth,
                          const ProbeOptions& opts = {});

struct SampleMode {
  std::uint64_t seed = 0;
  std::uint64_t trials = 1000;
};

// Every window B_{k+rn}(0) has some j <= n with c^j zero on B_k(0).
// Exhaustive unless `sample` is set; a clean sampled run reports Unknown.
ProbeReport uniform_visit_bound(const CellularAutomaton& c, int k, int n,
                                std::optional<SampleMode> sample = std::nullopt,
                                const ProbeOptions& opts = {});

ProbeReport mortality_probe(const CellularAutomaton& c, const Configuration& x, int horizon,
                            const ProbeOptions& opts = {});

ProbeReport tower_confinement(const CellularAutomaton& c, const FiniteConfig& x, int axis,
                              Coord k, int horizon);

ProbeReport cycle_analysis(const CellularAutomaton& c, const TorusConfig& x,
                           const ProbeOptions& opts = {});

// c^j(a + b) = c^j(a) +_0 c^j(b) for j <= horizon.
ProbeReport check_disjoint_evolution(const CellularAutomaton& c, const Configuration& a,
                                     const Configuration& b, int horizon);

struct Layer {
  FiniteConfig pattern;
  CellVector offset;
  std::optional<std::pair<int, Coord>> period;  // (axis, p)
};

using LayerSpec = std::vector<Layer>;

// The configuration a layer contributes: pattern moved by offset, then
// periodized if requested.
Configuration layer_configuration(const Layer& layer);

struct Assembly {
  Configuration overlay;
  ProbeReport report;
};

Assembly assemble_witness(const CellularAutomaton& c, const LayerSpec& layers, int horizon);

// (r + 1) m + 2r + 1: a separation that keeps a layer which dies within
// m + 1 steps inside tower(axis, m, 0) apart from anything placed outside.
Coord suggested_separation(Coord r, Coord m);

}  // namespace nilca
