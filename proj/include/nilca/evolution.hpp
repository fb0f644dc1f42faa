#pragma once

#include <map>

#include "nilca/automaton.hpp"

namespace nilca {

// Orbit of a configuration under c, stepped in place. The state is a base
// of a single kind (finite, tube or torus) plus a finite map of overrides
// where the true configuration differs from the base. This covers overlays
// of finite patterns on a periodic background, which step() refuses.
class Evolution {
 public:
  Evolution(const CellularAutomaton& c, const Configuration& x);

  int time() const { return time_; }
  Symbol get(const CellVector& v) const;
  void advance();
  bool is_zero() const;

  const Configuration& base() const { return base_; }
  const std::map<CellVector, Symbol>& overrides() const { return overrides_; }

  // Cells that may be nonzero, when that set is finite (finite base).
  // Tube and torus bases report their stored slab plus overrides.
  CellSet active_cells() const;

  // The current state as a configuration.
  Configuration snapshot() const;

 private:
  const CellularAutomaton* c_;
  // Declared before base_: the constructor fills it while building base_.
  std::map<CellVector, Symbol> overrides_;
  Configuration base_;
  int time_ = 0;
};

}  // namespace nilca
