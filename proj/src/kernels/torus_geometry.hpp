#pragma once

#include <cstddef>
#include <vector>

#include "nilca/automaton.hpp"

namespace nilca::kernels::detail {

// Wrapped neighbor indices of one torus cell, without allocating per cell.
class TorusGeometry {
 public:
  TorusGeometry(const Neighborhood& neighborhood, const TorusConfig& x)
      : periods_(x.periods()), offsets_(neighborhood.offsets()) {}

  int dimension() const { return static_cast<int>(periods_.size()); }

  // coords must have dimension() entries; out receives one index per offset.
  void neighbors(std::size_t index, std::vector<Coord>& coords,
                 std::vector<std::size_t>& out) const {
    const int d = dimension();
    for (int i = d - 1; i >= 0; --i) {
      const auto p = static_cast<std::size_t>(periods_[i]);
      coords[i] = static_cast<Coord>(index % p);
      index /= p;
    }
    for (std::size_t k = 0; k < offsets_.size(); ++k) {
      std::size_t idx = 0;
      for (int i = 0; i < d; ++i) {
        idx = idx * static_cast<std::size_t>(periods_[i]) +
              static_cast<std::size_t>(floor_mod(coords[i] + offsets_[k][i], periods_[i]));
      }
      out[k] = idx;
    }
  }

 private:
  std::vector<Coord> periods_;
  std::vector<CellVector> offsets_;
};

}  // namespace nilca::kernels::detail
