#include <vector>

#include "nilca/kernels.hpp"
#include "torus_geometry.hpp"

namespace nilca::kernels::serial {

void box_step(const CellularAutomaton& c, const BoxStepper& stepper,
              std::span<const Symbol> outer, std::span<Symbol> inner) {
  const auto deltas = stepper.deltas();
  std::vector<Symbol> values(deltas.size());
  for (std::size_t i = 0; i < stepper.inner_size(); ++i) {
    const auto base = static_cast<std::ptrdiff_t>(stepper.base(i));
    for (std::size_t k = 0; k < deltas.size(); ++k) values[k] = outer[base + deltas[k]];
    inner[i] = c.apply(values);
  }
}

TorusConfig torus_step(const CellularAutomaton& c, const TorusConfig& x) {
  TorusConfig out(x.alphabet(), x.periods());
  const detail::TorusGeometry geometry(c.neighborhood(), x);
  std::vector<Coord> coords(geometry.dimension());
  std::vector<std::size_t> idx(c.neighborhood().size());
  std::vector<Symbol> values(idx.size());
  const auto& in = x.cells();
  auto& result = out.mutable_cells();
  for (std::size_t i = 0; i < in.size(); ++i) {
    geometry.neighbors(i, coords, idx);
    for (std::size_t k = 0; k < idx.size(); ++k) values[k] = in[idx[k]];
    result[i] = c.apply(values);
  }
  return out;
}

}  // namespace nilca::kernels::serial
