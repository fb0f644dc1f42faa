#pragma once

#include <string>

#include "nilca/automaton.hpp"

namespace nilca {

// Glyphs: 0 '.', 1 '#', 2 'o', 3 '+', 4 '*', 5 '@', 6..31 'a'..'z',
// anything larger '?'.
char glyph(Symbol s);

// Slice of x over axes (ax, ay) between the corners lo and hi (inclusive);
// coordinates on other axes are taken from lo. Rows run from the largest
// ay coordinate down, columns from the smallest ax coordinate up. A 1-D
// configuration renders as one row.
std::string render_window(const Configuration& x, const CellVector& lo, const CellVector& hi,
                          int ax = 0, int ay = 1);

// 1-D spacetime diagram over cells [lo, hi]: one row per time step, time 0
// at the top, `steps` steps after it.
std::string render_spacetime(const CellularAutomaton& c, const Configuration& x, Coord lo,
                             Coord hi, int steps);

}  // namespace nilca
