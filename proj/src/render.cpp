#include "nilca/render.hpp"

#include "nilca/error.hpp"
#include "nilca/evolution.hpp"

namespace nilca {

char glyph(Symbol s) {
  static constexpr char head[] = {'.', '#', 'o', '+', '*', '@'};
  if (s < 6) return head[s];
  if (s < 32) return static_cast<char>('a' + (s - 6));
  return '?';
}

std::string render_window(const Configuration& x, const CellVector& lo, const CellVector& hi,
                          int ax, int ay) {
  const int d = x.dimension();
  if (lo.dimension() != d || hi.dimension() != d) {
    throw Error(ErrorKind::DimensionMismatch, "render bounds have the wrong dimension");
  }
  std::string out;
  if (d == 1) {
    for (Coord i = lo[0]; i <= hi[0]; ++i) out += glyph(x.get(CellVector{i}));
    return out + "\n";
  }
  if (ax < 0 || ay < 0 || ax >= d || ay >= d || ax == ay) {
    throw Error(ErrorKind::InvalidArgument, "render needs two distinct axes");
  }
  CellVector u = lo;
  for (Coord y = hi[ay]; y >= lo[ay]; --y) {
    u[ay] = y;
    for (Coord i = lo[ax]; i <= hi[ax]; ++i) {
      u[ax] = i;
      out += glyph(x.get(u));
    }
    out += '\n';
  }
  return out;
}

std::string render_spacetime(const CellularAutomaton& c, const Configuration& x, Coord lo,
                             Coord hi, int steps) {
  if (x.dimension() != 1) throw Error(ErrorKind::InvalidArgument, "spacetime render is 1-D only");
  Evolution evo(c, x);
  std::string out;
  for (int t = 0; t <= steps; ++t) {
    if (t > 0) evo.advance();
    for (Coord i = lo; i <= hi; ++i) out += glyph(evo.get(CellVector{i}));
    out += '\n';
  }
  return out;
}

}  // namespace nilca
