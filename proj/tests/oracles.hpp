#pragma once

// Reference implementations used only by the tests. They share no code
// with the library beyond the plain value types.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "nilca/automaton.hpp"
#include "nilca/subshift.hpp"

namespace oracle {

using nilca::Alphabet;
using nilca::CellVector;
using nilca::Coord;
using nilca::Symbol;

using Grid = std::map<CellVector, Symbol>;

// A local rule as a lookup table, first neighbor most significant.
struct TableCa {
  int dim = 1;
  Symbol q = 2;
  std::vector<CellVector> offsets;
  std::vector<Symbol> table;

  Symbol at(const Grid& g, const CellVector& v) const {
    auto it = g.find(v);
    return it == g.end() ? 0 : it->second;
  }

  Symbol eval(const Grid& g, const CellVector& v) const {
    std::size_t idx = 0;
    for (const auto& o : offsets) idx = idx * q + at(g, v + o);
    return table[idx];
  }

  Coord radius() const {
    Coord r = 0;
    for (const auto& o : offsets) {
      for (int i = 0; i < dim; ++i) r = std::max(r, o[i] < 0 ? -o[i] : o[i]);
    }
    return r;
  }

  nilca::CellularAutomaton automaton() const {
    return nilca::make_table_automaton(dim, Alphabet{q}, nilca::Neighborhood(offsets), table);
  }
};

// All cells of the box [lo, hi] (inclusive), by nested loops.
inline std::vector<CellVector> box_cells(const std::vector<Coord>& lo, const std::vector<Coord>& hi) {
  std::vector<CellVector> out;
  std::vector<Coord> cur = lo;
  const int d = static_cast<int>(lo.size());
  while (true) {
    out.push_back(CellVector(cur));
    int i = d - 1;
    while (i >= 0 && cur[i] == hi[i]) {
      cur[i] = lo[i];
      --i;
    }
    if (i < 0) return out;
    ++cur[i];
  }
}

// One synchronous step of a 0-quiescent table rule on a finite grid, by
// scanning the bounding box widened by the radius.
inline Grid step(const TableCa& c, const Grid& g) {
  if (g.empty()) return {};
  std::vector<Coord> lo(c.dim, 0), hi(c.dim, 0);
  bool first = true;
  for (const auto& [v, s] : g) {
    for (int i = 0; i < c.dim; ++i) {
      lo[i] = first ? v[i] : std::min(lo[i], v[i]);
      hi[i] = first ? v[i] : std::max(hi[i], v[i]);
    }
    first = false;
  }
  const Coord r = c.radius();
  for (int i = 0; i < c.dim; ++i) {
    lo[i] -= r;
    hi[i] += r;
  }
  Grid out;
  for (const auto& v : box_cells(lo, hi)) {
    const Symbol s = c.eval(g, v);
    if (s != 0) out[v] = s;
  }
  return out;
}

inline std::vector<CellVector> ball_offsets(int dim, Coord r) {
  return box_cells(std::vector<Coord>(dim, -r), std::vector<Coord>(dim, r));
}

// Random 0-quiescent rule on B_1.
inline TableCa random_rule(std::mt19937_64& rng, int dim, Symbol q) {
  TableCa c;
  c.dim = dim;
  c.q = q;
  c.offsets = ball_offsets(dim, 1);
  std::size_t n = 1;
  for (std::size_t i = 0; i < c.offsets.size(); ++i) n *= q;
  std::uniform_int_distribution<Symbol> pick(0, q - 1);
  c.table.resize(n);
  for (auto& s : c.table) s = pick(rng);
  c.table[0] = 0;
  return c;
}

inline Grid random_grid(std::mt19937_64& rng, int dim, Symbol q, int cells, Coord spread) {
  std::uniform_int_distribution<Coord> coord(-spread, spread);
  std::uniform_int_distribution<Symbol> sym(1, q - 1);
  Grid g;
  for (int i = 0; i < cells; ++i) {
    std::vector<Coord> v(dim);
    for (auto& x : v) x = coord(rng);
    g[CellVector(v)] = sym(rng);
  }
  return g;
}

inline nilca::FiniteConfig to_config(const Grid& g, int dim, Symbol q) {
  nilca::FiniteConfig x(dim, Alphabet{q});
  for (const auto& [v, s] : g) x.set(v, s);
  return x;
}

// Particles of the l/r system: l (1) moves left, r (2) moves right, and an
// r meeting an l (crossing or landing on the same cell) removes both.
struct Particle {
  Coord pos;
  Symbol kind;
};

inline std::vector<Particle> particle_step(std::vector<Particle> ps) {
  std::sort(ps.begin(), ps.end(), [](const auto& a, const auto& b) { return a.pos < b.pos; });
  std::vector<bool> gone(ps.size(), false);
  for (std::size_t i = 0; i + 1 < ps.size(); ++i) {
    if (ps[i].kind == 2 && ps[i + 1].kind == 1 && ps[i + 1].pos - ps[i].pos <= 2 && !gone[i]) {
      gone[i] = gone[i + 1] = true;
    }
  }
  std::vector<Particle> out;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (gone[i]) continue;
    out.push_back({ps[i].pos + (ps[i].kind == 2 ? 1 : -1), ps[i].kind});
  }
  return out;
}

// Does w contain a forbidden factor? -1 in a factor matches any symbol.
inline bool has_factor(const std::vector<Symbol>& w, const std::vector<std::vector<int>>& forbidden) {
  for (const auto& f : forbidden) {
    for (std::size_t at = 0; at + f.size() <= w.size(); ++at) {
      bool hit = true;
      for (std::size_t i = 0; i < f.size() && hit; ++i) hit = f[i] < 0 || f[i] == static_cast<int>(w[at + i]);
      if (hit) return true;
    }
  }
  return false;
}

// Can w be extended by `steps` more symbols on the right (or on the left
// when `left`) without creating a forbidden factor? Memoized on the
// trailing context, which is all a new factor can see.
inline bool extends(Symbol q, const std::vector<std::vector<int>>& forbidden, std::vector<Symbol> w,
                    std::size_t steps, bool left, std::size_t context,
                    std::map<std::pair<std::vector<Symbol>, std::size_t>, bool>& memo) {
  if (steps == 0) return true;
  std::vector<Symbol> key(w.size() > context ? w.end() - static_cast<std::ptrdiff_t>(context) : w.begin(),
                          w.end());
  if (left) key.assign(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(std::min(context, w.size())));
  const auto mk = std::make_pair(key, steps);
  if (auto it = memo.find(mk); it != memo.end()) return it->second;
  bool ok = false;
  for (Symbol s = 0; s < q && !ok; ++s) {
    auto u = key;
    if (left) {
      u.insert(u.begin(), s);
    } else {
      u.push_back(s);
    }
    if (!has_factor(u, forbidden)) ok = extends(q, forbidden, u, steps - 1, left, context, memo);
  }
  memo[mk] = ok;
  return ok;
}

// Words of length n with no forbidden factor that extend by `pad` symbols
// on both sides. pad >= q^(m-1) + 1 makes that the same as bi-infinite
// extendability.
inline std::set<std::vector<Symbol>> brute_language(Symbol q, const std::vector<std::vector<int>>& forbidden,
                                                    std::size_t n, std::size_t pad) {
  std::size_t m = 1;
  for (const auto& f : forbidden) m = std::max(m, f.size());
  const std::size_t context = m - 1;
  std::map<std::pair<std::vector<Symbol>, std::size_t>, bool> right_memo, left_memo;
  std::set<std::vector<Symbol>> out;
  std::vector<Symbol> w(n, 0);
  while (true) {
    if (!has_factor(w, forbidden) && extends(q, forbidden, w, pad, false, context, right_memo) &&
        extends(q, forbidden, w, pad, true, context, left_memo)) {
      out.insert(w);
    }
    std::size_t i = n;
    while (i > 0 && w[i - 1] == q - 1) w[--i] = 0;
    if (i == 0) return out;
    ++w[i - 1];
  }
}

}  // namespace oracle
