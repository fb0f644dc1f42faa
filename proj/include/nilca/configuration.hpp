#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "nilca/geometry.hpp"

namespace nilca {

using Symbol = std::uint32_t;

// Symbols are 0..size-1; 0 is the distinguished quiescent candidate.
struct Alphabet {
  Symbol size = 2;

  bool contains(Symbol s) const { return s < size; }
  friend bool operator==(const Alphabet&, const Alphabet&) = default;
};

// A finite assignment of symbols to cells (zeros included when windowed).
using Pattern = std::map<CellVector, Symbol>;

// Configuration with finitely many nonzero cells. Zeros are never stored.
class FiniteConfig {
 public:
  FiniteConfig(int dim, Alphabet alphabet);
  FiniteConfig(int dim, Alphabet alphabet,
               std::initializer_list<std::pair<CellVector, Symbol>> cells);

  int dimension() const { return dim_; }
  Alphabet alphabet() const { return alphabet_; }
  Symbol get(const CellVector& v) const;
  void set(const CellVector& v, Symbol s);
  const std::map<CellVector, Symbol>& cells() const { return cells_; }
  bool is_zero() const { return cells_.empty(); }
  CellSet support() const;

  friend bool operator==(const FiniteConfig&, const FiniteConfig&) = default;

 private:
  int dim_;
  Alphabet alphabet_;
  std::map<CellVector, Symbol> cells_;
};

// Configuration periodic with `period` along `axis` and with finitely many
// nonzero columns. Only the slab 0 <= v[axis] < period is stored.
class TubeConfig {
 public:
  TubeConfig(int dim, Alphabet alphabet, int axis, Coord period);

  int dimension() const { return dim_; }
  Alphabet alphabet() const { return alphabet_; }
  int axis() const { return axis_; }
  Coord period() const { return period_; }

  // Representative of v in the stored slab.
  CellVector reduce(const CellVector& v) const;
  Symbol get(const CellVector& v) const;
  // Any representative may be given; it is reduced first.
  void set(const CellVector& v, Symbol s);
  const std::map<CellVector, Symbol>& cells() const { return cells_; }
  bool is_zero() const { return cells_.empty(); }
  CellSet support() const;

  friend bool operator==(const TubeConfig&, const TubeConfig&) = default;

 private:
  int dim_;
  Alphabet alphabet_;
  int axis_;
  Coord period_;
  std::map<CellVector, Symbol> cells_;
};

// Fully periodic configuration stored as a dense row-major array over the
// fundamental domain prod [0, periods[i]).
class TorusConfig {
 public:
  TorusConfig(Alphabet alphabet, std::vector<Coord> periods);

  int dimension() const { return static_cast<int>(periods_.size()); }
  Alphabet alphabet() const { return alphabet_; }
  const std::vector<Coord>& periods() const { return periods_; }
  std::size_t volume() const { return cells_.size(); }

  std::size_t index_of(const CellVector& v) const;
  CellVector cell_at(std::size_t index) const;
  Symbol get(const CellVector& v) const { return cells_[index_of(v)]; }
  void set(const CellVector& v, Symbol s);
  const std::vector<Symbol>& cells() const { return cells_; }
  std::vector<Symbol>& mutable_cells() { return cells_; }
  bool is_zero() const;
  CellSet support() const;

  friend bool operator==(const TorusConfig&, const TorusConfig&) = default;

 private:
  Alphabet alphabet_;
  std::vector<Coord> periods_;
  std::vector<Symbol> cells_;
};

class Configuration;

// Pointwise +_0 of parts with pairwise disjoint supports. Pairs whose
// supports can be enumerated are checked on construction; the rest are
// checked whenever a cell is queried.
class OverlayConfig {
 public:
  OverlayConfig(int dim, Alphabet alphabet, std::vector<Configuration> parts);
  OverlayConfig(const OverlayConfig&);
  OverlayConfig(OverlayConfig&&) noexcept;
  OverlayConfig& operator=(const OverlayConfig&);
  OverlayConfig& operator=(OverlayConfig&&) noexcept;
  ~OverlayConfig();

  int dimension() const { return dim_; }
  Alphabet alphabet() const { return alphabet_; }
  const std::vector<Configuration>& parts() const { return parts_; }
  Symbol get(const CellVector& v) const;

 private:
  int dim_;
  Alphabet alphabet_;
  std::vector<Configuration> parts_;
};

enum class ConfigKind { Finite, Tube, Torus, Overlay };

class Configuration {
 public:
  using Variant = std::variant<FiniteConfig, TubeConfig, TorusConfig, OverlayConfig>;

  Configuration(FiniteConfig x) : value_(std::move(x)) {}
  Configuration(TubeConfig x) : value_(std::move(x)) {}
  Configuration(TorusConfig x) : value_(std::move(x)) {}
  Configuration(OverlayConfig x) : value_(std::move(x)) {}

  ConfigKind kind() const { return static_cast<ConfigKind>(value_.index()); }
  int dimension() const;
  Alphabet alphabet() const;
  Symbol get(const CellVector& v) const;

  const Variant& variant() const { return value_; }
  template <class T>
  const T* as() const {
    return std::get_if<T>(&value_);
  }

 private:
  Variant value_;
};

const char* to_string(ConfigKind kind);

// sigma^v: the result's value at u is x's value at u + v.
Configuration shift(const Configuration& x, const CellVector& v);

// x +_0 y. Two finite operands flatten to a FiniteConfig; anything else
// becomes an overlay. Overlapping supports raise Disjointness.
Configuration sum(const Configuration& x, const Configuration& y);

// Sum of the translates of x by multiples of period * e_axis. The axis
// extent of supp(x) must not exceed the period.
TubeConfig periodize(const FiniteConfig& x, int axis, Coord period);

Pattern window(const Configuration& x, const CellSet& domain);

// Exact support of finite configurations; the stored-slab support of tubes
// and tori. Overlays are accepted only when every part is finite.
CellSet support(const Configuration& x);

// Collapses an overlay whose parts are all finite.
std::optional<FiniteConfig> flatten(const Configuration& x);

// Collapses an overlay into one configuration of a single kind: all-finite
// parts flatten, tubes along one axis merge with the lcm period, tori merge
// with per-axis lcm periods. All-zero finite parts are ignored. Returns
// nullopt for genuinely mixed overlays.
std::optional<Configuration> collapse(const Configuration& x);

bool equal_on(const Configuration& x, const Configuration& y, const CellSet& domain);

}  // namespace nilca
