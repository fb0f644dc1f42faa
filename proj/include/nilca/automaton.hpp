#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "nilca/configuration.hpp"
#include "nilca/geometry.hpp"

namespace nilca {

// Ordered list of offsets V. The order fixes the argument order of the
// local rule (and of table entries in rule files).
class Neighborhood {
 public:
  explicit Neighborhood(std::vector<CellVector> offsets);
  // B_r(0) in lexicographic order.
  static Neighborhood ball(int dim, Coord radius);

  const std::vector<CellVector>& offsets() const { return offsets_; }
  std::size_t size() const { return offsets_.size(); }
  int dimension() const { return offsets_.front().dimension(); }
  Coord radius() const { return radius_; }

  friend bool operator==(const Neighborhood&, const Neighborhood&) = default;

 private:
  std::vector<CellVector> offsets_;
  Coord radius_ = 0;
};

// Dense stepping geometry: maps each cell of the box B_{R-r}(0) to the
// linear indices of its neighbors inside B_R(0).
class BoxStepper {
 public:
  BoxStepper(const Neighborhood& neighborhood, Coord outer_radius);

  Coord outer_radius() const { return outer_radius_; }
  Coord inner_radius() const { return outer_radius_ - radius_; }
  std::size_t outer_size() const { return outer_size_; }
  std::size_t inner_size() const { return inner_base_.size(); }
  std::size_t base(std::size_t inner_index) const { return inner_base_[inner_index]; }
  std::span<const std::ptrdiff_t> deltas() const { return deltas_; }

 private:
  Coord outer_radius_;
  Coord radius_;
  std::size_t outer_size_;
  std::vector<std::size_t> inner_base_;
  std::vector<std::ptrdiff_t> deltas_;
};

class CellularAutomaton;

// Outputs indexed by the neighborhood tuple read as a base-|S| numeral with
// the first neighbor most significant.
struct TableRule {
  std::vector<Symbol> outputs;
};

enum class Builtin {
  ShiftLeft,       // x_{v+e0}
  XorPair,         // x_v xor x_{v+e0}
  Countdown,       // s -> max(s-1, 0)
  GameOfLife,      // B3/S23, neighborhood B_1 in lexicographic order
  LrAnnihilation,  // 1 = l moves left, 2 = r moves right, colliding pairs vanish
  Identity,
  ConstantZero,
};

struct BuiltinRule {
  Builtin which;
};

// c^n evaluated on B_{rn}(0) by n dense box steps.
struct PowerRule {
  std::shared_ptr<const CellularAutomaton> base;
  int steps = 1;
  std::vector<BoxStepper> stages;
};

// c_{j,p}: columns of p base cells encoded little-endian as one symbol.
struct FoldedRule {
  std::shared_ptr<const CellularAutomaton> base;
  int axis = 0;
  Coord period = 1;
  // Per base neighbor: index into the folded neighborhood and shift along
  // the folded axis.
  std::vector<std::pair<std::size_t, Coord>> taps;
};

using LocalRule = std::variant<TableRule, BuiltinRule, PowerRule, FoldedRule>;

class CellularAutomaton {
 public:
  CellularAutomaton(int dim, Alphabet alphabet, Neighborhood neighborhood, LocalRule rule,
                    std::string name = {});

  int dimension() const { return dim_; }
  Alphabet alphabet() const { return alphabet_; }
  const Neighborhood& neighborhood() const { return neighborhood_; }
  Coord radius() const { return neighborhood_.radius(); }
  const LocalRule& rule() const { return rule_; }
  std::string_view name() const { return name_; }

  // Local rule applied to the neighbor values, in neighborhood order.
  Symbol apply(std::span<const Symbol> values) const;

 private:
  int dim_;
  Alphabet alphabet_;
  Neighborhood neighborhood_;
  LocalRule rule_;
  std::string name_;
};

CellularAutomaton make_table_automaton(int dim, Alphabet alphabet, Neighborhood neighborhood,
                                       std::vector<Symbol> outputs, std::string name = {});
CellularAutomaton make_builtin(Builtin which, int dim, Alphabet alphabet);
// Builtin with its natural dimension and alphabet.
CellularAutomaton make_builtin(Builtin which);

std::string_view builtin_name(Builtin which);
std::optional<Builtin> builtin_from_name(std::string_view name);
int builtin_default_dimension(Builtin which);
Alphabet builtin_default_alphabet(Builtin which);

std::vector<Symbol> quiescent_symbols(const CellularAutomaton& c);
bool is_quiescent(const CellularAutomaton& c, Symbol s);

// One application of c. Finite and tube inputs need 0 quiescent. Overlays
// are stepped only when they collapse to a single kind; mixed overlays go
// through Evolution.
Configuration step(const CellularAutomaton& c, const Configuration& x);
FiniteConfig step(const CellularAutomaton& c, const FiniteConfig& x);
TubeConfig step(const CellularAutomaton& c, const TubeConfig& x);
TorusConfig step(const CellularAutomaton& c, const TorusConfig& x);

// c^n(x)_v from the dependence cone of v only.
Symbol cone_eval(const CellularAutomaton& c, const Configuration& x, const CellVector& v,
                 int n);

struct TraceReport {
  CellVector cell;
  int horizon = 0;
  std::vector<Symbol> word;
  std::vector<int> support;
  bool truncated = false;
};

TraceReport trace(const CellularAutomaton& c, const Configuration& x, const CellVector& v,
                  int horizon);

CellularAutomaton power(const CellularAutomaton& c, int n);

CellularAutomaton reduce_dimension(const CellularAutomaton& c, int axis, Coord period);

// phi_{j,p}: tube along `axis` with period p to a (d-1)-dimensional finite
// configuration over S^p.
FiniteConfig fold(const TubeConfig& x);
TubeConfig unfold(const FiniteConfig& folded, int axis, Coord period, Alphabet base);

Alphabet folded_alphabet(Alphabet base, Coord period);

}  // namespace nilca
