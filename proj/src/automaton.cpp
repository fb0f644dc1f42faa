#include "nilca/automaton.hpp"

#include <algorithm>
#include <array>
#include <set>

#include "nilca/error.hpp"
#include "nilca/kernels.hpp"

namespace nilca {

namespace {

// Above this many cells the dense kernels fan out over OpenMP threads.
constexpr std::size_t kParallelThreshold = 1 << 14;
constexpr std::size_t kConeGuard = std::size_t{1} << 26;
constexpr Symbol kLeft = 1;
constexpr Symbol kRight = 2;

Symbol apply_builtin(Builtin which, Alphabet alphabet, std::span<const Symbol> v) {
  switch (which) {
    case Builtin::ShiftLeft:
    case Builtin::Identity:
      return v[0];
    case Builtin::ConstantZero:
      return 0;
    case Builtin::XorPair:
      return (v[0] + v[1]) % alphabet.size;
    case Builtin::Countdown:
      return v[0] > 0 ? v[0] - 1 : 0;
    case Builtin::GameOfLife: {
      int live = 0;
      for (std::size_t i = 0; i < 9; ++i) {
        if (i != 4) live += v[i] != 0;
      }
      return (live == 3 || (live == 2 && v[4] != 0)) ? 1 : 0;
    }
    case Builtin::LrAnnihilation: {
      const Symbol left = v[0], self = v[1], right = v[2];
      if (right == kLeft && self != kRight && left != kRight) return kLeft;
      if (left == kRight && self != kLeft && right != kLeft) return kRight;
      return 0;
    }
  }
  return 0;
}

Neighborhood builtin_neighborhood(Builtin which, int dim) {
  switch (which) {
    case Builtin::ShiftLeft:
      return Neighborhood({CellVector::unit(dim, 0)});
    case Builtin::XorPair:
      return Neighborhood({CellVector::zero(dim), CellVector::unit(dim, 0)});
    case Builtin::GameOfLife:
    case Builtin::LrAnnihilation:
      return Neighborhood::ball(dim, 1);
    case Builtin::Countdown:
    case Builtin::Identity:
    case Builtin::ConstantZero:
      return Neighborhood({CellVector::zero(dim)});
  }
  throw Error(ErrorKind::InvalidArgument, "unknown builtin");
}

constexpr std::array<std::pair<Builtin, std::string_view>, 7> kBuiltinNames{{
    {Builtin::ShiftLeft, "shift-left"},
    {Builtin::XorPair, "xor-pair"},
    {Builtin::Countdown, "countdown"},
    {Builtin::GameOfLife, "game-of-life"},
    {Builtin::LrAnnihilation, "lr-annihilation"},
    {Builtin::Identity, "identity"},
    {Builtin::ConstantZero, "constant-zero"},
}};

Symbol checked_power(Symbol base, Coord exponent) {
  std::uint64_t v = 1;
  for (Coord i = 0; i < exponent; ++i) {
    v *= base;
    if (v > (std::uint64_t{1} << 31)) {
      throw Error(ErrorKind::GuardExceeded, "folded alphabet exceeds 2^31 symbols");
    }
  }
  return static_cast<Symbol>(v);
}

void require_quiescent_zero(const CellularAutomaton& c) {
  if (!is_quiescent(c, 0)) {
    throw Error(ErrorKind::BackgroundInstability,
                "symbol 0 is not quiescent, so the all-0 background is not preserved");
  }
}

void require_compatible(const CellularAutomaton& c, int dim, Alphabet alphabet) {
  if (dim != c.dimension()) {
    throw Error(ErrorKind::DimensionMismatch,
                "automaton is " + std::to_string(c.dimension()) +
                    "-dimensional, configuration is " + std::to_string(dim) + "-dimensional");
  }
  if (!(alphabet == c.alphabet())) {
    throw Error(ErrorKind::InvalidArgument, "configuration alphabet differs from automaton");
  }
}

Symbol apply_power(const PowerRule& rule, std::span<const Symbol> values) {
  std::vector<Symbol> current(values.begin(), values.end());
  std::vector<Symbol> next;
  for (const auto& stage : rule.stages) {
    next.assign(stage.inner_size(), 0);
    kernels::serial::box_step(*rule.base, stage, current, next);
    current.swap(next);
  }
  return current.front();
}

Symbol apply_folded(const FoldedRule& rule, Alphabet folded, std::span<const Symbol> values) {
  const Symbol q = rule.base->alphabet().size;
  const auto p = static_cast<std::size_t>(rule.period);
  std::vector<Symbol> digits(values.size() * p);
  for (std::size_t k = 0; k < values.size(); ++k) {
    Symbol code = values[k];
    for (std::size_t i = 0; i < p; ++i) {
      digits[k * p + i] = code % q;
      code /= q;
    }
  }
  std::vector<Symbol> tuple(rule.taps.size());
  Symbol result = 0;
  Symbol place = 1;
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t t = 0; t < rule.taps.size(); ++t) {
      const auto& [slot, lift] = rule.taps[t];
      const auto row = static_cast<std::size_t>(floor_mod(static_cast<Coord>(i) + lift, rule.period));
      tuple[t] = digits[slot * p + row];
    }
    result += rule.base->apply(tuple) * place;
    place *= q;
  }
  (void)folded;
  return result;
}

}  // namespace

// Neighborhood

Neighborhood::Neighborhood(std::vector<CellVector> offsets) : offsets_(std::move(offsets)) {
  if (offsets_.empty()) throw Error(ErrorKind::InvalidArgument, "empty neighborhood");
  std::set<CellVector> seen;
  for (const auto& o : offsets_) {
    if (o.dimension() != offsets_.front().dimension()) {
      throw Error(ErrorKind::DimensionMismatch, "neighborhood mixes dimensions");
    }
    if (!seen.insert(o).second) {
      throw Error(ErrorKind::InvalidArgument, "duplicate neighborhood offset " + o.to_string());
    }
    radius_ = std::max(radius_, norm(o));
  }
}

Neighborhood Neighborhood::ball(int dim, Coord radius) {
  return Neighborhood(cube(CellVector::zero(dim), radius));
}

// BoxStepper

BoxStepper::BoxStepper(const Neighborhood& neighborhood, Coord outer_radius)
    : outer_radius_(outer_radius), radius_(neighborhood.radius()), outer_size_(1) {
  if (outer_radius_ < radius_) {
    throw Error(ErrorKind::InvalidArgument, "box smaller than the neighborhood radius");
  }
  const int d = neighborhood.dimension();
  const auto outer_side = static_cast<std::size_t>(2 * outer_radius_ + 1);
  const auto inner_side = static_cast<std::size_t>(2 * inner_radius() + 1);
  std::size_t inner_size = 1;
  for (int i = 0; i < d; ++i) {
    outer_size_ *= outer_side;
    inner_size *= inner_side;
  }
  for (const auto& o : neighborhood.offsets()) {
    std::ptrdiff_t delta = 0;
    for (int i = 0; i < d; ++i) delta = delta * static_cast<std::ptrdiff_t>(outer_side) + o[i];
    deltas_.push_back(delta);
  }
  inner_base_.resize(inner_size);
  for (std::size_t idx = 0; idx < inner_size; ++idx) {
    std::size_t rest = idx;
    std::size_t base = 0;
    std::size_t place = 1;
    for (int i = d - 1; i >= 0; --i) {
      const std::size_t digit = rest % inner_side;
      rest /= inner_side;
      base += (digit + static_cast<std::size_t>(radius_)) * place;
      place *= outer_side;
    }
    inner_base_[idx] = base;
  }
}

// CellularAutomaton

CellularAutomaton::CellularAutomaton(int dim, Alphabet alphabet, Neighborhood neighborhood,
                                     LocalRule rule, std::string name)
    : dim_(dim),
      alphabet_(alphabet),
      neighborhood_(std::move(neighborhood)),
      rule_(std::move(rule)),
      name_(std::move(name)) {
  if (neighborhood_.dimension() != dim_) {
    throw Error(ErrorKind::DimensionMismatch, "neighborhood dimension differs from automaton");
  }
  if (alphabet_.size < 1) throw Error(ErrorKind::InvalidArgument, "empty alphabet");
  if (const auto* t = std::get_if<TableRule>(&rule_)) {
    std::uint64_t expected = 1;
    for (std::size_t i = 0; i < neighborhood_.size(); ++i) expected *= alphabet_.size;
    if (t->outputs.size() != expected) {
      throw Error(ErrorKind::InvalidArgument,
                  "rule table has " + std::to_string(t->outputs.size()) + " entries, expected " +
                      std::to_string(expected));
    }
    for (Symbol s : t->outputs) {
      if (!alphabet_.contains(s)) {
        throw Error(ErrorKind::InvalidArgument, "rule table output outside the alphabet");
      }
    }
  }
}

Symbol CellularAutomaton::apply(std::span<const Symbol> values) const {
  switch (rule_.index()) {
    case 0: {
      const auto& table = std::get<TableRule>(rule_);
      std::size_t idx = 0;
      for (Symbol s : values) idx = idx * alphabet_.size + s;
      return table.outputs[idx];
    }
    case 1:
      return apply_builtin(std::get<BuiltinRule>(rule_).which, alphabet_, values);
    case 2:
      return apply_power(std::get<PowerRule>(rule_), values);
    default:
      return apply_folded(std::get<FoldedRule>(rule_), alphabet_, values);
  }
}

CellularAutomaton make_table_automaton(int dim, Alphabet alphabet, Neighborhood neighborhood,
                                       std::vector<Symbol> outputs, std::string name) {
  return CellularAutomaton(dim, alphabet, std::move(neighborhood),
                           TableRule{std::move(outputs)}, std::move(name));
}

CellularAutomaton make_builtin(Builtin which, int dim, Alphabet alphabet) {
  if (dim < 1) throw Error(ErrorKind::InvalidArgument, "dimension must be at least 1");
  const auto name = std::string(builtin_name(which));
  if (which == Builtin::GameOfLife && (dim != 2 || alphabet.size != 2)) {
    throw Error(ErrorKind::InvalidArgument, "game-of-life needs dim 2 and alphabet 2");
  }
  if (which == Builtin::LrAnnihilation && (dim != 1 || alphabet.size != 3)) {
    throw Error(ErrorKind::InvalidArgument, "lr-annihilation needs dim 1 and alphabet 3");
  }
  return CellularAutomaton(dim, alphabet, builtin_neighborhood(which, dim), BuiltinRule{which},
                           name);
}

CellularAutomaton make_builtin(Builtin which) {
  return make_builtin(which, builtin_default_dimension(which), builtin_default_alphabet(which));
}

std::string_view builtin_name(Builtin which) {
  for (const auto& [b, n] : kBuiltinNames) {
    if (b == which) return n;
  }
  return "unknown";
}

std::optional<Builtin> builtin_from_name(std::string_view name) {
  for (const auto& [b, n] : kBuiltinNames) {
    if (n == name) return b;
  }
  return std::nullopt;
}

int builtin_default_dimension(Builtin which) {
  return which == Builtin::GameOfLife ? 2 : 1;
}

Alphabet builtin_default_alphabet(Builtin which) {
  switch (which) {
    case Builtin::Countdown:
    case Builtin::LrAnnihilation:
      return {3};
    default:
      return {2};
  }
}

// Operations

bool is_quiescent(const CellularAutomaton& c, Symbol s) {
  std::vector<Symbol> values(c.neighborhood().size(), s);
  return c.apply(values) == s;
}

std::vector<Symbol> quiescent_symbols(const CellularAutomaton& c) {
  std::vector<Symbol> out;
  for (Symbol s = 0; s < c.alphabet().size; ++s) {
    if (is_quiescent(c, s)) out.push_back(s);
  }
  return out;
}

FiniteConfig step(const CellularAutomaton& c, const FiniteConfig& x) {
  require_compatible(c, x.dimension(), x.alphabet());
  require_quiescent_zero(c);
  const auto& offsets = c.neighborhood().offsets();
  std::vector<CellVector> candidates;
  candidates.reserve(x.cells().size() * offsets.size());
  for (const auto& [v, s] : x.cells()) {
    for (const auto& o : offsets) candidates.push_back(v - o);
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  FiniteConfig out(x.dimension(), x.alphabet());
  std::vector<Symbol> values(offsets.size());
  for (const auto& u : candidates) {
    for (std::size_t k = 0; k < offsets.size(); ++k) values[k] = x.get(u + offsets[k]);
    out.set(u, c.apply(values));
  }
  return out;
}

TubeConfig step(const CellularAutomaton& c, const TubeConfig& x) {
  require_compatible(c, x.dimension(), x.alphabet());
  require_quiescent_zero(c);
  const auto& offsets = c.neighborhood().offsets();
  std::vector<CellVector> candidates;
  for (const auto& [v, s] : x.cells()) {
    for (const auto& o : offsets) candidates.push_back(x.reduce(v - o));
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  TubeConfig out(x.dimension(), x.alphabet(), x.axis(), x.period());
  std::vector<Symbol> values(offsets.size());
  for (const auto& u : candidates) {
    for (std::size_t k = 0; k < offsets.size(); ++k) values[k] = x.get(u + offsets[k]);
    out.set(u, c.apply(values));
  }
  return out;
}

TorusConfig step(const CellularAutomaton& c, const TorusConfig& x) {
  require_compatible(c, x.dimension(), x.alphabet());
  if (x.volume() >= kParallelThreshold) return kernels::parallel::torus_step(c, x);
  return kernels::serial::torus_step(c, x);
}

Configuration step(const CellularAutomaton& c, const Configuration& x) {
  if (const auto* f = x.as<FiniteConfig>()) return step(c, *f);
  if (const auto* t = x.as<TubeConfig>()) return step(c, *t);
  if (const auto* t = x.as<TorusConfig>()) return step(c, *t);
  auto single = collapse(x);
  if (!single) {
    throw Error(ErrorKind::Unsupported,
                "overlay mixes configuration kinds; step it with Evolution instead");
  }
  return step(c, *single);
}

Symbol cone_eval(const CellularAutomaton& c, const Configuration& x, const CellVector& v, int n) {
  require_compatible(c, x.dimension(), x.alphabet());
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "negative step count");
  if (n == 0) return x.get(v);
  const Coord r = c.radius();
  const Box box(v, r * n);
  if (box.size() > kConeGuard) {
    throw Error(ErrorKind::GuardExceeded, "dependence cone exceeds 2^26 cells");
  }
  std::vector<Symbol> current(box.size());
  for (std::size_t i = 0; i < box.size(); ++i) current[i] = x.get(box.cell_at(i));
  std::vector<Symbol> next;
  for (int t = 0; t < n; ++t) {
    const BoxStepper stepper(c.neighborhood(), r * (n - t));
    next.assign(stepper.inner_size(), 0);
    kernels::box_step(stepper.outer_size() >= kParallelThreshold ? Execution::Parallel
                                                                  : Execution::Serial,
                      c, stepper, current, next);
    current.swap(next);
  }
  return current.front();
}

CellularAutomaton power(const CellularAutomaton& c, int n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "power exponent must be at least 1");
  const Coord r = c.radius();
  PowerRule rule;
  rule.base = std::make_shared<const CellularAutomaton>(c);
  rule.steps = n;
  for (int t = 0; t < n; ++t) rule.stages.emplace_back(c.neighborhood(), r * (n - t));
  std::string name = std::string(c.name()) + "^" + std::to_string(n);
  return CellularAutomaton(c.dimension(), c.alphabet(), Neighborhood::ball(c.dimension(), r * n),
                           std::move(rule), std::move(name));
}

Alphabet folded_alphabet(Alphabet base, Coord period) {
  if (period < 1) throw Error(ErrorKind::InvalidArgument, "period must be at least 1");
  return Alphabet{checked_power(base.size, period)};
}

CellularAutomaton reduce_dimension(const CellularAutomaton& c, int axis, Coord period) {
  const int d = c.dimension();
  if (d < 2) throw Error(ErrorKind::InvalidArgument, "dimension reduction needs d >= 2");
  if (axis < 0 || axis >= d) throw Error(ErrorKind::InvalidArgument, "axis out of range");
  const Alphabet folded = folded_alphabet(c.alphabet(), period);
  const Coord r = c.radius();
  const Box projected(CellVector::zero(d - 1), r);

  FoldedRule rule;
  rule.base = std::make_shared<const CellularAutomaton>(c);
  rule.axis = axis;
  rule.period = period;
  for (const auto& o : c.neighborhood().offsets()) {
    rule.taps.emplace_back(projected.index_of(o.without_axis(axis)), o[axis]);
  }
  std::string name = std::string(c.name()) + "|axis" + std::to_string(axis) + "/p" +
                     std::to_string(period);
  return CellularAutomaton(d - 1, folded, Neighborhood::ball(d - 1, r), std::move(rule),
                           std::move(name));
}

FiniteConfig fold(const TubeConfig& x) {
  if (x.dimension() < 2) throw Error(ErrorKind::InvalidArgument, "folding needs d >= 2");
  const Alphabet folded = folded_alphabet(x.alphabet(), x.period());
  std::map<CellVector, Symbol> codes;
  for (const auto& [v, s] : x.cells()) {
    Symbol place = 1;
    for (Coord i = 0; i < v[x.axis()]; ++i) place *= x.alphabet().size;
    codes[v.without_axis(x.axis())] += s * place;
  }
  FiniteConfig out(x.dimension() - 1, folded);
  for (const auto& [u, code] : codes) out.set(u, code);
  return out;
}

TubeConfig unfold(const FiniteConfig& folded, int axis, Coord period, Alphabet base) {
  const Alphabet expected = folded_alphabet(base, period);
  if (!(folded.alphabet() == expected)) {
    throw Error(ErrorKind::InvalidArgument, "folded alphabet does not match base^period");
  }
  TubeConfig out(folded.dimension() + 1, base, axis, period);
  for (const auto& [u, code] : folded.cells()) {
    Symbol rest = code;
    for (Coord i = 0; i < period; ++i) {
      out.set(u.with_axis(axis, i), rest % base.size);
      rest /= base.size;
    }
  }
  return out;
}

}  // namespace nilca
