#include "nilca/configuration.hpp"

#include <numeric>

#include "nilca/error.hpp"

namespace nilca {

namespace {

void check_dimension(int dim, const CellVector& v) {
  if (v.dimension() != dim) {
    throw Error(ErrorKind::DimensionMismatch,
                "cell " + v.to_string() + " queried in a " + std::to_string(dim) +
                    "-dimensional configuration");
  }
}

void check_symbol(Alphabet a, Symbol s) {
  if (!a.contains(s)) {
    throw Error(ErrorKind::InvalidArgument,
                "symbol " + std::to_string(s) + " outside alphabet of size " +
                    std::to_string(a.size));
  }
}

void check_compatible(const Configuration& x, const Configuration& y) {
  if (x.dimension() != y.dimension()) {
    throw Error(ErrorKind::DimensionMismatch, "configurations differ in dimension");
  }
  if (!(x.alphabet() == y.alphabet())) {
    throw Error(ErrorKind::InvalidArgument, "configurations differ in alphabet");
  }
}

[[noreturn]] void overlap_at(const CellVector& v) {
  throw Error(ErrorKind::Disjointness, "supports overlap at " + v.to_string());
}

void append_parts(const Configuration& x, std::vector<Configuration>& out) {
  if (const auto* o = x.as<OverlayConfig>()) {
    for (const auto& p : o->parts()) append_parts(p, out);
  } else {
    out.push_back(x);
  }
}

// Checks the pairs whose supports are enumerable; returns silently for the
// rest, which OverlayConfig::get covers lazily.
void check_pair_disjoint(const Configuration& a, const Configuration& b) {
  if (const auto* f = a.as<FiniteConfig>()) {
    for (const auto& [v, s] : f->cells()) {
      if (b.get(v) != 0) overlap_at(v);
    }
    return;
  }
  if (b.as<FiniteConfig>()) {
    check_pair_disjoint(b, a);
    return;
  }
  const auto* ta = a.as<TubeConfig>();
  const auto* tb = b.as<TubeConfig>();
  if (ta && tb && ta->axis() == tb->axis()) {
    const Coord lcm = std::lcm(ta->period(), tb->period());
    for (const auto& [v, s] : ta->cells()) {
      for (Coord k = 0; k < lcm; k += ta->period()) {
        CellVector u = v;
        u[ta->axis()] += k;
        if (tb->get(u) != 0) overlap_at(u);
      }
    }
  }
}

}  // namespace

const char* to_string(ConfigKind kind) {
  switch (kind) {
    case ConfigKind::Finite: return "finite";
    case ConfigKind::Tube: return "tube";
    case ConfigKind::Torus: return "torus";
    case ConfigKind::Overlay: return "overlay";
  }
  return "unknown";
}

// FiniteConfig

FiniteConfig::FiniteConfig(int dim, Alphabet alphabet) : dim_(dim), alphabet_(alphabet) {
  if (dim < 1) throw Error(ErrorKind::InvalidArgument, "dimension must be at least 1");
  if (alphabet.size < 1) throw Error(ErrorKind::InvalidArgument, "empty alphabet");
}

FiniteConfig::FiniteConfig(int dim, Alphabet alphabet,
                           std::initializer_list<std::pair<CellVector, Symbol>> cells)
    : FiniteConfig(dim, alphabet) {
  for (const auto& [v, s] : cells) set(v, s);
}

Symbol FiniteConfig::get(const CellVector& v) const {
  check_dimension(dim_, v);
  auto it = cells_.find(v);
  return it == cells_.end() ? 0 : it->second;
}

void FiniteConfig::set(const CellVector& v, Symbol s) {
  check_dimension(dim_, v);
  check_symbol(alphabet_, s);
  if (s == 0) {
    cells_.erase(v);
  } else {
    cells_[v] = s;
  }
}

CellSet FiniteConfig::support() const {
  std::vector<CellVector> out;
  out.reserve(cells_.size());
  for (const auto& [v, s] : cells_) out.push_back(v);
  return CellSet(std::move(out));
}

// TubeConfig

TubeConfig::TubeConfig(int dim, Alphabet alphabet, int axis, Coord period)
    : dim_(dim), alphabet_(alphabet), axis_(axis), period_(period) {
  if (dim < 1) throw Error(ErrorKind::InvalidArgument, "dimension must be at least 1");
  if (axis < 0 || axis >= dim) throw Error(ErrorKind::InvalidArgument, "tube axis out of range");
  if (period < 1) throw Error(ErrorKind::InvalidArgument, "tube period must be at least 1");
  if (alphabet.size < 1) throw Error(ErrorKind::InvalidArgument, "empty alphabet");
}

CellVector TubeConfig::reduce(const CellVector& v) const {
  check_dimension(dim_, v);
  CellVector r = v;
  r[axis_] = floor_mod(v[axis_], period_);
  return r;
}

Symbol TubeConfig::get(const CellVector& v) const {
  auto it = cells_.find(reduce(v));
  return it == cells_.end() ? 0 : it->second;
}

void TubeConfig::set(const CellVector& v, Symbol s) {
  check_symbol(alphabet_, s);
  CellVector r = reduce(v);
  if (s == 0) {
    cells_.erase(r);
  } else {
    cells_[r] = s;
  }
}

CellSet TubeConfig::support() const {
  std::vector<CellVector> out;
  out.reserve(cells_.size());
  for (const auto& [v, s] : cells_) out.push_back(v);
  return CellSet(std::move(out));
}

// TorusConfig

TorusConfig::TorusConfig(Alphabet alphabet, std::vector<Coord> periods)
    : alphabet_(alphabet), periods_(std::move(periods)) {
  if (periods_.empty()) throw Error(ErrorKind::InvalidArgument, "torus needs at least one period");
  std::size_t volume = 1;
  for (Coord p : periods_) {
    if (p < 1) throw Error(ErrorKind::InvalidArgument, "torus periods must be at least 1");
    volume *= static_cast<std::size_t>(p);
  }
  cells_.assign(volume, 0);
}

std::size_t TorusConfig::index_of(const CellVector& v) const {
  check_dimension(dimension(), v);
  std::size_t idx = 0;
  for (int i = 0; i < dimension(); ++i) {
    idx = idx * static_cast<std::size_t>(periods_[i]) +
          static_cast<std::size_t>(floor_mod(v[i], periods_[i]));
  }
  return idx;
}

CellVector TorusConfig::cell_at(std::size_t index) const {
  std::vector<Coord> coords(periods_.size());
  for (int i = dimension() - 1; i >= 0; --i) {
    const auto p = static_cast<std::size_t>(periods_[i]);
    coords[i] = static_cast<Coord>(index % p);
    index /= p;
  }
  return CellVector(std::move(coords));
}

void TorusConfig::set(const CellVector& v, Symbol s) {
  check_symbol(alphabet_, s);
  cells_[index_of(v)] = s;
}

bool TorusConfig::is_zero() const {
  for (Symbol s : cells_) {
    if (s != 0) return false;
  }
  return true;
}

CellSet TorusConfig::support() const {
  std::vector<CellVector> out;
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    if (cells_[i] != 0) out.push_back(cell_at(i));
  }
  return CellSet(std::move(out));
}

// OverlayConfig

OverlayConfig::OverlayConfig(int dim, Alphabet alphabet, std::vector<Configuration> parts)
    : dim_(dim), alphabet_(alphabet) {
  for (const auto& p : parts) {
    if (p.dimension() != dim) {
      throw Error(ErrorKind::DimensionMismatch, "overlay part differs in dimension");
    }
    if (!(p.alphabet() == alphabet)) {
      throw Error(ErrorKind::InvalidArgument, "overlay part differs in alphabet");
    }
    append_parts(p, parts_);
  }
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    for (std::size_t k = i + 1; k < parts_.size(); ++k) {
      check_pair_disjoint(parts_[i], parts_[k]);
    }
  }
}

OverlayConfig::OverlayConfig(const OverlayConfig&) = default;
OverlayConfig::OverlayConfig(OverlayConfig&&) noexcept = default;
OverlayConfig& OverlayConfig::operator=(const OverlayConfig&) = default;
OverlayConfig& OverlayConfig::operator=(OverlayConfig&&) noexcept = default;
OverlayConfig::~OverlayConfig() = default;

Symbol OverlayConfig::get(const CellVector& v) const {
  check_dimension(dim_, v);
  Symbol found = 0;
  for (const auto& p : parts_) {
    const Symbol s = p.get(v);
    if (s == 0) continue;
    if (found != 0) overlap_at(v);
    found = s;
  }
  return found;
}

// Configuration

int Configuration::dimension() const {
  return std::visit([](const auto& x) { return x.dimension(); }, value_);
}

Alphabet Configuration::alphabet() const {
  return std::visit([](const auto& x) { return x.alphabet(); }, value_);
}

Symbol Configuration::get(const CellVector& v) const {
  return std::visit([&](const auto& x) { return x.get(v); }, value_);
}

// Operations

Configuration shift(const Configuration& x, const CellVector& v) {
  check_dimension(x.dimension(), v);
  if (const auto* f = x.as<FiniteConfig>()) {
    FiniteConfig out(f->dimension(), f->alphabet());
    for (const auto& [u, s] : f->cells()) out.set(u - v, s);
    return out;
  }
  if (const auto* t = x.as<TubeConfig>()) {
    TubeConfig out(t->dimension(), t->alphabet(), t->axis(), t->period());
    for (const auto& [u, s] : t->cells()) out.set(u - v, s);
    return out;
  }
  if (const auto* t = x.as<TorusConfig>()) {
    TorusConfig out(t->alphabet(), t->periods());
    for (std::size_t i = 0; i < out.volume(); ++i) {
      out.mutable_cells()[i] = t->get(out.cell_at(i) + v);
    }
    return out;
  }
  const auto& o = std::get<OverlayConfig>(x.variant());
  std::vector<Configuration> parts;
  parts.reserve(o.parts().size());
  for (const auto& p : o.parts()) parts.push_back(shift(p, v));
  return OverlayConfig(o.dimension(), o.alphabet(), std::move(parts));
}

Configuration sum(const Configuration& x, const Configuration& y) {
  check_compatible(x, y);
  const auto* fx = x.as<FiniteConfig>();
  const auto* fy = y.as<FiniteConfig>();
  if (fx && fy) {
    FiniteConfig out = *fx;
    for (const auto& [v, s] : fy->cells()) {
      if (fx->get(v) != 0) overlap_at(v);
      out.set(v, s);
    }
    return out;
  }
  return OverlayConfig(x.dimension(), x.alphabet(), {x, y});
}

TubeConfig periodize(const FiniteConfig& x, int axis, Coord period) {
  if (period < 1) throw Error(ErrorKind::InvalidArgument, "period must be at least 1");
  if (axis < 0 || axis >= x.dimension()) {
    throw Error(ErrorKind::InvalidArgument, "axis out of range");
  }
  if (!x.is_zero()) {
    Coord lo = x.cells().begin()->first[axis];
    Coord hi = lo;
    for (const auto& [v, s] : x.cells()) {
      lo = std::min(lo, v[axis]);
      hi = std::max(hi, v[axis]);
    }
    if (hi - lo + 1 > period) {
      throw Error(ErrorKind::PeriodTooSmall,
                  "axis extent " + std::to_string(hi - lo + 1) + " exceeds period " +
                      std::to_string(period));
    }
  }
  TubeConfig out(x.dimension(), x.alphabet(), axis, period);
  for (const auto& [v, s] : x.cells()) out.set(v, s);
  return out;
}

Pattern window(const Configuration& x, const CellSet& domain) {
  Pattern out;
  for (const auto& v : domain) out.emplace(v, x.get(v));
  return out;
}

std::optional<FiniteConfig> flatten(const Configuration& x) {
  if (const auto* f = x.as<FiniteConfig>()) return *f;
  const auto* o = x.as<OverlayConfig>();
  if (!o) return std::nullopt;
  FiniteConfig out(o->dimension(), o->alphabet());
  for (const auto& p : o->parts()) {
    const auto* f = p.as<FiniteConfig>();
    if (!f) return std::nullopt;
    for (const auto& [v, s] : f->cells()) {
      if (out.get(v) != 0) overlap_at(v);
      out.set(v, s);
    }
  }
  return out;
}

CellSet support(const Configuration& x) {
  if (const auto* f = x.as<FiniteConfig>()) return f->support();
  if (const auto* t = x.as<TubeConfig>()) return t->support();
  if (const auto* t = x.as<TorusConfig>()) return t->support();
  if (auto flat = flatten(x)) return flat->support();
  throw Error(ErrorKind::Unsupported, "support of an overlay with non-finite parts");
}

bool equal_on(const Configuration& x, const Configuration& y, const CellSet& domain) {
  for (const auto& v : domain) {
    if (x.get(v) != y.get(v)) return false;
  }
  return true;
}

std::optional<Configuration> collapse(const Configuration& x) {
  const auto* o = x.as<OverlayConfig>();
  if (!o) return x;
  if (auto flat = flatten(x)) return Configuration(*flat);

  std::vector<const TubeConfig*> tubes;
  std::vector<const TorusConfig*> tori;
  for (const auto& p : o->parts()) {
    if (const auto* f = p.as<FiniteConfig>()) {
      if (!f->is_zero()) return std::nullopt;
    } else if (const auto* t = p.as<TubeConfig>()) {
      tubes.push_back(t);
    } else if (const auto* t = p.as<TorusConfig>()) {
      tori.push_back(t);
    }
  }
  if (!tubes.empty() && tori.empty()) {
    const int axis = tubes.front()->axis();
    Coord period = 1;
    for (const auto* t : tubes) {
      if (t->axis() != axis) return std::nullopt;
      period = std::lcm(period, t->period());
    }
    TubeConfig out(o->dimension(), o->alphabet(), axis, period);
    for (const auto* t : tubes) {
      for (const auto& [v, s] : t->cells()) {
        for (Coord k = 0; k < period; k += t->period()) {
          CellVector u = v;
          u[axis] += k;
          if (out.get(u) != 0) overlap_at(u);
          out.set(u, s);
        }
      }
    }
    return Configuration(std::move(out));
  }
  if (!tori.empty() && tubes.empty()) {
    std::vector<Coord> periods(o->dimension(), 1);
    for (const auto* t : tori) {
      for (int i = 0; i < o->dimension(); ++i) periods[i] = std::lcm(periods[i], t->periods()[i]);
    }
    TorusConfig out(o->alphabet(), periods);
    for (std::size_t i = 0; i < out.volume(); ++i) {
      out.mutable_cells()[i] = o->get(out.cell_at(i));
    }
    return Configuration(std::move(out));
  }
  return std::nullopt;
}

}  // namespace nilca
