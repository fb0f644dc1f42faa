#include "nilca/evolution.hpp"

#include <algorithm>

#include "nilca/error.hpp"

namespace nilca {

namespace {

Configuration split_base(const Configuration& x, std::map<CellVector, Symbol>& overrides) {
  if (auto single = collapse(x)) return *single;
  const auto& o = std::get<OverlayConfig>(x.variant());
  std::vector<Configuration> periodic;
  for (const auto& p : o.parts()) {
    if (const auto* f = p.as<FiniteConfig>()) {
      for (const auto& [v, s] : f->cells()) overrides[v] = s;
    } else {
      periodic.push_back(p);
    }
  }
  Configuration rest = periodic.size() == 1
                           ? periodic.front()
                           : Configuration(OverlayConfig(o.dimension(), o.alphabet(), periodic));
  auto base = collapse(rest);
  if (!base) {
    throw Error(ErrorKind::Unsupported,
                "cannot evolve an overlay of tubes along different axes or of tubes and tori");
  }
  for (const auto& [v, s] : overrides) {
    if (base->get(v) != 0) {
      throw Error(ErrorKind::Disjointness, "overlay parts overlap at " + v.to_string());
    }
  }
  return *base;
}

}  // namespace

Evolution::Evolution(const CellularAutomaton& c, const Configuration& x)
    : c_(&c), base_(split_base(x, overrides_)) {
  if (x.dimension() != c.dimension()) {
    throw Error(ErrorKind::DimensionMismatch, "automaton and configuration dimensions differ");
  }
}

Symbol Evolution::get(const CellVector& v) const {
  if (auto it = overrides_.find(v); it != overrides_.end()) return it->second;
  return base_.get(v);
}

void Evolution::advance() {
  Configuration next = step(*c_, base_);
  std::map<CellVector, Symbol> next_overrides;
  if (!overrides_.empty()) {
    const auto& offsets = c_->neighborhood().offsets();
    std::vector<CellVector> candidates;
    for (const auto& [u, s] : overrides_) {
      for (const auto& o : offsets) candidates.push_back(u - o);
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    std::vector<Symbol> values(offsets.size());
    for (const auto& w : candidates) {
      for (std::size_t k = 0; k < offsets.size(); ++k) values[k] = get(w + offsets[k]);
      const Symbol s = c_->apply(values);
      if (s != next.get(w)) next_overrides.emplace(w, s);
    }
  }
  base_ = std::move(next);
  overrides_ = std::move(next_overrides);
  ++time_;
}

bool Evolution::is_zero() const {
  for (const auto& [v, s] : overrides_) {
    if (s != 0) return false;
  }
  if (const auto* f = base_.as<FiniteConfig>()) return f->is_zero();
  if (const auto* t = base_.as<TubeConfig>()) return t->is_zero() && overrides_.empty();
  if (const auto* t = base_.as<TorusConfig>()) return t->is_zero() && overrides_.empty();
  return false;
}

CellSet Evolution::active_cells() const {
  std::vector<CellVector> cells;
  for (const auto& v : support(base_)) cells.push_back(v);
  for (const auto& [v, s] : overrides_) {
    if (s != 0) cells.push_back(v);
  }
  return CellSet(std::move(cells));
}

Configuration Evolution::snapshot() const {
  if (overrides_.empty()) return base_;
  if (const auto* f = base_.as<FiniteConfig>()) {
    FiniteConfig out = *f;
    for (const auto& [v, s] : overrides_) out.set(v, s);
    return out;
  }
  FiniteConfig patch(base_.dimension(), base_.alphabet());
  for (const auto& [v, s] : overrides_) {
    if (base_.get(v) != 0) {
      throw Error(ErrorKind::Unsupported,
                  "state is not a disjoint sum of its periodic part and a finite patch");
    }
    patch.set(v, s);
  }
  return OverlayConfig(base_.dimension(), base_.alphabet(), {base_, Configuration(patch)});
}

TraceReport trace(const CellularAutomaton& c, const Configuration& x, const CellVector& v,
                  int horizon) {
  if (horizon < 1) throw Error(ErrorKind::InvalidArgument, "trace horizon must be at least 1");
  if (v.dimension() != c.dimension()) {
    throw Error(ErrorKind::DimensionMismatch, "trace cell has the wrong dimension");
  }
  TraceReport report;
  report.cell = v;
  report.horizon = horizon;
  Evolution evo(c, x);
  for (int n = 0; n < horizon; ++n) {
    if (n > 0) evo.advance();
    const Symbol s = evo.get(v);
    report.word.push_back(s);
    if (s != 0) report.support.push_back(n);
  }
  report.truncated = report.word.back() != 0;
  for (int n : report.support) {
    if (4 * n >= 3 * horizon) report.truncated = true;
  }
  return report;
}

}  // namespace nilca
