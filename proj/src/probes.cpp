#include "nilca/probes.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "nilca/cycle.hpp"
#include "nilca/error.hpp"
#include "nilca/evolution.hpp"

namespace nilca {

namespace {

std::string join(const std::vector<int>& xs) {
  std::string out = "{";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i > 0) out += ",";
    out += std::to_string(xs[i]);
  }
  return out + "}";
}

std::uint64_t window_count(Symbol q, std::size_t cells, std::uint64_t guard) {
  std::uint64_t n = 1;
  for (std::size_t i = 0; i < cells; ++i) {
    n *= q;
    if (n > guard) {
      throw Error(ErrorKind::GuardExceeded,
                  "window enumeration needs more than " + std::to_string(guard) +
                      " windows; use a smaller n or k, sampled mode, or raise --guard");
    }
  }
  return n;
}

// Enumeration index to window contents: the q uniform windows come first,
// then every window in lexicographic order (first cell most significant).
void fill_window(std::uint64_t index, Symbol q, std::span<Symbol> out) {
  if (index < q) {
    std::fill(out.begin(), out.end(), static_cast<Symbol>(index));
    return;
  }
  index -= q;
  for (std::size_t i = out.size(); i-- > 0;) {
    out[i] = static_cast<Symbol>(index % q);
    index /= q;
  }
}

Pattern to_pattern(const Box& box, std::span<const Symbol> values) {
  Pattern p;
  for (std::size_t i = 0; i < values.size(); ++i) p.emplace(box.cell_at(i), values[i]);
  return p;
}

// Dense levels of c^t on shrinking boxes around the origin, with the cells
// of the target box B_k(0) marked in each level.
struct ConeLevels {
  std::vector<BoxStepper> stages;
  std::vector<std::vector<std::size_t>> target;  // per level t = 0..n

  ConeLevels(const CellularAutomaton& c, Coord k, int n) {
    const Coord r = c.radius();
    const int d = c.dimension();
    const std::vector<CellVector> core = cube(CellVector::zero(d), k);
    for (int t = 0; t <= n; ++t) {
      const Box box(CellVector::zero(d), k + r * (n - t));
      std::vector<std::size_t> idx;
      for (const auto& v : core) idx.push_back(box.index_of(v));
      target.push_back(std::move(idx));
      if (t < n) stages.emplace_back(c.neighborhood(), k + r * (n - t));
    }
  }

  // First level t whose target box is all zero, if any. Only levels listed
  // in `checked` are inspected.
  template <class Checked>
  std::optional<int> first_clear(const CellularAutomaton& c, std::vector<Symbol>& a,
                                 std::vector<Symbol>& b, Checked&& checked) const {
    const int n = static_cast<int>(stages.size());
    for (int t = 0;; ++t) {
      if (checked(t)) {
        bool clear = true;
        for (std::size_t i : target[t]) clear = clear && a[i] == 0;
        if (clear) return t;
      }
      if (t == n) return std::nullopt;
      b.assign(stages[t].inner_size(), 0);
      kernels::serial::box_step(c, stages[t], a, b);
      a.swap(b);
    }
  }
};

ProbeReport window_probe(const std::string& name, const CellularAutomaton& c, Coord k, int n,
                         bool final_only, std::optional<SampleMode> sample,
                         const ProbeOptions& opts) {
  if (n < 0 || k < 0) throw Error(ErrorKind::InvalidArgument, "k and n must be non-negative");
  const Symbol q = c.alphabet().size;
  const Box box(CellVector::zero(c.dimension()), k + c.radius() * n);
  const ConeLevels levels(c, k, n);
  auto checked = [&](int t) { return !final_only || t == n; };

  ProbeReport report;
  report.probe = name;
  report.horizon = n;

  auto fails_on = [&](std::span<const Symbol> window) {
    thread_local std::vector<Symbol> a, b;
    a.assign(window.begin(), window.end());
    return !levels.first_clear(c, a, b, checked).has_value();
  };

  if (sample) {
    auto draw = [&](std::uint64_t trial, std::vector<Symbol>& out) {
      std::mt19937_64 rng(sample->seed + trial);
      std::uniform_int_distribution<Symbol> pick(0, q - 1);
      out.resize(box.size());
      for (auto& s : out) s = pick(rng);
    };
    const auto hit = kernels::first_failure(opts.execution, sample->trials, [&](std::uint64_t t) {
      thread_local std::vector<Symbol> w;
      draw(t, w);
      return fails_on(w);
    });
    report.stats["trials"] = static_cast<std::int64_t>(hit ? *hit + 1 : sample->trials);
    report.stats["seed"] = static_cast<std::int64_t>(sample->seed);
    if (hit) {
      std::vector<Symbol> w;
      draw(*hit, w);
      report.verdict = Verdict::Fails;
      report.witness = Witness{to_pattern(box, w), CellVector::zero(c.dimension()), n,
                               std::nullopt, "sampled trial " + std::to_string(*hit)};
    } else {
      report.verdict = Verdict::Unknown;
      report.certificate["note"] = "no counterexample among sampled windows";
    }
    return report;
  }

  const std::uint64_t count = q + window_count(q, box.size(), opts.window_guard);
  const auto hit = kernels::first_failure(opts.execution, count, [&](std::uint64_t idx) {
    thread_local std::vector<Symbol> w;
    w.resize(box.size());
    fill_window(idx, q, w);
    return fails_on(w);
  });
  report.stats["windows"] = static_cast<std::int64_t>(hit ? *hit + 1 : count);
  report.stats["window_cells"] = static_cast<std::int64_t>(box.size());
  if (hit) {
    std::vector<Symbol> w(box.size());
    fill_window(*hit, q, w);
    report.verdict = Verdict::Fails;
    report.witness = Witness{to_pattern(box, w), CellVector::zero(c.dimension()), n,
                             std::nullopt, {}};
  } else {
    report.verdict = Verdict::Holds;
  }
  return report;
}

// Bounding box and check cells for disjoint-evolution checks.
void add_lifts(const Configuration& base, const std::vector<Coord>& lo,
               const std::vector<Coord>& hi, std::vector<CellVector>& out) {
  const int d = base.dimension();
  std::vector<Coord> period(d, 0);
  if (const auto* t = base.as<TubeConfig>()) period[t->axis()] = t->period();
  if (const auto* t = base.as<TorusConfig>()) period = t->periods();
  for (const auto& s : support(base)) {
    // Odometer over the lifts of s along the periodic axes.
    CellVector u = s;
    for (int i = 0; i < d; ++i) {
      if (period[i] > 0) u[i] = lo[i] + floor_mod(s[i] - lo[i], period[i]);
    }
    while (true) {
      out.push_back(u);
      int i = d - 1;
      for (; i >= 0; --i) {
        if (period[i] == 0) continue;
        u[i] += period[i];
        if (u[i] <= hi[i]) break;
        u[i] = lo[i] + floor_mod(s[i] - lo[i], period[i]);
      }
      if (i < 0) break;
    }
  }
}

CellSet check_cells(const std::vector<const Evolution*>& evos, Coord r) {
  std::vector<CellVector> finite;
  std::vector<const Configuration*> periodic;
  int d = 0;
  for (const auto* e : evos) {
    d = e->base().dimension();
    for (const auto& [v, s] : e->overrides()) finite.push_back(v);
    if (e->base().kind() == ConfigKind::Finite) {
      for (const auto& v : support(e->base())) finite.push_back(v);
    } else {
      periodic.push_back(&e->base());
    }
  }
  std::vector<CellVector> cells = finite;
  if (!periodic.empty()) {
    std::vector<Coord> lo(d, 0), hi(d, 0), span(d, 1);
    for (const auto* b : periodic) {
      if (const auto* t = b->as<TubeConfig>()) span[t->axis()] = std::lcm(span[t->axis()], t->period());
      if (const auto* t = b->as<TorusConfig>()) {
        for (int i = 0; i < d; ++i) span[i] = std::lcm(span[i], t->periods()[i]);
      }
      for (const auto& v : support(*b)) {
        for (int i = 0; i < d; ++i) {
          lo[i] = std::min(lo[i], v[i]);
          hi[i] = std::max(hi[i], v[i]);
        }
      }
    }
    for (const auto& v : finite) {
      for (int i = 0; i < d; ++i) {
        lo[i] = std::min(lo[i], v[i]);
        hi[i] = std::max(hi[i], v[i]);
      }
    }
    for (int i = 0; i < d; ++i) {
      lo[i] -= r;
      hi[i] = std::max(hi[i] + r, lo[i] + span[i] - 1);
    }
    for (const auto* b : periodic) add_lifts(*b, lo, hi, cells);
  }
  if (cells.empty()) return {};
  return ball_enumerate(r, CellSet(std::move(cells)));
}

std::optional<int> death_time(const CellularAutomaton& c, const Configuration& x, int horizon,
                              Coord* tower_width, int axis) {
  Evolution evo(c, x);
  Coord width = 0;
  for (int t = 0; t <= horizon; ++t) {
    if (evo.is_zero()) {
      if (tower_width) *tower_width = std::max<Coord>(width, t > 0 ? t - 1 : 0);
      return t;
    }
    for (const auto& v : evo.active_cells()) {
      for (int i = 0; i < v.dimension(); ++i) {
        if (i != axis) width = std::max(width, v[i] < 0 ? -v[i] : v[i]);
      }
    }
    if (t < horizon) evo.advance();
  }
  return std::nullopt;
}

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds:
      return "holds";
    case Verdict::Fails:
      return "fails";
    case Verdict::Unknown:
      return "unknown";
  }
  return "unknown";
}

std::string ProbeReport::to_text(Alphabet alphabet) const {
  std::ostringstream out;
  out << "probe=" << probe << "\n";
  out << "verdict=" << to_string(verdict) << "\n";
  out << "horizon=" << horizon << "\n";
  out << "witness=";
  if (witness) {
    std::vector<std::string> items;
    if (witness->cell) items.push_back("cell:" + witness->cell->to_string());
    if (witness->time) items.push_back("time:" + std::to_string(*witness->time));
    if (witness->word) items.push_back("word:" + word_to_string(*witness->word, alphabet));
    if (witness->window) {
      std::string w = "window:{";
      bool first = true;
      for (const auto& [v, s] : *witness->window) {
        if (!first) w += ",";
        first = false;
        w += v.to_string() + "=" + std::to_string(s);
      }
      items.push_back(w + "}");
    }
    if (!witness->note.empty()) items.push_back("note:" + witness->note);
    for (std::size_t i = 0; i < items.size(); ++i) out << (i ? " " : "") << items[i];
  }
  out << "\n";
  out << "certificate=";
  bool first = true;
  for (const auto& [k, v] : certificate) {
    out << (first ? "" : ",") << k << ":" << v;
    first = false;
  }
  out << "\n";
  for (const auto& [k, v] : stats) out << "stats." << k << "=" << v << "\n";
  return out.str();
}

ProbeReport nilpotency_within(const CellularAutomaton& c, int n, const ProbeOptions& opts) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "nilpotency probe needs n >= 1");
  auto report = window_probe("nilpotency", c, 0, n, true, std::nullopt, opts);
  if (report.verdict == Verdict::Holds) report.certificate["index"] = std::to_string(n);
  return report;
}

ProbeReport uniform_visit_bound(const CellularAutomaton& c, int k, int n,
                                std::optional<SampleMode> sample, const ProbeOptions& opts) {
  auto report = window_probe("visit", c, k, n, false, sample, opts);
  report.certificate["k"] = std::to_string(k);
  if (report.verdict == Verdict::Holds) report.certificate["bound"] = std::to_string(n);
  return report;
}

ProbeReport deep_preimage(const CellularAutomaton& c, const Word& w, int depth,
                          const ProbeOptions& opts) {
  if (c.dimension() != 1) throw Error(ErrorKind::InvalidArgument, "preimage probe is 1-D only");
  if (depth < 0) throw Error(ErrorKind::InvalidArgument, "depth must be non-negative");
  for (Symbol s : w) {
    if (!c.alphabet().contains(s)) throw Error(ErrorKind::InvalidArgument, "word symbol outside alphabet");
  }
  const Symbol q = c.alphabet().size;
  const auto r = static_cast<std::size_t>(c.radius());
  std::vector<std::size_t> taps;
  for (const auto& o : c.neighborhood().offsets()) {
    taps.push_back(static_cast<std::size_t>(o[0] + static_cast<Coord>(r)));
  }

  std::uint64_t visited = 0;
  int deepest = 0;
  Word deepest_word = w;
  Word top;
  std::set<std::pair<int, Word>> dead;
  std::vector<Symbol> values(taps.size());

  // Depth-first over preimage chains; words shown not to start a chain of
  // the remaining length are remembered per level.
  std::function<bool(const Word&, int)> search = [&](const Word& target, int level) -> bool {
    if (level > deepest) {
      deepest = level;
      deepest_word = target;
    }
    if (level == depth) {
      top = target;
      return true;
    }
    if (dead.count({level, target})) return false;
    Word u(target.size() + 2 * r);
    std::function<bool(std::size_t)> extend = [&](std::size_t pos) -> bool {
      if (pos == u.size()) {
        if (++visited > opts.preimage_guard) {
          throw Error(ErrorKind::GuardExceeded, "preimage search exceeds the guard of " +
                                                    std::to_string(opts.preimage_guard) + " words");
        }
        return search(u, level + 1);
      }
      for (Symbol s = 0; s < q; ++s) {
        u[pos] = s;
        if (pos >= 2 * r) {
          const std::size_t i = pos - 2 * r;
          for (std::size_t t = 0; t < taps.size(); ++t) values[t] = u[i + taps[t]];
          if (c.apply(values) != target[i]) continue;
        }
        if (extend(pos + 1)) return true;
      }
      return false;
    };
    if (extend(0)) return true;
    dead.insert({level, target});
    return false;
  };

  ProbeReport report;
  report.probe = "preimage";
  report.horizon = depth;
  const bool found = search(w, 0);
  report.stats["words"] = static_cast<std::int64_t>(visited);
  report.stats["dead_words"] = static_cast<std::int64_t>(dead.size());
  if (found) {
    report.verdict = Verdict::Holds;
    report.witness = Witness{std::nullopt, std::nullopt, depth, top, "top of the preimage chain"};
    report.certificate["depth"] = std::to_string(depth);
  } else {
    report.verdict = Verdict::Fails;
    report.witness = Witness{std::nullopt, std::nullopt, deepest, deepest_word,
                             "no preimage at level " + std::to_string(deepest + 1)};
  }
  return report;
}

ProbeReport mortality_probe(const CellularAutomaton& c, const Configuration& x, int horizon,
                            const ProbeOptions& opts) {
  if (horizon < 1) throw Error(ErrorKind::InvalidArgument, "horizon must be at least 1");
  if (!is_quiescent(c, 0)) {
    throw Error(ErrorKind::BackgroundInstability, "symbol 0 is not quiescent");
  }
  ProbeReport report;
  report.probe = "mortality";
  report.horizon = horizon;

  auto single = collapse(x);
  auto periodic_orbit = [&](const auto& start) {
    using State = std::decay_t<decltype(start)>;
    auto f = [&](const State& s) { return step(c, s); };
    const auto shape = brent(start, f, std::min<std::uint64_t>(horizon, opts.max_orbit));
    if (!shape) {
      report.verdict = Verdict::Unknown;
      report.certificate["note"] = "no cycle closed within horizon";
      return;
    }
    State at = start;
    for (std::uint64_t i = 0; i < shape->preperiod; ++i) at = f(at);
    report.stats["evaluations"] = static_cast<std::int64_t>(shape->evaluations);
    report.certificate["preperiod"] = std::to_string(shape->preperiod);
    report.certificate["period"] = std::to_string(shape->period);
    if (at.is_zero()) {
      report.verdict = Verdict::Holds;
      report.certificate["death_time"] = std::to_string(shape->preperiod);
    } else {
      report.verdict = Verdict::Fails;
      report.witness = Witness{std::nullopt, *at.support().begin(),
                               static_cast<int>(shape->preperiod), std::nullopt,
                               "orbit enters a nonzero cycle; never mortal"};
    }
  };
  if (single) {
    if (const auto* t = single->as<TubeConfig>()) {
      periodic_orbit(*t);
      return report;
    }
    if (const auto* t = single->as<TorusConfig>()) {
      periodic_orbit(*t);
      return report;
    }
  }

  Evolution evo(c, x);
  std::size_t largest = 0;
  std::string trajectory;
  for (int t = 0; t <= horizon; ++t) {
    if (evo.is_zero()) {
      report.verdict = Verdict::Holds;
      report.certificate["death_time"] = std::to_string(t);
      report.stats["max_support"] = static_cast<std::int64_t>(largest);
      return report;
    }
    const std::size_t size = evo.active_cells().size();
    largest = std::max(largest, size);
    trajectory += (t ? "/" : "") + std::to_string(size);
    if (t < horizon) evo.advance();
  }
  report.verdict = Verdict::Unknown;
  report.certificate["support_sizes"] = trajectory;
  report.stats["max_support"] = static_cast<std::int64_t>(largest);
  report.stats["final_support"] = static_cast<std::int64_t>(evo.active_cells().size());
  return report;
}

ProbeReport tower_confinement(const CellularAutomaton& c, const FiniteConfig& x, int axis,
                              Coord k, int horizon) {
  if (axis < 0 || axis >= c.dimension()) throw Error(ErrorKind::InvalidArgument, "axis out of range");
  if (k < 0 || horizon < 0) throw Error(ErrorKind::InvalidArgument, "k and horizon must be non-negative");
  const TowerDescriptor tower{axis, k, x.support()};
  ProbeReport report;
  report.probe = "tower";
  report.horizon = horizon;
  report.certificate["axis"] = std::to_string(axis);
  report.certificate["k"] = std::to_string(k);

  FiniteConfig state = x;
  for (int t = 0; t <= horizon; ++t) {
    if (state.is_zero()) {
      report.verdict = Verdict::Holds;
      report.certificate["death_time"] = std::to_string(t);
      return report;
    }
    for (const auto& [u, s] : state.cells()) {
      if (!tower_contains(tower, u)) {
        report.verdict = Verdict::Fails;
        report.witness = Witness{std::nullopt, u, t, std::nullopt, "support escapes the tower"};
        report.stats["steps"] = t;
        return report;
      }
    }
    if (t < horizon) state = step(c, state);
  }
  report.verdict = Verdict::Unknown;
  report.certificate["confined"] = "through horizon";
  report.stats["steps"] = horizon;
  return report;
}

ProbeReport cycle_analysis(const CellularAutomaton& c, const TorusConfig& x,
                           const ProbeOptions& opts) {
  if (x.volume() > opts.torus_guard) {
    throw Error(ErrorKind::GuardExceeded, "torus has " + std::to_string(x.volume()) +
                                              " cells, above the guard of " +
                                              std::to_string(opts.torus_guard));
  }
  ProbeReport report;
  report.probe = "cycle";
  auto f = [&](const TorusConfig& s) { return step(c, s); };
  const auto shape = brent(x, f, opts.max_orbit);
  if (!shape) {
    report.verdict = Verdict::Unknown;
    report.horizon = static_cast<int>(std::min<std::uint64_t>(opts.max_orbit, 1u << 30));
    report.certificate["note"] = "orbit longer than max_orbit";
    return report;
  }
  report.horizon = static_cast<int>(shape->preperiod + shape->period);
  TorusConfig at = x;
  for (std::uint64_t i = 0; i < shape->preperiod; ++i) at = f(at);
  bool all_zero = true;
  bool at_origin = false;
  TorusConfig walk = at;
  for (std::uint64_t i = 0; i < shape->period; ++i) {
    all_zero = all_zero && walk.is_zero();
    at_origin = at_origin || walk.get(CellVector::zero(x.dimension())) != 0;
    walk = f(walk);
  }
  report.certificate["preperiod"] = std::to_string(shape->preperiod);
  report.certificate["period"] = std::to_string(shape->period);
  report.certificate["cycle_all_zero"] = all_zero ? "true" : "false";
  report.certificate["cycle_nonzero_at_origin"] = at_origin ? "true" : "false";
  report.stats["evaluations"] = static_cast<std::int64_t>(shape->evaluations);
  report.stats["cells"] = static_cast<std::int64_t>(x.volume());
  if (all_zero) {
    report.verdict = Verdict::Holds;
  } else {
    report.verdict = Verdict::Fails;
    report.witness = Witness{std::nullopt, *at.support().begin(),
                             static_cast<int>(shape->preperiod), std::nullopt,
                             "first configuration of a nonzero cycle"};
  }
  return report;
}

ProbeReport check_disjoint_evolution(const CellularAutomaton& c, const Configuration& a,
                                     const Configuration& b, int horizon) {
  if (horizon < 0) throw Error(ErrorKind::InvalidArgument, "horizon must be non-negative");
  const Configuration ab = sum(a, b);
  Evolution ea(c, a), eb(c, b), eab(c, ab);
  ProbeReport report;
  report.probe = "disjoint";
  report.horizon = horizon;
  std::int64_t checked = 0;
  for (int j = 0; j <= horizon; ++j) {
    if (ea.is_zero() && eb.is_zero() && eab.is_zero()) break;
    const CellSet cells = check_cells({&ea, &eb, &eab}, c.radius());
    for (const auto& u : cells) {
      ++checked;
      const Symbol va = ea.get(u), vb = eb.get(u), vab = eab.get(u);
      if (va != 0 && vb != 0) {
        report.verdict = Verdict::Fails;
        report.witness = Witness{std::nullopt, u, j, std::nullopt,
                                 "support collision; the sum is undefined"};
        report.stats["cells_checked"] = checked;
        return report;
      }
      if (vab != (va != 0 ? va : vb)) {
        report.verdict = Verdict::Fails;
        report.witness = Witness{std::nullopt, u, j, std::nullopt,
                                 "evolution of the sum differs from the sum of evolutions"};
        report.stats["cells_checked"] = checked;
        return report;
      }
    }
    if (j < horizon) {
      ea.advance();
      eb.advance();
      eab.advance();
    }
  }
  report.verdict = Verdict::Holds;
  report.stats["cells_checked"] = checked;
  return report;
}

Configuration layer_configuration(const Layer& layer) {
  const Configuration moved = shift(Configuration(layer.pattern), -layer.offset);
  if (!layer.period) return moved;
  return periodize(*moved.as<FiniteConfig>(), layer.period->first, layer.period->second);
}

Assembly assemble_witness(const CellularAutomaton& c, const LayerSpec& layers, int horizon) {
  if (layers.empty()) throw Error(ErrorKind::InvalidArgument, "no layers");
  if (horizon < 0) throw Error(ErrorKind::InvalidArgument, "horizon must be non-negative");
  std::vector<Configuration> parts;
  for (const auto& layer : layers) parts.push_back(layer_configuration(layer));

  const int d = c.dimension();
  const CellVector origin = CellVector::zero(d);
  Configuration acc = parts.front();
  ProbeReport report;
  report.probe = "assemble";
  report.horizon = horizon;
  report.verdict = Verdict::Holds;
  for (std::size_t i = 1; i < parts.size(); ++i) {
    if (report.verdict == Verdict::Holds) {
      ProbeReport check = check_disjoint_evolution(c, acc, parts[i], horizon);
      report.stats["cells_checked"] += check.stats["cells_checked"];
      if (check.verdict == Verdict::Fails) {
        report.verdict = Verdict::Fails;
        report.witness = check.witness;
        report.witness->note += " (layer " + std::to_string(i) + ")";
      }
    }
    acc = sum(acc, parts[i]);
  }

  const int n = horizon + 1;
  report.certificate["trace_support"] = join(trace(c, acc, origin, n).support);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    report.certificate["layer" + std::to_string(i) + ".trace_support"] =
        join(trace(c, parts[i], origin, n).support);
  }
  // Separation hint for placing the last layer against the ones before it.
  const int axis = layers.front().period ? layers.front().period->first : d - 1;
  Configuration before = parts.front();
  for (std::size_t i = 1; i + 1 < parts.size(); ++i) before = sum(before, parts[i]);
  Coord m = 0;
  if (death_time(c, before, horizon, &m, axis)) {
    report.certificate["separation_hint"] = std::to_string(suggested_separation(c.radius(), m));
  }
  return {acc, report};
}

Coord suggested_separation(Coord r, Coord m) { return (r + 1) * m + 2 * r + 1; }

}  // namespace nilca
