#include "nilca/subshift.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <queue>

#include "nilca/error.hpp"

namespace nilca {

namespace {

using Slot = std::optional<Symbol>;

// 1-D forbidden pattern as a word over its hull, holes as wildcards.
std::vector<Slot> as_word(const Pattern& p) {
  const Coord lo = p.begin()->first[0];
  const Coord hi = p.rbegin()->first[0];
  std::vector<Slot> w(static_cast<std::size_t>(hi - lo + 1));
  for (const auto& [v, s] : p) w[static_cast<std::size_t>(v[0] - lo)] = s;
  return w;
}

bool occurs_in(const std::vector<Slot>& pattern, const Word& w) {
  if (pattern.size() > w.size()) return false;
  for (std::size_t at = 0; at + pattern.size() <= w.size(); ++at) {
    bool hit = true;
    for (std::size_t i = 0; i < pattern.size() && hit; ++i) {
      hit = !pattern[i] || *pattern[i] == w[at + i];
    }
    if (hit) return true;
  }
  return false;
}

std::uint64_t checked_count(Symbol q, std::size_t length, std::size_t guard) {
  std::uint64_t n = 1;
  for (std::size_t i = 0; i < length; ++i) {
    n *= q;
    if (n > guard) {
      throw Error(ErrorKind::GuardExceeded, "word enumeration exceeds the guard of " +
                                                std::to_string(guard) + " words");
    }
  }
  return n;
}

Word decode(std::uint64_t code, Symbol q, std::size_t length) {
  Word w(length);
  for (std::size_t i = length; i-- > 0;) {
    w[i] = static_cast<Symbol>(code % q);
    code /= q;
  }
  return w;
}

// Graph on allowed (m-1)-words with one edge per allowed m-word.
struct DeBruijn {
  std::size_t window = 0;
  std::vector<std::uint64_t> vertex_codes;  // sorted
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::vector<std::size_t>> in;
  std::vector<Word> vertices;
  std::vector<Word> edges;
};

DeBruijn build_graph(const Sft& X, std::size_t guard) {
  if (X.dimension() != 1) {
    throw Error(ErrorKind::InvalidArgument, "1-D structure needs a one-dimensional SFT");
  }
  std::vector<std::vector<Slot>> words;
  std::size_t m = 2;
  for (const auto& p : X.forbidden()) {
    words.push_back(as_word(p));
    m = std::max(m, words.back().size());
  }
  const Symbol q = X.alphabet().size;
  DeBruijn g;
  g.window = m;

  const std::uint64_t vertex_count = checked_count(q, m - 1, guard);
  for (std::uint64_t code = 0; code < vertex_count; ++code) {
    Word w = decode(code, q, m - 1);
    if (std::none_of(words.begin(), words.end(), [&](const auto& p) { return occurs_in(p, w); })) {
      g.vertex_codes.push_back(code);
      g.vertices.push_back(std::move(w));
    }
  }
  g.out.resize(g.vertices.size());
  g.in.resize(g.vertices.size());
  auto index_of = [&](std::uint64_t code) -> std::optional<std::size_t> {
    auto it = std::lower_bound(g.vertex_codes.begin(), g.vertex_codes.end(), code);
    if (it == g.vertex_codes.end() || *it != code) return std::nullopt;
    return static_cast<std::size_t>(it - g.vertex_codes.begin());
  };

  const std::uint64_t edge_count = checked_count(q, m, guard);
  const std::uint64_t suffix_mod = vertex_count;
  for (std::uint64_t code = 0; code < edge_count; ++code) {
    Word w = decode(code, q, m);
    if (std::any_of(words.begin(), words.end(), [&](const auto& p) { return occurs_in(p, w); })) {
      continue;
    }
    const auto from = index_of(code / q);
    const auto to = index_of(code % suffix_mod);
    if (!from || !to) continue;
    g.out[*from].push_back(*to);
    g.in[*to].push_back(*from);
    g.edges.push_back(std::move(w));
  }
  return g;
}

// Iterative Tarjan. Components come out in reverse topological order.
std::vector<std::size_t> strong_components(const std::vector<std::vector<std::size_t>>& out,
                                           std::size_t& count) {
  const std::size_t n = out.size();
  constexpr std::size_t unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, unset), low(n, 0), comp(n, unset);
  std::vector<std::size_t> stack;
  std::vector<bool> on_stack(n, false);
  std::vector<std::pair<std::size_t, std::size_t>> frames;
  std::size_t next = 0;
  count = 0;
  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != unset) continue;
    frames.emplace_back(root, 0);
    index[root] = low[root] = next++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      auto& [v, pos] = frames.back();
      if (pos < out[v].size()) {
        const std::size_t w = out[v][pos++];
        if (index[w] == unset) {
          index[w] = low[w] = next++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      const std::size_t done = v;
      frames.pop_back();
      if (!frames.empty()) {
        const std::size_t parent = frames.back().first;
        low[parent] = std::min(low[parent], low[done]);
      }
      if (low[done] == index[done]) {
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = count;
        } while (w != done);
        ++count;
      }
    }
  }
  return comp;
}

// Vertices lying on some bi-infinite path.
std::vector<bool> trimmed(const DeBruijn& g) {
  const std::size_t n = g.vertices.size();
  std::vector<bool> alive(n, true);
  std::vector<std::size_t> indeg(n), outdeg(n);
  std::queue<std::size_t> dead;
  for (std::size_t v = 0; v < n; ++v) {
    indeg[v] = g.in[v].size();
    outdeg[v] = g.out[v].size();
    if (indeg[v] == 0 || outdeg[v] == 0) {
      alive[v] = false;
      dead.push(v);
    }
  }
  while (!dead.empty()) {
    const std::size_t v = dead.front();
    dead.pop();
    for (std::size_t w : g.out[v]) {
      if (alive[w] && --indeg[w] == 0) {
        alive[w] = false;
        dead.push(w);
      }
    }
    for (std::size_t w : g.in[v]) {
      if (alive[w] && --outdeg[w] == 0) {
        alive[w] = false;
        dead.push(w);
      }
    }
  }
  return alive;
}

}  // namespace

std::string word_to_string(const Word& w, Alphabet alphabet) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (alphabet.size <= 10) {
      out += static_cast<char>('0' + w[i]);
    } else {
      if (i > 0) out += ',';
      out += std::to_string(w[i]);
    }
  }
  return out;
}

Word word_from_string(std::string_view text, Alphabet alphabet) {
  Word w;
  if (alphabet.size <= 10 && text.find(',') == std::string_view::npos) {
    for (char ch : text) {
      if (ch < '0' || ch > '9') throw Error(ErrorKind::InvalidArgument, "bad word symbol");
      w.push_back(static_cast<Symbol>(ch - '0'));
    }
  } else {
    std::size_t start = 0;
    while (start <= text.size() && !text.empty()) {
      const auto end = std::min(text.find(',', start), text.size());
      const auto token = std::string(text.substr(start, end - start));
      if (token.empty()) throw Error(ErrorKind::InvalidArgument, "empty word symbol");
      w.push_back(static_cast<Symbol>(std::stoul(token)));
      start = end + 1;
    }
  }
  for (Symbol s : w) {
    if (!alphabet.contains(s)) throw Error(ErrorKind::InvalidArgument, "word symbol outside alphabet");
  }
  return w;
}

Sft::Sft(int dim, Alphabet alphabet, std::vector<Pattern> forbidden)
    : dim_(dim), alphabet_(alphabet), forbidden_(std::move(forbidden)) {
  for (const auto& p : forbidden_) {
    if (p.empty()) throw Error(ErrorKind::InvalidArgument, "empty forbidden pattern");
    for (const auto& [v, s] : p) {
      if (v.dimension() != dim_) {
        throw Error(ErrorKind::DimensionMismatch, "forbidden pattern cell " + v.to_string() +
                                                      " has the wrong dimension");
      }
      if (!alphabet_.contains(s)) {
        throw Error(ErrorKind::InvalidArgument, "forbidden pattern symbol outside the alphabet");
      }
    }
  }
}

bool pattern_matches(const Pattern& pattern, const Configuration& x, const CellVector& t) {
  for (const auto& [o, s] : pattern) {
    if (x.get(t + o) != s) return false;
  }
  return true;
}

bool sft_contains(const Sft& X, const Configuration& x) {
  if (x.dimension() != X.dimension()) {
    throw Error(ErrorKind::DimensionMismatch, "SFT and configuration dimensions differ");
  }
  if (!(x.alphabet() == X.alphabet())) {
    throw Error(ErrorKind::InvalidArgument, "SFT and configuration alphabets differ");
  }
  if (x.kind() == ConfigKind::Overlay) {
    auto single = collapse(x);
    if (!single) throw Error(ErrorKind::Unsupported, "membership of a mixed overlay");
    return sft_contains(X, *single);
  }
  if (const auto* torus = x.as<TorusConfig>()) {
    for (std::size_t i = 0; i < torus->volume(); ++i) {
      const CellVector t = torus->cell_at(i);
      for (const auto& p : X.forbidden()) {
        if (pattern_matches(p, x, t)) return false;
      }
    }
    return true;
  }

  const auto* tube = x.as<TubeConfig>();
  const CellSet cells = support(x);
  for (const auto& p : X.forbidden()) {
    const bool blank = std::all_of(p.begin(), p.end(), [](const auto& e) { return e.second == 0; });
    if (blank) {
      // Finite configurations and tubes with d >= 2 have all-0 regions of
      // any size; a 1-D tube is a periodic word and is checked directly.
      if (!tube || tube->dimension() >= 2) return false;
      for (Coord t = 0; t < tube->period(); ++t) {
        if (pattern_matches(p, x, CellVector{t})) return false;
      }
      continue;
    }
    // A match puts some nonzero pattern entry on a support cell.
    for (const auto& s : cells) {
      for (const auto& [o, sym] : p) {
        if (sym != 0 && pattern_matches(p, x, s - o)) return false;
      }
    }
  }
  return true;
}

ComponentDecomposition components_1d(const Sft& X, std::size_t guard) {
  DeBruijn g = build_graph(X, guard);
  ComponentDecomposition out;
  out.window = g.window;
  out.vertices = g.vertices;
  out.edges = g.edges;

  std::size_t count = 0;
  const auto comp = strong_components(g.out, count);
  std::vector<std::vector<std::size_t>> members(count);
  std::vector<std::size_t> internal(count, 0);
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    members[comp[v]].push_back(v);
    for (std::size_t w : g.out[v]) {
      if (comp[w] == comp[v]) ++internal[comp[v]];
    }
  }

  // Nontrivial components get an id; the rest are transit vertices.
  constexpr std::size_t none = static_cast<std::size_t>(-1);
  std::vector<std::size_t> id(count, none);
  // Tarjan emits sinks first; list components in source-to-sink order.
  for (std::size_t k = count; k-- > 0;) {
    if (internal[k] == 0) continue;
    Component c;
    c.vertices = members[k];
    c.edges = internal[k];
    // Period: gcd of level differences over internal edges of a BFS tree.
    std::vector<std::size_t> level(g.vertices.size(), none);
    std::queue<std::size_t> frontier;
    level[c.vertices.front()] = 0;
    frontier.push(c.vertices.front());
    std::size_t period = 0;
    while (!frontier.empty()) {
      const std::size_t v = frontier.front();
      frontier.pop();
      for (std::size_t w : g.out[v]) {
        if (comp[w] != k) continue;
        if (level[w] == none) {
          level[w] = level[v] + 1;
          frontier.push(w);
        } else {
          const auto diff = static_cast<std::int64_t>(level[v] + 1) -
                            static_cast<std::int64_t>(level[w]);
          period = std::gcd(period, static_cast<std::size_t>(diff < 0 ? -diff : diff));
        }
      }
    }
    c.period = period;
    c.mixing = period == 1;
    id[k] = out.components.size();
    out.components.push_back(std::move(c));
  }

  // Reachability between nontrivial components through the condensation.
  std::vector<std::set<std::size_t>> reach(count);
  for (std::size_t k = 0; k < count; ++k) {
    for (std::size_t v : members[k]) {
      for (std::size_t w : g.out[v]) {
        const std::size_t j = comp[w];
        if (j == k) continue;
        // j < k: successors were finished earlier.
        if (id[j] != none) reach[k].insert(id[j]);
        reach[k].insert(reach[j].begin(), reach[j].end());
      }
    }
    if (id[k] != none) {
      for (std::size_t j : reach[k]) out.links.emplace(id[k], j);
    }
  }
  return out;
}

std::set<Word> language_1d(const Sft& X, std::size_t n, std::size_t guard) {
  DeBruijn g = build_graph(X, guard);
  const auto alive = trimmed(g);
  std::set<Word> words;
  const std::size_t m = g.window;
  if (n < m) {
    for (std::size_t v = 0; v < g.vertices.size(); ++v) {
      if (!alive[v]) continue;
      const Word& w = g.vertices[v];
      words.emplace(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(n));
    }
    return words;
  }
  // States are (word so far, last vertex), deduplicated per length.
  std::set<std::pair<Word, std::size_t>> layer;
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    if (alive[v]) layer.emplace(g.vertices[v], v);
  }
  for (std::size_t len = m - 1; len < n; ++len) {
    std::set<std::pair<Word, std::size_t>> next;
    for (const auto& [w, v] : layer) {
      for (std::size_t u : g.out[v]) {
        if (!alive[u]) continue;
        Word longer = w;
        longer.push_back(g.vertices[u].back());
        next.emplace(std::move(longer), u);
        if (next.size() > guard) {
          throw Error(ErrorKind::GuardExceeded, "language enumeration exceeds the guard");
        }
      }
    }
    layer = std::move(next);
  }
  for (const auto& [w, v] : layer) words.insert(w);
  return words;
}

bool sofic_contains(const SoficPresentation& P, const FiniteConfig& x) {
  if (x.dimension() != 1) throw Error(ErrorKind::DimensionMismatch, "sofic covers are 1-D");
  const std::size_t n = P.states;
  std::vector<std::vector<std::size_t>> zero_out(n), zero_in(n);
  for (const auto& e : P.edges) {
    if (e.label == 0) {
      zero_out[e.from].push_back(e.to);
      zero_in[e.to].push_back(e.from);
    }
  }
  // States on a 0-cycle.
  std::size_t count = 0;
  const auto comp = strong_components(zero_out, count);
  std::vector<bool> cyclic(n, false);
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t w : zero_out[v]) {
      if (comp[w] == comp[v]) cyclic[v] = true;
    }
  }
  auto closure = [&](const std::vector<std::vector<std::size_t>>& adj) {
    std::vector<bool> seen = cyclic;
    std::vector<std::size_t> todo;
    for (std::size_t v = 0; v < n; ++v) {
      if (seen[v]) todo.push_back(v);
    }
    while (!todo.empty()) {
      const std::size_t v = todo.back();
      todo.pop_back();
      for (std::size_t w : adj[v]) {
        if (!seen[w]) {
          seen[w] = true;
          todo.push_back(w);
        }
      }
    }
    return seen;
  };
  // Left tails: reachable by 0-edges from a 0-cycle. Right tails: reach one.
  const auto left = closure(zero_out);
  const auto right = closure(zero_in);

  if (x.is_zero()) return std::find(cyclic.begin(), cyclic.end(), true) != cyclic.end();
  const Coord lo = x.cells().begin()->first[0];
  const Coord hi = x.cells().rbegin()->first[0];
  std::vector<bool> current = left;
  for (Coord i = lo; i <= hi; ++i) {
    const Symbol s = x.get(CellVector{i});
    std::vector<bool> next(n, false);
    for (const auto& e : P.edges) {
      if (e.label == s && current[e.from]) next[e.to] = true;
    }
    current = std::move(next);
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (current[v] && right[v]) return true;
  }
  return false;
}

SoficPresentation single_one_presentation() {
  return {"0*10*", Alphabet{2}, 2, {{0, 0, 0}, {0, 1, 1}, {1, 1, 0}}};
}

SoficPresentation lr_presentation() {
  return {"(0*l0*r)*", Alphabet{3}, 2, {{0, 0, 0}, {0, 1, 1}, {1, 1, 0}, {1, 0, 2}}};
}

}  // namespace nilca
