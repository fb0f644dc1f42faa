#include "nilca/text_format.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "nilca/error.hpp"

namespace nilca {

namespace {

struct Line {
  int number;
  std::string text;  // comment stripped, trimmed
};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

// Blank lines are kept (the SFT format uses them as separators).
std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> out;
  int number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(start, end - start);
    ++number;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    out.push_back({number, trim(raw)});
    if (end == text.size()) break;
    start = end + 1;
  }
  return out;
}

class Reader {
 public:
  Reader(std::string_view text, std::string_view magic) : lines_(split_lines(text)) {
    skip_blank();
    if (done() || lines_[pos_].text != magic) {
      throw ParseError(done() ? 1 : lines_[pos_].number,
                       "expected header '" + std::string(magic) + "'");
    }
    ++pos_;
  }

  bool done() const { return pos_ >= lines_.size(); }
  const Line& peek() const { return lines_[pos_]; }
  const Line& next() { return lines_[pos_++]; }
  int last_line() const { return lines_.empty() ? 1 : lines_.back().number; }

  void skip_blank() {
    while (!done() && lines_[pos_].text.empty()) ++pos_;
  }

  // Reads `key: value` lines until the line `stop:` (consumed) or the end.
  std::vector<std::pair<Line, std::string>> header(std::string_view stop) {
    std::vector<std::pair<Line, std::string>> out;
    while (true) {
      skip_blank();
      if (done()) return out;
      const Line& line = peek();
      if (line.text == std::string(stop) + ":") return out;
      const auto colon = line.text.find(':');
      if (colon == std::string::npos) throw ParseError(line.number, "expected 'key: value'");
      out.emplace_back(line, trim(std::string_view(line.text).substr(colon + 1)));
      out.back().first.text = trim(std::string_view(line.text).substr(0, colon));
      ++pos_;
    }
  }

 private:
  std::vector<Line> lines_;
  std::size_t pos_ = 0;
};

long long to_int(const Line& line, std::string_view value) {
  long long v = 0;
  const auto* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw ParseError(line.number, "expected an integer, got '" + std::string(value) + "'");
  }
  return v;
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto end = s.find(sep, start);
    out.push_back(trim(s.substr(start, end == std::string_view::npos ? end : end - start)));
    if (end == std::string_view::npos) return out;
    start = end + 1;
  }
}

// "(v)" lists: "(0),(1)" or "(0,0), (1,0)".
std::vector<CellVector> parse_vector_list(const Line& line, std::string_view s) {
  std::vector<CellVector> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const auto open = s.find('(', i);
    if (open == std::string_view::npos) {
      if (!trim(s.substr(i)).empty()) throw ParseError(line.number, "malformed vector list");
      break;
    }
    if (!trim(s.substr(i, open - i)).empty() && trim(s.substr(i, open - i)) != ",") {
      throw ParseError(line.number, "malformed vector list");
    }
    const auto close = s.find(')', open);
    if (close == std::string_view::npos) throw ParseError(line.number, "unclosed '('");
    try {
      out.push_back(parse_vector(s.substr(open, close - open + 1)));
    } catch (const Error& e) {
      throw ParseError(line.number, e.what());
    }
    i = close + 1;
  }
  return out;
}

// "(v)=s"
std::pair<CellVector, Symbol> parse_cell(const Line& line, Alphabet alphabet, int dim) {
  const auto eq = line.text.rfind('=');
  if (eq == std::string::npos) throw ParseError(line.number, "expected '(v)=s'");
  CellVector v;
  try {
    v = parse_vector(std::string_view(line.text).substr(0, eq));
  } catch (const Error& e) {
    throw ParseError(line.number, e.what());
  }
  if (v.dimension() != dim) {
    throw ParseError(line.number, "cell " + v.to_string() + " does not have dimension " +
                                      std::to_string(dim));
  }
  const long long s = to_int(line, trim(std::string_view(line.text).substr(eq + 1)));
  if (s < 0 || !alphabet.contains(static_cast<Symbol>(s))) {
    throw ParseError(line.number, "symbol " + std::to_string(s) + " outside alphabet of size " +
                                      std::to_string(alphabet.size));
  }
  return {v, static_cast<Symbol>(s)};
}

struct Common {
  int dim = 0;
  Alphabet alphabet{0};
};

int parse_dim(const Line& line, std::string_view value) {
  const long long d = to_int(line, value);
  if (d < 1 || d > 16) throw ParseError(line.number, "dimension must be between 1 and 16");
  return static_cast<int>(d);
}

Alphabet parse_alphabet(const Line& line, std::string_view value) {
  const long long a = to_int(line, value);
  if (a < 1 || a > (1LL << 31)) throw ParseError(line.number, "alphabet size out of range");
  return Alphabet{static_cast<Symbol>(a)};
}

std::string vector_list(const std::vector<CellVector>& vs) {
  std::string out;
  for (std::size_t i = 0; i < vs.size(); ++i) out += (i ? "," : "") + vs[i].to_string();
  return out;
}

}  // namespace

Configuration parse_config(std::string_view text) {
  Reader in(text, "%CA-CONFIG v1");
  int dim = 0;
  std::optional<Alphabet> alphabet;
  std::string kind;
  std::optional<int> axis;
  std::optional<Coord> period;
  std::vector<Coord> periods;
  std::set<std::string> seen;
  for (const auto& [line, value] : in.header("cells")) {
    if (!seen.insert(line.text).second) throw ParseError(line.number, "duplicate key '" + line.text + "'");
    if (line.text == "dim") {
      dim = parse_dim(line, value);
    } else if (line.text == "alphabet") {
      alphabet = parse_alphabet(line, value);
    } else if (line.text == "kind") {
      kind = value;
      if (kind != "finite" && kind != "tube" && kind != "torus") {
        throw ParseError(line.number, "kind must be finite, tube or torus");
      }
    } else if (line.text == "axis") {
      axis = static_cast<int>(to_int(line, value));
    } else if (line.text == "period") {
      period = to_int(line, value);
      if (*period < 1) throw ParseError(line.number, "period must be at least 1");
    } else if (line.text == "periods") {
      for (const auto& p : split(value, ',')) {
        periods.push_back(to_int(line, p));
        if (periods.back() < 1) throw ParseError(line.number, "periods must be at least 1");
      }
    } else {
      throw ParseError(line.number, "unknown key '" + line.text + "'");
    }
  }
  const int at = in.done() ? in.last_line() : in.peek().number;
  if (in.done()) throw ParseError(at, "missing 'cells:' section");
  in.next();
  if (dim == 0) throw ParseError(at, "missing 'dim'");
  if (!alphabet) throw ParseError(at, "missing 'alphabet'");
  if (kind.empty()) kind = "finite";

  std::optional<Configuration> x;
  if (kind == "finite") {
    x = FiniteConfig(dim, *alphabet);
  } else if (kind == "tube") {
    if (!axis || !period) throw ParseError(at, "tube needs 'axis' and 'period'");
    if (*axis < 0 || *axis >= dim) throw ParseError(at, "axis out of range");
    x = TubeConfig(dim, *alphabet, *axis, *period);
  } else {
    if (static_cast<int>(periods.size()) != dim) throw ParseError(at, "torus needs one period per axis");
    x = TorusConfig(*alphabet, periods);
  }

  std::set<CellVector> cells;
  FiniteConfig finite(dim, *alphabet);
  std::optional<TubeConfig> tube;
  std::optional<TorusConfig> torus;
  if (const auto* t = x->as<TubeConfig>()) tube = *t;
  if (const auto* t = x->as<TorusConfig>()) torus = *t;
  while (!in.done()) {
    const Line& line = in.next();
    if (line.text.empty()) continue;
    auto [v, s] = parse_cell(line, *alphabet, dim);
    CellVector key = v;
    if (tube) key = tube->reduce(v);
    if (torus) key = torus->cell_at(torus->index_of(v));
    if (!cells.insert(key).second) throw ParseError(line.number, "duplicate cell " + v.to_string());
    if (tube) {
      tube->set(v, s);
    } else if (torus) {
      torus->set(v, s);
    } else {
      finite.set(v, s);
    }
  }
  if (tube) return *tube;
  if (torus) return *torus;
  return finite;
}

std::string write_config(const Configuration& x) {
  auto single = collapse(x);
  if (!single) throw Error(ErrorKind::Unsupported, "this overlay has no single-kind file form");
  std::ostringstream out;
  out << "%CA-CONFIG v1\n";
  out << "dim: " << single->dimension() << "\n";
  out << "alphabet: " << single->alphabet().size << "\n";
  if (const auto* f = single->as<FiniteConfig>()) {
    out << "kind: finite\ncells:\n";
    for (const auto& [v, s] : f->cells()) out << v.to_string() << "=" << s << "\n";
  } else if (const auto* t = single->as<TubeConfig>()) {
    out << "kind: tube\naxis: " << t->axis() << "\nperiod: " << t->period() << "\ncells:\n";
    for (const auto& [v, s] : t->cells()) out << v.to_string() << "=" << s << "\n";
  } else if (const auto* t = single->as<TorusConfig>()) {
    out << "kind: torus\nperiods: ";
    for (std::size_t i = 0; i < t->periods().size(); ++i) out << (i ? "," : "") << t->periods()[i];
    out << "\ncells:\n";
    for (std::size_t i = 0; i < t->volume(); ++i) {
      if (t->cells()[i] != 0) out << t->cell_at(i).to_string() << "=" << t->cells()[i] << "\n";
    }
  }
  return out.str();
}

CellularAutomaton parse_rule(std::string_view text) {
  Reader in(text, "%CA-RULE v1");
  int dim = 0;
  std::optional<Alphabet> alphabet;
  std::optional<std::vector<CellVector>> offsets;
  std::string kind;
  std::string name;
  int neighborhood_line = 0;
  std::set<std::string> seen;
  for (const auto& [line, value] : in.header("map")) {
    if (!seen.insert(line.text).second) throw ParseError(line.number, "duplicate key '" + line.text + "'");
    if (line.text == "dim") {
      dim = parse_dim(line, value);
    } else if (line.text == "alphabet") {
      alphabet = parse_alphabet(line, value);
    } else if (line.text == "neighborhood") {
      offsets = parse_vector_list(line, value);
      neighborhood_line = line.number;
    } else if (line.text == "kind") {
      kind = value;
      if (kind != "table" && kind != "builtin") throw ParseError(line.number, "kind must be table or builtin");
    } else if (line.text == "name") {
      name = value;
    } else {
      throw ParseError(line.number, "unknown key '" + line.text + "'");
    }
  }
  const int at = in.done() ? in.last_line() : in.peek().number;
  if (kind.empty()) throw ParseError(at, "missing 'kind'");

  if (kind == "builtin") {
    const auto which = builtin_from_name(name);
    if (!which) throw ParseError(at, "unknown builtin '" + name + "'");
    const int d = dim ? dim : builtin_default_dimension(*which);
    const Alphabet a = alphabet ? *alphabet : builtin_default_alphabet(*which);
    try {
      CellularAutomaton c = make_builtin(*which, d, a);
      if (offsets && Neighborhood(*offsets) != c.neighborhood()) {
        throw ParseError(neighborhood_line, "neighborhood differs from the builtin's");
      }
      return c;
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(at, e.what());
    }
  }

  if (dim == 0) throw ParseError(at, "missing 'dim'");
  if (!alphabet) throw ParseError(at, "missing 'alphabet'");
  if (!offsets) throw ParseError(at, "missing 'neighborhood'");
  if (in.done()) throw ParseError(at, "missing 'map:' section");
  in.next();
  std::optional<Neighborhood> hood;
  try {
    hood.emplace(*offsets);
  } catch (const Error& e) {
    throw ParseError(neighborhood_line, e.what());
  }
  if (hood->dimension() != dim) throw ParseError(neighborhood_line, "neighborhood dimension differs from 'dim'");

  const std::size_t arity = hood->size();
  const Symbol q = alphabet->size;
  std::uint64_t entries = 1;
  for (std::size_t i = 0; i < arity; ++i) {
    entries *= q;
    if (entries > (std::uint64_t{1} << 26)) throw ParseError(at, "rule table too large");
  }
  std::vector<Symbol> outputs(entries);
  std::vector<bool> filled(entries, false);
  while (!in.done()) {
    const Line& line = in.next();
    if (line.text.empty()) continue;
    const auto eq = line.text.find('=');
    if (eq == std::string::npos) throw ParseError(line.number, "expected 'a,b,...=s'");
    const auto args = split(std::string_view(line.text).substr(0, eq), ',');
    if (args.size() != arity) {
      throw ParseError(line.number, "expected " + std::to_string(arity) + " neighbor symbols");
    }
    std::uint64_t index = 0;
    for (const auto& a : args) {
      const long long s = to_int(line, a);
      if (s < 0 || s >= q) throw ParseError(line.number, "symbol " + a + " outside alphabet");
      index = index * q + static_cast<std::uint64_t>(s);
    }
    const long long s = to_int(line, trim(std::string_view(line.text).substr(eq + 1)));
    if (s < 0 || s >= q) throw ParseError(line.number, "output symbol outside alphabet");
    if (filled[index]) throw ParseError(line.number, "duplicate table entry");
    filled[index] = true;
    outputs[index] = static_cast<Symbol>(s);
  }
  for (std::uint64_t i = 0; i < entries; ++i) {
    if (!filled[i]) {
      std::string tuple;
      std::uint64_t rest = i;
      std::vector<Symbol> digits(arity);
      for (std::size_t k = arity; k-- > 0;) {
        digits[k] = static_cast<Symbol>(rest % q);
        rest /= q;
      }
      for (std::size_t k = 0; k < arity; ++k) tuple += (k ? "," : "") + std::to_string(digits[k]);
      throw ParseError(in.last_line(), "rule table is not total: missing entry " + tuple);
    }
  }
  return make_table_automaton(dim, *alphabet, std::move(*hood), std::move(outputs), name);
}

std::string write_rule(const CellularAutomaton& c) {
  std::ostringstream out;
  out << "%CA-RULE v1\n";
  out << "dim: " << c.dimension() << "\n";
  out << "alphabet: " << c.alphabet().size << "\n";
  out << "neighborhood: " << vector_list(c.neighborhood().offsets()) << "\n";
  if (const auto* b = std::get_if<BuiltinRule>(&c.rule())) {
    out << "kind: builtin\nname: " << builtin_name(b->which) << "\n";
    return out.str();
  }
  const Symbol q = c.alphabet().size;
  const std::size_t arity = c.neighborhood().size();
  std::uint64_t entries = 1;
  for (std::size_t i = 0; i < arity; ++i) {
    entries *= q;
    if (entries > (std::uint64_t{1} << 16)) {
      throw Error(ErrorKind::Unsupported, "rule table would have more than 2^16 entries");
    }
  }
  out << "kind: table\nmap:\n";
  std::vector<Symbol> args(arity);
  for (std::uint64_t i = 0; i < entries; ++i) {
    std::uint64_t rest = i;
    for (std::size_t k = arity; k-- > 0;) {
      args[k] = static_cast<Symbol>(rest % q);
      rest /= q;
    }
    for (std::size_t k = 0; k < arity; ++k) out << (k ? "," : "") << args[k];
    out << "=" << c.apply(args) << "\n";
  }
  return out.str();
}

Sft parse_sft(std::string_view text) {
  Reader in(text, "%CA-SFT v1");
  int dim = 0;
  std::optional<Alphabet> alphabet;
  std::set<std::string> seen;
  for (const auto& [line, value] : in.header("forbid")) {
    if (!seen.insert(line.text).second) throw ParseError(line.number, "duplicate key '" + line.text + "'");
    if (line.text == "dim") {
      dim = parse_dim(line, value);
    } else if (line.text == "alphabet") {
      alphabet = parse_alphabet(line, value);
    } else {
      throw ParseError(line.number, "unknown key '" + line.text + "'");
    }
  }
  const int at = in.done() ? in.last_line() : in.peek().number;
  if (dim == 0) throw ParseError(at, "missing 'dim'");
  if (!alphabet) throw ParseError(at, "missing 'alphabet'");

  std::vector<Pattern> forbidden;
  std::optional<Pattern> current;
  int current_line = at;
  auto close = [&] {
    if (!current) return;
    if (current->empty()) throw ParseError(current_line, "empty forbidden pattern");
    forbidden.push_back(std::move(*current));
    current.reset();
  };
  while (!in.done()) {
    const Line& line = in.next();
    if (line.text == "forbid:") {
      close();
      current.emplace();
      current_line = line.number;
      continue;
    }
    if (line.text.empty()) {
      close();
      continue;
    }
    if (!current) {
      // After the first block a blank line alone separates patterns.
      if (forbidden.empty()) throw ParseError(line.number, "pattern cell outside a 'forbid:' block");
      current.emplace();
      current_line = line.number;
    }
    auto [v, s] = parse_cell(line, *alphabet, dim);
    if (!current->emplace(v, s).second) throw ParseError(line.number, "duplicate cell " + v.to_string());
  }
  close();
  return Sft(dim, *alphabet, std::move(forbidden));
}

std::string write_sft(const Sft& X) {
  std::ostringstream out;
  out << "%CA-SFT v1\ndim: " << X.dimension() << "\nalphabet: " << X.alphabet().size << "\n";
  for (std::size_t i = 0; i < X.forbidden().size(); ++i) {
    out << (i ? "\n" : "") << "forbid:\n";
    for (const auto& [v, s] : X.forbidden()[i]) out << v.to_string() << "=" << s << "\n";
  }
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::FileNotFound, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace nilca
