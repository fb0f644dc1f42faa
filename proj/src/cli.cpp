#include "nilca/cli.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>

#include "CLI11.hpp"
#include "nilca/error.hpp"
#include "nilca/evolution.hpp"
#include "nilca/fixtures.hpp"
#include "nilca/probes.hpp"
#include "nilca/render.hpp"
#include "nilca/text_format.hpp"

namespace nilca {

namespace {

struct Flags {
  std::string rule;
  std::vector<std::string> configs;
  std::string sft;
  int horizon = 100;
  int n = 1;
  int k = 0;
  int axis = 0;
  long long period = 1;
  std::string cell;
  std::string mode = "exhaustive";
  std::uint64_t seed = 0;
  std::uint64_t trials = 1000;
  std::optional<std::uint64_t> guard;
  std::string word;
  int depth = 0;
  std::string from;
  std::string to;
  int time = 0;
  std::string out_dir;
  std::string fixture_name;
  bool serial = false;
  int language = -1;
};

CellularAutomaton load_rule(const std::string& ref) {
  if (ref.empty()) throw Error(ErrorKind::InvalidArgument, "--rule is required");
  if (auto which = builtin_from_name(ref)) return make_builtin(*which);
  for (const auto& name : fixture_names()) {
    if (name == ref) return fixture(name).automaton;
  }
  return parse_rule(read_file(ref));
}

Configuration load_config(const std::string& ref) {
  if (std::filesystem::exists(ref)) return parse_config(read_file(ref));
  if (auto seed = find_seed(ref)) return *seed;
  return parse_config(read_file(ref));
}

Configuration one_config(const Flags& f) {
  if (f.configs.size() != 1) throw Error(ErrorKind::InvalidArgument, "exactly one --config is required");
  return load_config(f.configs.front());
}

ProbeOptions options(const Flags& f) {
  ProbeOptions o;
  if (f.guard) o.window_guard = o.torus_guard = o.preimage_guard = *f.guard;
  if (f.serial) o.execution = Execution::Serial;
  return o;
}

CellVector vector_flag(const std::string& text, const char* flag) {
  if (text.empty()) throw Error(ErrorKind::InvalidArgument, std::string(flag) + " is required");
  return parse_vector(text);
}

int verdict_code(Verdict v) {
  switch (v) {
    case Verdict::Holds:
      return kExitOk;
    case Verdict::Fails:
      return kExitFails;
    case Verdict::Unknown:
      return kExitUnknown;
  }
  return kExitOther;
}

int emit(const ProbeReport& r, Alphabet a, std::ostream& out) {
  out << r.to_text(a);
  return verdict_code(r.verdict);
}

std::string join_ints(const std::vector<int>& xs) {
  std::string s = "{";
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + std::to_string(xs[i]);
  return s + "}";
}

int cmd_simulate(const Flags& f, std::ostream& out) {
  const auto c = load_rule(f.rule);
  Evolution evo(c, one_config(f));
  for (int t = 0; t < f.horizon; ++t) evo.advance();
  const Configuration x = evo.snapshot();
  if (!f.from.empty() || !f.to.empty()) {
    out << render_window(x, vector_flag(f.from, "--from"), vector_flag(f.to, "--to"));
  } else {
    out << "# time " << f.horizon << "\n" << write_config(x);
  }
  return kExitOk;
}

int cmd_trace(const Flags& f, std::ostream& out) {
  const auto c = load_rule(f.rule);
  const auto report = trace(c, one_config(f), vector_flag(f.cell, "--cell"), f.horizon);
  out << "cell=" << report.cell.to_string() << "\n";
  out << "horizon=" << report.horizon << "\n";
  out << "word=" << word_to_string(report.word, c.alphabet()) << "\n";
  out << "support=" << join_ints(report.support) << "\n";
  out << "truncated=" << (report.truncated ? "true" : "false") << "\n";
  return kExitOk;
}

int cmd_reduce(const Flags& f, std::ostream& out) {
  const auto c = load_rule(f.rule);
  const auto reduced = reduce_dimension(c, f.axis, f.period);
  try {
    out << write_rule(reduced);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Unsupported) throw;
    out << "# table too large to list\n";
    out << "dim: " << reduced.dimension() << "\n";
    out << "alphabet: " << reduced.alphabet().size << "\n";
    out << "radius: " << reduced.radius() << "\n";
    out << "neighbors: " << reduced.neighborhood().size() << "\n";
  }
  for (const auto& ref : f.configs) {
    const auto x = load_config(ref);
    const auto* tube = x.as<TubeConfig>();
    if (!tube || tube->axis() != f.axis || tube->period() != f.period) {
      throw Error(ErrorKind::InvalidArgument, "--config must be a tube with the given axis and period");
    }
    out << write_config(fold(*tube));
  }
  return kExitOk;
}

int cmd_decompose(const Flags& f, std::ostream& out) {
  if (f.sft.empty()) throw Error(ErrorKind::InvalidArgument, "--sft is required");
  const Sft X = parse_sft(read_file(f.sft));
  const auto dec = components_1d(X, f.guard.value_or(std::size_t{1} << 24));
  out << "window=" << dec.window << "\n";
  out << "vertices=" << dec.vertices.size() << "\n";
  out << "edges=" << dec.edges.size() << "\n";
  out << "components=" << dec.components.size() << "\n";
  for (std::size_t i = 0; i < dec.components.size(); ++i) {
    const auto& comp = dec.components[i];
    out << "component." << i << "=vertices:{";
    for (std::size_t j = 0; j < comp.vertices.size(); ++j) {
      out << (j ? "," : "") << word_to_string(dec.vertices[comp.vertices[j]], X.alphabet());
    }
    out << "} edges:" << comp.edges << " period:" << comp.period
        << " mixing:" << (comp.mixing ? "true" : "false") << "\n";
  }
  out << "links={";
  bool first = true;
  for (const auto& [a, b] : dec.links) {
    out << (first ? "" : ",") << a << "->" << b;
    first = false;
  }
  out << "}\n";
  if (f.language >= 0) {
    const auto words = language_1d(X, static_cast<std::size_t>(f.language));
    out << "language." << f.language << "={";
    first = true;
    for (const auto& w : words) {
      out << (first ? "" : ",") << word_to_string(w, X.alphabet());
      first = false;
    }
    out << "}\n";
  }
  return kExitOk;
}

int cmd_dump(const Flags& f, std::ostream& out) {
  const auto& entry = fixture(f.fixture_name);
  std::vector<std::pair<std::string, std::string>> files;
  files.emplace_back(entry.name + ".rule", write_rule(entry.automaton));
  for (const auto& [seed, x] : entry.seeds) {
    files.emplace_back(entry.name + "." + seed + ".cfg", write_config(x));
  }
  if (f.out_dir.empty()) {
    for (const auto& [name, text] : files) out << "# file: " << name << "\n" << text;
    return kExitOk;
  }
  std::filesystem::create_directories(f.out_dir);
  for (const auto& [name, text] : files) {
    const auto path = std::filesystem::path(f.out_dir) / name;
    std::ofstream file(path, std::ios::binary);
    if (!file) throw Error(ErrorKind::FileNotFound, "cannot write '" + path.string() + "'");
    file << text;
    out << path.string() << "\n";
  }
  return kExitOk;
}

int cmd_render(const Flags& f, std::ostream& out) {
  const auto x = one_config(f);
  const CellVector lo = vector_flag(f.from, "--from");
  const CellVector hi = vector_flag(f.to, "--to");
  if (f.rule.empty()) {
    out << render_window(x, lo, hi);
    return kExitOk;
  }
  const auto c = load_rule(f.rule);
  if (x.dimension() == 1) {
    out << render_spacetime(c, x, lo[0], hi[0], f.time);
    return kExitOk;
  }
  Evolution evo(c, x);
  for (int t = 0; t < f.time; ++t) evo.advance();
  out << render_window(evo.snapshot(), lo, hi);
  return kExitOk;
}

int cmd_probe(const std::string& which, const Flags& f, std::ostream& out) {
  const auto c = load_rule(f.rule);
  const auto opts = options(f);
  if (which == "nilpotency") return emit(nilpotency_within(c, f.n, opts), c.alphabet(), out);
  if (which == "visit") {
    std::optional<SampleMode> sample;
    if (f.mode == "sampled") {
      sample = SampleMode{f.seed, f.trials};
    } else if (f.mode != "exhaustive") {
      throw Error(ErrorKind::InvalidArgument, "--mode must be exhaustive or sampled");
    }
    return emit(uniform_visit_bound(c, f.k, f.n, sample, opts), c.alphabet(), out);
  }
  if (which == "mortality") return emit(mortality_probe(c, one_config(f), f.horizon, opts), c.alphabet(), out);
  if (which == "tower") {
    const auto x = one_config(f);
    auto finite = flatten(x);
    if (!finite) throw Error(ErrorKind::InvalidArgument, "tower probe needs a finite configuration");
    return emit(tower_confinement(c, *finite, f.axis, f.k, f.horizon), c.alphabet(), out);
  }
  if (which == "cycle") {
    const auto x = one_config(f);
    const auto* torus = x.as<TorusConfig>();
    if (!torus) throw Error(ErrorKind::InvalidArgument, "cycle probe needs a torus configuration");
    return emit(cycle_analysis(c, *torus, opts), c.alphabet(), out);
  }
  if (which == "disjoint") {
    if (f.configs.size() != 2) throw Error(ErrorKind::InvalidArgument, "disjoint probe needs two --config");
    return emit(check_disjoint_evolution(c, load_config(f.configs[0]), load_config(f.configs[1]),
                                         f.horizon),
                c.alphabet(), out);
  }
  if (which == "preimage") {
    return emit(deep_preimage(c, word_from_string(f.word, c.alphabet()), f.depth, opts),
                c.alphabet(), out);
  }
  throw Error(ErrorKind::InvalidArgument, "unknown probe '" + which + "'");
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::FileNotFound:
      return kExitFileNotFound;
    case ErrorKind::Parse:
      return kExitParse;
    case ErrorKind::GuardExceeded:
      return kExitGuard;
    case ErrorKind::DimensionMismatch:
      return kExitDimension;
    case ErrorKind::BackgroundInstability:
      return kExitBackground;
    case ErrorKind::InvalidArgument:
    case ErrorKind::UnknownName:
      return kExitUsage;
    default:
      return kExitOther;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Flags f;
  CLI::App app{"Cellular automata nilpotency toolkit", "nilca"};
  app.require_subcommand(1);

  auto rule = [&](CLI::App* s, bool required = true) {
    auto* o = s->add_option("--rule", f.rule, "rule file, builtin name or fixture name");
    if (required) o->required();
  };
  auto config = [&](CLI::App* s) {
    s->add_option("--config", f.configs, "configuration file or fixture seed (fixture:seed)");
  };
  auto horizon = [&](CLI::App* s) { s->add_option("--horizon", f.horizon, "number of steps"); };
  auto guard = [&](CLI::App* s) {
    s->add_option("--guard", f.guard, "enumeration size guard");
    s->add_flag("--serial", f.serial, "disable the parallel kernels");
  };

  auto* simulate = app.add_subcommand("simulate", "step a configuration and print it");
  rule(simulate);
  config(simulate);
  horizon(simulate);
  simulate->add_option("--from", f.from, "render corner (lo)");
  simulate->add_option("--to", f.to, "render corner (hi)");

  auto* tr = app.add_subcommand("trace", "trace of one cell");
  rule(tr);
  config(tr);
  horizon(tr);
  tr->add_option("--cell", f.cell, "cell, e.g. (0)")->required();

  auto* probe = app.add_subcommand("probe", "bounded decision procedures");
  probe->require_subcommand(1);
  std::string which;
  for (const char* name : {"nilpotency", "visit", "mortality", "tower", "cycle", "disjoint", "preimage"}) {
    auto* p = probe->add_subcommand(name);
    p->callback([&which, name] { which = name; });
    rule(p);
    guard(p);
  }
  probe->get_subcommand("nilpotency")->add_option("--n", f.n, "power")->required();
  auto* visit = probe->get_subcommand("visit");
  visit->add_option("--k", f.k, "radius of the visited box");
  visit->add_option("--n", f.n, "step bound")->required();
  visit->add_option("--mode", f.mode, "exhaustive or sampled");
  visit->add_option("--seed", f.seed, "sampling seed");
  visit->add_option("--trials", f.trials, "sampled windows");
  auto* mortality = probe->get_subcommand("mortality");
  config(mortality);
  horizon(mortality);
  auto* tower = probe->get_subcommand("tower");
  config(tower);
  horizon(tower);
  tower->add_option("--axis", f.axis, "tower axis");
  tower->add_option("--k", f.k, "tower width parameter");
  config(probe->get_subcommand("cycle"));
  auto* disjoint = probe->get_subcommand("disjoint");
  config(disjoint);
  horizon(disjoint);
  auto* preimage = probe->get_subcommand("preimage");
  preimage->add_option("--word", f.word, "target word, e.g. 1 or 0,12,3")->required();
  preimage->add_option("--depth", f.depth, "chain length")->required();

  auto* reduce = app.add_subcommand("reduce", "fold out one axis of period p");
  rule(reduce);
  config(reduce);
  reduce->add_option("--axis", f.axis, "folded axis")->required();
  reduce->add_option("--period", f.period, "period along the axis")->required();

  auto* decompose = app.add_subcommand("decompose", "components of a 1-D SFT");
  decompose->add_option("--sft", f.sft, "SFT file")->required();
  decompose->add_option("--n", f.language, "also list the language words of this length");
  decompose->add_option("--guard", f.guard, "enumeration size guard");

  auto* dump = app.add_subcommand("dump-fixture", "write a fixture's rule and seeds");
  dump->add_option("name", f.fixture_name, "fixture name")->required();
  dump->add_option("--out", f.out_dir, "directory for the files");

  auto* render = app.add_subcommand("render", "text picture of a window or 1-D spacetime");
  rule(render, false);
  config(render);
  render->add_option("--from", f.from, "corner (lo)")->required();
  render->add_option("--to", f.to, "corner (hi)")->required();
  render->add_option("--time", f.time, "steps before rendering (rows for 1-D)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (simulate->parsed()) return cmd_simulate(f, out);
    if (tr->parsed()) return cmd_trace(f, out);
    if (probe->parsed()) return cmd_probe(which, f, out);
    if (reduce->parsed()) return cmd_reduce(f, out);
    if (decompose->parsed()) return cmd_decompose(f, out);
    if (dump->parsed()) return cmd_dump(f, out);
    if (render->parsed()) return cmd_render(f, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitOther;
  }
  return kExitUsage;
}

}  // namespace nilca
