// nuset: command-line front end.  Exit status 0 on success, 1 when a check
// reports violations or an input file is rejected, 2 on usage errors.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nuset/nuset.hpp"

namespace {

using nlohmann::json;

// Raised for bad command-line values; maps to exit status 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <class F>
auto from_args(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const nuset::Error& e) {
    throw UsageError(e.what());
  }
}

std::string read_input(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), {});
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  return std::string(std::istreambuf_iterator<char>(in), {});
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << text;
}

// ⋆ in place of * when --unicode is set.
struct Style {
  bool unicode = false;
  std::string word(const std::string& w) const {
    if (!unicode) return w;
    std::string out;
    for (char c : w) out += c == '*' ? std::string("\xE2\x8B\x86") : std::string(1, c);
    return out;
  }
};

bool looks_indexed(const std::string& text) {
  try {
    json j = json::parse(text);
    return j.is_object() && j.contains("families");
  } catch (const json::parse_error&) {
    return false;
  }
}

std::string report_text(const nuset::Report& r) {
  std::ostringstream out;
  for (const auto& v : r.violations) out << v.kind << ": " << v.detail << "\n";
  out << (r.ok() ? "ok" : "violations: " + std::to_string(r.violations.size())) << " (checked "
      << r.checked << ")\n";
  return out.str();
}

int emit_report(const nuset::Report& r, bool as_json) {
  if (as_json)
    std::cout << nuset::report_to_json(r).dump(2) << "\n";
  else
    std::cout << report_text(r);
  return r.ok() ? 0 : 1;
}

// Where an indexed set comes from: a file, a standard shape, or a seed.
struct Source {
  std::string file;
  std::optional<int> nu;
  std::optional<int> n;
  std::optional<int> trunc;
  std::optional<std::uint64_t> seed;

  void attach(CLI::App* cmd, bool file_required = false) {
    auto* f = cmd->add_option("file", file, "nu-set JSON file (fibred or indexed), - for stdin");
    if (file_required) f->required();
    cmd->add_option("--nu", nu, "arity for a generated instance");
    cmd->add_option("-n", n, "standard shape on the representing object n");
    cmd->add_option("--trunc", trunc, "truncation of a random instance (with --seed)");
    cmd->add_option("--seed", seed, "seed of a random indexed instance");
  }

  bool generated() const { return file.empty(); }

  nuset::Arity arity() const {
    if (!nu) throw UsageError("--nu is required without an input file");
    return from_args([&] { return nuset::Arity(*nu); });
  }

  nuset::IndexedNuSet indexed() const {
    if (!generated()) {
      std::string text = read_input(file);
      if (looks_indexed(text)) return nuset::parse_indexed(text);
      return nuset::to_indexed(nuset::parse_nuset(text));
    }
    if (seed) return nuset::random_indexed(arity(), trunc.value_or(2), *seed);
    if (n) return nuset::to_indexed(nuset::standard_shape(arity(), check_n()));
    throw UsageError("give an input file, -n for a standard shape, or --seed");
  }

  std::size_t check_n() const {
    if (*n < 0) throw UsageError("-n must be non-negative");
    return static_cast<std::size_t>(*n);
  }
};

// ---------------------------------------------------------------------------

int run_hom(int nu_v, int p, int n, bool as_json, const Style& style) {
  if (p < 0 || n < 0) throw UsageError("-p and -n must be non-negative");
  auto nu = from_args([&] { return nuset::Arity(nu_v); });
  auto words = from_args([&] {
    return nuset::hom_enumerate(nu, static_cast<std::size_t>(p), static_cast<std::size_t>(n));
  });
  if (as_json) {
    json j{{"nu", nu_v}, {"p", p}, {"n", n}, {"count", words.size()}, {"words", json::array()}};
    for (const auto& w : words) j["words"].push_back(style.word(w.to_string()));
    std::cout << j.dump(2) << "\n";
  } else {
    for (const auto& w : words) std::cout << style.word(w.to_string()) << "\n";
  }
  return 0;
}

int run_compose(int nu_v, const std::string& g, const std::string& f, bool as_json,
                const Style& style) {
  auto result = from_args([&] {
    nuset::Arity nu(nu_v);
    return nuset::compose(nuset::parse_word(nu, g), nuset::parse_word(nu, f));
  });
  if (as_json)
    std::cout << json{{"g", g}, {"f", f}, {"result", style.word(result.to_string())}}.dump(2)
              << "\n";
  else
    std::cout << style.word(result.to_string()) << "\n";
  return 0;
}

int run_shape(int nu_v, std::optional<int> n_opt, std::optional<int> geo, bool dot, bool as_json,
              const std::string& out_file, const Style& style) {
  auto nu = from_args([&] { return nuset::Arity(nu_v); });
  if (n_opt.has_value() == geo.has_value())
    throw UsageError("give exactly one of -n and --geometric-dim");
  int n = n_opt ? *n_opt : (nu_v == 1 ? *geo + 1 : *geo);
  if (n < 0) throw UsageError("dimension must be non-negative");
  nuset::TruncatedPresheaf P = nuset::standard_shape(nu, static_cast<std::size_t>(n));
  if (!out_file.empty()) write_output(out_file, nuset::emit_nuset(P));

  const int base = nuset::geometric_base(P);
  if (dot) {
    std::string text = nuset::to_dot(P);
    std::cout << (style.unicode ? style.word(text) : text);
    return 0;
  }
  std::vector<std::size_t> inventory;
  for (int p = base; p <= n; ++p) inventory.push_back(P.carrier(p).size);
  if (as_json) {
    json j{{"nu", nu_v}, {"n", n}, {"geometric_dim", n - base}, {"inventory", inventory},
           {"levels", json::array()}};
    for (int p = 0; p <= n; ++p) {
      json cells = json::array();
      for (std::size_t x = 0; x < P.carrier(p).size; ++x) cells.push_back(style.word(P.carrier(p).label(x)));
      j["levels"].push_back({{"level", p}, {"geometric", p >= base}, {"cells", cells}});
    }
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::cout << "nu=" << nu_v << " n=" << n << " geometric dimension " << n - base << "\n";
  std::cout << "inventory: (";
  for (std::size_t i = 0; i < inventory.size(); ++i) std::cout << (i ? "," : "") << inventory[i];
  std::cout << ")\n";
  for (int p = 0; p <= n; ++p) {
    std::cout << "level " << p << (p < base ? " (colour)" : "") << ":";
    for (std::size_t x = 0; x < P.carrier(p).size; ++x) std::cout << " " << style.word(P.carrier(p).label(x));
    std::cout << "\n";
  }
  return 0;
}

int run_validate(const std::string& file, bool no_coherence, bool as_json) {
  std::string text = read_input(file);
  if (looks_indexed(text))
    return emit_report(nuset::validate_indexed(nuset::parse_indexed(text), !no_coherence), as_json);
  return emit_report(nuset::check_functor_laws(nuset::parse_nuset(text)), as_json);
}

int run_convert(const std::string& file, const std::string& to, const std::string& out_file) {
  std::string text = read_input(file);
  const bool indexed = looks_indexed(text);
  const std::string target = to.empty() ? (indexed ? "fibred" : "indexed") : to;
  if (target == "indexed") {
    nuset::IndexedNuSet S =
        indexed ? nuset::parse_indexed(text) : nuset::to_indexed(nuset::parse_nuset(text));
    write_output(out_file, nuset::emit_indexed(S));
  } else {
    nuset::TruncatedPresheaf P =
        indexed ? nuset::to_fibred(nuset::parse_indexed(text)) : nuset::parse_nuset(text);
    write_output(out_file, nuset::emit_nuset(P));
  }
  return 0;
}

int run_coh_check(const Source& src, std::optional<int> max_n, bool as_json) {
  nuset::IndexedNuSet S = src.indexed();
  nuset::Report structural = nuset::validate_indexed(S, false);
  if (!structural.ok()) return emit_report(structural, as_json);
  return emit_report(nuset::check_coherence(S, max_n.value_or(S.truncation())), as_json);
}

std::string next_var(const nuset::Expr& T) {
  std::size_t level = 0;
  for (const std::string& x : nuset::free_vars(T))
    if (auto k = nuset::level_of(x)) level = std::max(level, *k + 1);
  return "X" + std::to_string(level);
}

int run_param(int nu_v, std::optional<int> steps, const std::string& file,
              const std::string& type_text, bool as_json) {
  auto nu = from_args([&] { return nuset::Arity(nu_v); });
  nuset::Expr T;
  json j{{"nu", nu_v}};
  if (steps) {
    if (!file.empty() || !type_text.empty()) throw UsageError("-n excludes a type input");
    if (*steps < 0) throw UsageError("-n must be non-negative");
    T = nuset::iterate_types(nu, static_cast<std::size_t>(*steps));
    j["steps"] = *steps;
  } else {
    if (!file.empty() && !type_text.empty()) throw UsageError("give a file or --type, not both");
    nuset::Expr parsed = type_text.empty()
                             ? nuset::parse_type(read_input(file.empty() ? "-" : file))
                             : from_args([&] { return nuset::parse_type(type_text); });
    nuset::Expr S = nuset::normalize(parsed);
    std::string x = next_var(S);
    T = nuset::normalize(nuset::app(nuset::translate(S, nu), nuset::diagonal(nuset::var(x), nu)));
    j["input"] = nuset::print_type(S);
    j["variable"] = x;
  }
  nuset::Telescope tel = nuset::to_telescope(T);
  auto stats = nuset::telescope_stats(T);
  std::string display = nuset::print_display(nuset::display_form(tel));
  if (as_json) {
    j["type"] = nuset::print_type(T);
    j["telescope"] = json::array();
    for (const auto& h : tel.hyps)
      j["telescope"].push_back({{"name", h.name}, {"type", nuset::print_type(h.type)}});
    j["display"] = display;
    j["stats"] = json::object();
    for (const auto& [k, c] : stats) j["stats"][std::to_string(k)] = c;
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::cout << nuset::print_type(T) << "\n" << display << "\n";
  for (const auto& [k, c] : stats) std::cout << "X" << k << ": " << c << "\n";
  return 0;
}

int run_extend(const std::string& file, int levels, const std::string& out_file) {
  if (levels < 0) throw UsageError("--levels must be non-negative");
  std::string text = read_input(file);
  nuset::IndexedNuSet D =
      looks_indexed(text) ? nuset::parse_indexed(text) : nuset::to_indexed(nuset::parse_nuset(text));
  nuset::NuSetStream s = nuset::extend_singleton(D);
  write_output(out_file, nuset::emit_indexed(nuset::take(s, D.truncation() + levels)));
  return 0;
}

int run_roundtrip(const Source& src, bool as_json) {
  nuset::RoundTripReport rt;
  if (!src.generated()) {
    std::string text = read_input(src.file);
    rt = looks_indexed(text) ? nuset::round_trip_report(nuset::parse_indexed(text))
                             : nuset::round_trip_report(nuset::parse_nuset(text));
  } else if (src.n && !src.seed) {
    rt = nuset::round_trip_report(nuset::standard_shape(src.arity(), src.check_n()));
  } else {
    rt = nuset::round_trip_report(src.indexed());
  }
  if (!as_json) return emit_report(rt.report, false);
  json j = nuset::report_to_json(rt.report);
  j["carrier_bijections"] = rt.carrier_bijections;
  j["fibre_bijections"] = json::array();
  for (const auto& level : rt.fibre_bijections) j["fibre_bijections"].push_back(level);
  std::cout << j.dump(2) << "\n";
  return rt.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Computations with nu-sets: words, shapes, indexed presentations, parametricity."};
  app.require_subcommand(1);
  app.fallthrough();
  Style style;
  bool as_json = false;
  app.add_flag("--unicode", style.unicode, "print the star letter as U+22C6");
  app.add_flag("--json", as_json, "machine-readable JSON on stdout");

  int nu = 0, p = 0, n = 0;
  auto* hom = app.add_subcommand("hom", "list the words of Hom(p, n)");
  hom->add_option("--nu", nu, "arity")->required();
  hom->add_option("-p", p, "source object")->required();
  hom->add_option("-n", n, "target object")->required();

  std::string g, f;
  auto* comp = app.add_subcommand("compose", "composite g . f of two words (quote '*')");
  comp->add_option("--nu", nu, "arity")->required();
  comp->add_option("g", g, "outer word")->required();
  comp->add_option("f", f, "inner word, one letter per star of g")->required();

  std::optional<int> shape_n, geo;
  bool dot = false;
  std::string out_file;
  auto* shape = app.add_subcommand("shape", "standard shape: cell inventory, JSON or DOT");
  shape->add_option("--nu", nu, "arity")->required();
  auto* shape_n_opt = shape->add_option(
      "-n", shape_n, "representing object n.  For nu=1 this is the augmented numbering: "
                     "geometric dimension n-1 (so -n 3 is the 2-simplex)");
  shape->add_option("--geometric-dim", geo,
                    "geometric dimension.  For nu=1 this selects object n+1, for nu>=2 it equals n")
      ->excludes(shape_n_opt);
  shape->add_flag("--dot", dot, "Graphviz DOT of points and lines");
  shape->add_option("-o,--output", out_file, "also write the shape as a fibred JSON file");

  std::string file;
  bool no_coherence = false;
  auto* validate = app.add_subcommand("validate", "functor laws (fibred) or totality and coherence (indexed)");
  validate->add_option("file", file, "nu-set JSON file, - for stdin")->required();
  validate->add_flag("--no-coherence", no_coherence, "indexed input: skip coherence checks");

  std::string to;
  auto* convert = app.add_subcommand("convert", "fibred <-> indexed presentation");
  convert->add_option("file", file, "nu-set JSON file, - for stdin")->required();
  convert->add_option("--to", to, "target presentation")->check(CLI::IsMember({"indexed", "fibred"}));
  convert->add_option("-o,--output", out_file, "output file (default stdout)");

  Source coh_src;
  std::optional<int> max_n;
  auto* coh = app.add_subcommand("coh-check", "coherence of restrictions over every legal index");
  coh_src.attach(coh);
  coh->add_option("--max-n", max_n, "largest frame dimension checked (default: truncation)");

  std::optional<int> steps;
  std::string type_text;
  auto* param = app.add_subcommand(
      "param", "iterated parametricity: -n steps from U, or one step on a type from file/stdin");
  param->add_option("--nu", nu, "arity")->required();
  param->add_option("-n", steps, "number of iterations starting from U");
  param->add_option("file", file, "surface-syntax type, - for stdin");
  param->add_option("--type", type_text, "surface-syntax type given inline");

  int levels = 0;
  auto* extend = app.add_subcommand("extend", "extend an indexed set by singleton fibres");
  extend->add_option("file", file, "nu-set JSON file, - for stdin")->required();
  extend->add_option("--levels", levels, "number of levels to add")->required();
  extend->add_option("-o,--output", out_file, "output file (default stdout)");

  Source rt_src;
  auto* roundtrip = app.add_subcommand("roundtrip", "fibred/indexed round trips with bijections");
  rt_src.attach(roundtrip);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*hom) return run_hom(nu, p, n, as_json, style);
    if (*comp) return run_compose(nu, g, f, as_json, style);
    if (*shape) return run_shape(nu, shape_n, geo, dot, as_json, out_file, style);
    if (*validate) return run_validate(file, no_coherence, as_json);
    if (*convert) return run_convert(file, to, out_file);
    if (*coh) return run_coh_check(coh_src, max_n, as_json);
    if (*param) return run_param(nu, steps, file, type_text, as_json);
    if (*extend) return run_extend(file, levels, out_file);
    if (*roundtrip) return run_roundtrip(rt_src, as_json);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const nuset::Error& e) {
    if (as_json)
      std::cout << json{{"ok", false}, {"error", to_string(e.kind())}, {"message", e.what()}}.dump(2)
                << "\n";
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
