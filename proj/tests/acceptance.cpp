// Acceptance gate: one PASS/FAIL line per criterion, exit 0 iff all pass.
// Time limits are wall-clock and pinned below.

#include <chrono>
#include <cstdint>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "corpus.hpp"
#include "nuset/nuset.hpp"

namespace {

using namespace nuset;
using Clock = std::chrono::steady_clock;

constexpr double kLimitShapesMs = 1000;
constexpr double kLimitCategoryMs = 10000;
constexpr double kLimitPresheafMs = 10000;
constexpr double kLimitCoherenceMs = 60000;
constexpr double kLimitRoundTripMs = 60000;
constexpr double kLimitParamMs = 5000;
constexpr double kLimitStreamMs = 10000;
constexpr double kLimitTransportMs = 60000;

constexpr int kRandomTriples = 1000;
constexpr std::uint64_t kTripleSeed = 20240601;

// Collects failures of one criterion; at most a few are printed.
struct Outcome {
  std::vector<std::string> failures;
  std::string summary;

  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

int g_failed = 0;

void run(int id, const char* title, double limit_ms, const std::function<void(Outcome&)>& body) {
  Outcome out;
  auto t0 = Clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.failures.push_back(std::string("exception: ") + e.what());
  }
  double ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  bool in_time = ms <= limit_ms;
  bool pass = out.failures.empty() && in_time;
  if (!pass) ++g_failed;
  std::ostringstream line;
  line.setf(std::ios::fixed);
  line.precision(1);
  line << "criterion " << id << ": " << (pass ? "PASS" : "FAIL") << "  " << title << "  [" << ms
       << " ms, limit " << limit_ms << " ms]";
  if (!out.summary.empty()) line << "  " << out.summary;
  std::cout << line.str() << "\n";
  if (!in_time) std::cout << "    over the time limit\n";
  for (std::size_t i = 0; i < out.failures.size() && i < 5; ++i)
    std::cout << "    " << out.failures[i] << "\n";
  if (out.failures.size() > 5) std::cout << "    ... " << out.failures.size() - 5 << " more\n";
}

std::string ascii(std::string s) {
  const std::string star = "\xE2\x8B\x86";
  for (std::size_t at; (at = s.find(star)) != std::string::npos;) s.replace(at, star.size(), "*");
  return s;
}

// ---------------------------------------------------------------------------

struct Figure {
  const char* name;
  int nu;
  int geometric_dim;
  std::vector<std::size_t> inventory;
  std::vector<std::vector<std::string>> labels;  // per geometric level
};

void shapes(Outcome& out) {
  const std::vector<Figure> figures = {
      {"Delta+^0", 1, 0, {1}, {{"\xE2\x8B\x86"}}},
      {"Delta+^1", 1, 1, {2, 1}, {{"\xE2\x8B\x86" "0", "0\xE2\x8B\x86"}, {"\xE2\x8B\x86\xE2\x8B\x86"}}},
      {"Delta+^2", 1, 2, {3, 3, 1},
       {{"00\xE2\x8B\x86", "\xE2\x8B\x86" "00", "0\xE2\x8B\x86" "0"},
        {"0\xE2\x8B\x86\xE2\x8B\x86", "\xE2\x8B\x86" "0\xE2\x8B\x86", "\xE2\x8B\x86\xE2\x8B\x86" "0"},
        {"\xE2\x8B\x86\xE2\x8B\x86\xE2\x8B\x86"}}},
      {"Square^0", 2, 0, {1}, {{""}}},
      {"Square^1", 2, 1, {2, 1}, {{"L", "R"}, {"\xE2\x8B\x86"}}},
      {"Square^2", 2, 2, {4, 4, 1},
       {{"LR", "RR", "LL", "RL"},
        {"L\xE2\x8B\x86", "R\xE2\x8B\x86", "\xE2\x8B\x86L", "\xE2\x8B\x86R"},
        {"\xE2\x8B\x86\xE2\x8B\x86"}}},
  };
  for (const Figure& f : figures) {
    // ν = 1 counts in the augmented numbering: geometric dimension g is the
    // representable on g + 1.
    const int n = f.nu == 1 ? f.geometric_dim + 1 : f.geometric_dim;
    TruncatedPresheaf P = standard_shape(Arity(f.nu), static_cast<std::size_t>(n));
    const int base = geometric_base(P);
    std::vector<std::size_t> inventory;
    for (int p = base; p <= n; ++p) inventory.push_back(P.carrier(p).size);
    out.expect(inventory == f.inventory, std::string(f.name) + ": inventory differs");
    for (std::size_t k = 0; k < f.labels.size(); ++k) {
      std::set<std::string> want, got;
      for (const std::string& s : f.labels[k]) want.insert(ascii(s));
      const FinSet& c = P.carrier(base + static_cast<int>(k));
      for (std::size_t x = 0; x < c.size; ++x) got.insert(c.label(x));
      out.expect(want == got, std::string(f.name) + ": labels differ at level " + std::to_string(k));
    }
  }
  out.summary = std::to_string(figures.size()) + " figures";
}

// ---------------------------------------------------------------------------

void category(Outcome& out) {
  std::size_t checked = 0;
  for (int v = 1; v <= 2; ++v) {
    Arity nu(v);
    for (std::size_t n = 0; n <= 5; ++n)
      for (std::size_t k = 0; k <= n; ++k)
        for (const Word& h : hom_enumerate(nu, k, n)) {
          ++checked;
          out.expect(compose(h, identity(nu, k)) == h && compose(identity(nu, n), h) == h,
                     "identity fails for " + h.to_string());
          for (std::size_t m = 0; m <= k; ++m)
            for (const Word& g : hom_enumerate(nu, m, k)) {
              const Word hg = compose(h, g);
              for (std::size_t p = 0; p <= m; ++p)
                for (const Word& f : hom_enumerate(nu, p, m)) {
                  ++checked;
                  if (compose(hg, f) != compose(h, compose(g, f)))
                    out.expect(false, "associativity fails for " + h.to_string() + ", " +
                                          g.to_string() + ", " + f.to_string());
                }
            }
        }
  }
  // ν = 3: random composable triples with n <= 6.
  std::mt19937_64 rng(kTripleSeed);
  const Arity nu(3);
  auto pick = [&](std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  };
  auto random_word = [&](std::size_t p, std::size_t n) {
    std::vector<Word> all = hom_enumerate(nu, p, n);
    return all[pick(0, all.size() - 1)];
  };
  for (int i = 0; i < kRandomTriples; ++i) {
    std::size_t n = pick(0, 6), k = pick(0, n), m = pick(0, k), p = pick(0, m);
    Word h = random_word(k, n), g = random_word(m, k), f = random_word(p, m);
    ++checked;
    out.expect(compose(compose(h, g), f) == compose(h, compose(g, f)),
               "nu=3 associativity fails for " + h.to_string() + ", " + g.to_string() + ", " +
                   f.to_string());
    out.expect(compose(h, identity(nu, k)) == h && compose(identity(nu, n), h) == h,
               "nu=3 identity fails for " + h.to_string());
  }
  out.summary = std::to_string(checked) + " cases";
}

// ---------------------------------------------------------------------------

void presheaf(Outcome& out) {
  std::size_t checked = 0;
  for (int v = 1; v <= 2; ++v)
    for (std::size_t n = 0; n <= 4; ++n) {
      Report r = check_functor_laws(standard_shape(Arity(v), n));
      checked += r.checked;
      out.expect(r.ok(), "standard nu=" + std::to_string(v) + " n=" + std::to_string(n) + ": " +
                             (r.ok() ? "" : r.violations.front().detail));
    }
  std::size_t detected = 0;
  const auto corruptions = corpus::law_corruptions();
  for (const auto& c : corruptions) {
    bool hit = !check_functor_laws(c.presheaf).ok();
    detected += hit;
    out.expect(hit, "corruption not detected: " + c.name);
  }
  out.expect(corruptions.size() == 10, "expected 10 corruptions");
  out.summary = std::to_string(checked) + " law checks, " + std::to_string(detected) + "/" +
                std::to_string(corruptions.size()) + " corruptions detected";
}

// ---------------------------------------------------------------------------

// Transport failures seen while running criteria 4 and 5.
std::size_t g_transport_in_corpus = 0;

std::size_t count_transport(const Report& r) {
  std::size_t k = 0;
  for (const auto& v : r.violations) k += v.kind == "transport";
  return k;
}

void coherence(Outcome& out) {
  std::vector<corpus::Named> sets = corpus::standard_indexed(3);
  for (auto& r : corpus::random_instances()) sets.push_back(std::move(r));
  std::size_t checked = 0;
  for (const auto& [name, S] : sets) {
    Report structural = validate_indexed(S, false);
    out.expect(structural.ok(), name + ": not a valid indexed set");
    Report r = check_coherence(S, S.truncation());
    checked += r.checked;
    g_transport_in_corpus += count_transport(r);
    out.expect(r.ok(), name + ": " + (r.ok() ? "" : r.violations.front().kind + " " + r.violations.front().detail));
  }
  // The full boundary of the cube: 8 points, 12 lines, 6 squares.
  IndexedNuSet cube = to_indexed(standard_shape(Arity(2), 3));
  const auto& top = cube.family(3);
  out.expect(top.size() == 1, "cube has one filled frame");
  if (!top.empty()) {
    Frame d = parse_frame(top.begin()->first, 3);
    out.expect(boundary_inventory(cube, d) == std::vector<std::size_t>{8, 12, 6},
               "cube boundary inventory is not 8+12+6");
  }
  out.summary = std::to_string(sets.size()) + " sets, " + std::to_string(checked) + " equations";
}

// ---------------------------------------------------------------------------

bool partition_holds(const TruncatedPresheaf& P, const IndexedNuSet& S) {
  if (P.truncation() != S.truncation()) return false;
  for (int n = 0; n <= P.truncation(); ++n) {
    std::size_t total = 0;
    for (const auto& entry : S.family(n)) total += entry.second.size;
    if (total != P.carrier(n).size) return false;
  }
  return true;
}

void round_trips(Outcome& out) {
  std::size_t runs = 0;
  auto both = [&](const std::string& name, const TruncatedPresheaf& P, const IndexedNuSet& S) {
    try {
      RoundTripReport a = round_trip_report(P);
      RoundTripReport b = round_trip_report(S);
      runs += 2;
      out.expect(a.ok(), name + " fibred round trip: " + (a.ok() ? "" : a.report.violations.front().detail));
      out.expect(b.ok(), name + " indexed round trip: " + (b.ok() ? "" : b.report.violations.front().detail));
      out.expect(partition_holds(P, S), name + ": fibre sizes do not sum to the carriers");
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::CoherenceMismatch) ++g_transport_in_corpus;
      throw;
    }
  };
  for (int v = 1; v <= 2; ++v)
    for (std::size_t n = 0; n <= 3; ++n) {
      TruncatedPresheaf P = standard_shape(Arity(v), n);
      both("standard nu=" + std::to_string(v) + " n=" + std::to_string(n), P, to_indexed(P));
    }
  for (int v = 1; v <= 2; ++v)
    for (std::uint64_t seed = 1; seed <= corpus::kRandomPerArity; ++seed) {
      IndexedNuSet S = random_indexed(Arity(v), 2, seed);
      both("random nu=" + std::to_string(v) + " seed=" + std::to_string(seed), to_fibred(S), S);
    }
  out.summary = std::to_string(runs) + " round trips";
}

// ---------------------------------------------------------------------------

void parametricity(Outcome& out) {
  std::size_t checked = 0;
  for (int v = 1; v <= 2; ++v)
    for (std::size_t n = 0; n <= 4; ++n) {
      auto stats = telescope_stats(iterate_types(Arity(v), n));
      for (std::size_t p = 0; p < n; ++p) {
        ++checked;
        std::size_t got = stats.count(p) ? stats.at(p) : 0;
        std::uint64_t want = binomial(n, p);
        for (std::size_t i = p; i < n; ++i) want *= static_cast<std::uint64_t>(v);
        out.expect(got == want, "nu=" + std::to_string(v) + " n=" + std::to_string(n) + " p=" +
                                    std::to_string(p) + ": " + std::to_string(got) + " vs " +
                                    std::to_string(want));
      }
      for (const auto& [p, c] : stats)
        out.expect(p < n, "stray level " + std::to_string(p) + " at n=" + std::to_string(n));
    }
  DisplayForm form = display_form(to_telescope(iterate_types(Arity(2), 2)));
  const std::string target = "X_1(a,b) \xC3\x97 X_1(c,d) \xC3\x97 X_1(a,c) \xC3\x97 X_1(b,d) \xE2\x86\x92 U";
  out.expect(form.points.size() == 4, "expected four points");
  out.expect(display_matches(form, target), "display " + print_display(form) + " does not match");
  out.summary = std::to_string(checked) + " counts; " + print_display(form);
}

// ---------------------------------------------------------------------------

void streams(Outcome& out) {
  struct Base {
    int nu, N;
    std::uint64_t seed;
  };
  // Non-degenerate seeds; ν = 2 bases beyond one point and a few edges
  // grow past 10^4 frames by dimension 4.
  const std::vector<Base> bases = {{1, 2, 2}, {1, 2, 6}, {1, 2, 7}, {1, 2, 8}, {2, 1, 4}};
  constexpr int kTop = 4;
  std::size_t compared = 0;
  for (const Base& b : bases) {
    const std::string name = "nu=" + std::to_string(b.nu) + " seed=" + std::to_string(b.seed);
    IndexedNuSet D = random_indexed(Arity(b.nu), b.N, b.seed);
    NuSetStream s = extend_singleton(D);
    std::vector<std::string> keys;
    for (int M = 0; M <= kTop; ++M) keys.push_back(emit_indexed(s.take(M)));
    for (int M = 0; M <= kTop; ++M)
      for (int N = 0; N <= M; ++N) {
        ++compared;
        out.expect(emit_indexed(s.take(M).truncated(N)) == keys[static_cast<std::size_t>(N)],
                   name + ": take(" + std::to_string(N) + ") is not a prefix of take(" +
                       std::to_string(M) + ")");
      }
    // this/next: after k steps the head is the family at n0 + k.
    NuSetStream cur = s;
    for (int k = 0; cur.dimension() <= kTop; ++k, cur = cur.next()) {
      ++compared;
      out.expect(cur.head() == s.take(cur.dimension()).family(cur.dimension()),
                 name + ": head after " + std::to_string(k) + " steps differs");
      out.expect(emit_indexed(cur.prefix()) == keys[static_cast<std::size_t>(cur.dimension() - 1)],
                 name + ": state after " + std::to_string(k) + " steps differs");
    }
  }
  out.summary = std::to_string(bases.size()) + " streams, " + std::to_string(compared) + " comparisons";
}

// ---------------------------------------------------------------------------

// Every restr_layer call on a valid layer over a valid frame of the corpus.
std::size_t sweep_layers(const IndexedNuSet& S, Outcome& out, const std::string& name) {
  std::size_t calls = 0;
  detail::Enumerator en(S);
  const int nu = S.arity().value();
  for (int n = 2; n <= S.truncation(); ++n)
    for (int p = 0; p <= n - 2; ++p)
      for (const Frame& d : en.frames(n, p))
        for (const Layer& l : en.layers(d))
          for (int q = p; q <= n - 2; ++q)
            for (int eps = 0; eps < nu; ++eps) {
              ++calls;
              try {
                restr_layer(S, eps, q, d, l);
              } catch (const Error& e) {
                out.expect(e.kind() != ErrorKind::CoherenceMismatch,
                           name + ": transport raised on " + serialize(d));
                if (e.kind() != ErrorKind::CoherenceMismatch) throw;
              }
            }
  return calls;
}

void transport(Outcome& out) {
  out.expect(g_transport_in_corpus == 0,
             std::to_string(g_transport_in_corpus) + " transport failures during criteria 4-5");
  std::vector<corpus::Named> sets = corpus::standard_indexed(3);
  for (auto& r : corpus::random_instances()) sets.push_back(std::move(r));
  for (int v = 1; v <= 2; ++v)
    for (std::uint64_t seed = 1; seed <= corpus::kRandomPerArity; ++seed)
      sets.push_back({"random N=2", random_indexed(Arity(v), 2, seed)});
  std::size_t calls = 0;
  for (const auto& [name, S] : sets) calls += sweep_layers(S, out, name);

  std::size_t raised = 0;
  const auto corruptions = corpus::transport_corruptions();
  for (const auto& c : corruptions) {
    bool hit = false;
    try {
      c.run();
    } catch (const Error& e) {
      hit = e.kind() == ErrorKind::CoherenceMismatch;
    }
    raised += hit;
    out.expect(hit, "corruption not rejected: " + c.name);
  }
  out.expect(corruptions.size() == 5, "expected 5 corruptions");
  out.summary = std::to_string(calls) + " clean calls, " + std::to_string(raised) + "/" +
                std::to_string(corruptions.size()) + " corruptions rejected";
}

}  // namespace

int main() {
  run(1, "shape inventories and labels", kLimitShapesMs, shapes);
  run(2, "category laws", kLimitCategoryMs, category);
  run(3, "presheaf laws", kLimitPresheafMs, presheaf);
  run(4, "coherence", kLimitCoherenceMs, coherence);
  run(5, "equivalence round trips", kLimitRoundTripMs, round_trips);
  run(6, "parametricity correspondence", kLimitParamMs, parametricity);
  run(7, "stream laws", kLimitStreamMs, streams);
  run(8, "transport shadow", kLimitTransportMs, transport);
  std::cout << (g_failed == 0 ? "all criteria pass" : std::to_string(g_failed) + " criteria fail")
            << "\n";
  return g_failed == 0 ? 0 : 1;
}
