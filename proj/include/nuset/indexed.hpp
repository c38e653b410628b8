#pragma once

// Indexed presentation: per dimension n, a finite family of fibres keyed by
// full frames.  Frames, layers and paintings are finite trees; a painting
// stores its own layers p..dim-1 and the terminal cell, the lower layers
// living in the frame it is painted over.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "nuset/error.hpp"
#include "nuset/presheaf.hpp"
#include "nuset/report.hpp"
#include "nuset/word.hpp"

namespace nuset {

struct Painting;

/// ν paintings, one per direction.
struct Layer {
  std::vector<Painting> parts;
};

struct Painting {
  int dim = 0;
  std::vector<Layer> layers;
  std::size_t cell = 0;
};

/// The first p = layers.size() layers of a boundary of a dim-cell.
struct Frame {
  int dim = 0;
  std::vector<Layer> layers;

  int p() const noexcept { return static_cast<int>(layers.size()); }
  bool full() const noexcept { return p() == dim; }
};

// Canonical keys.  Frame: "(" layers ")"; layer: "[" parts "]"; painting:
// the cell number alone when it has no layers, else "(" layers cell ")".

namespace detail {
inline void append_key(std::string& out, const Painting& c);

inline void append_key(std::string& out, const Layer& l) {
  out += '[';
  for (std::size_t i = 0; i < l.parts.size(); ++i) {
    if (i) out += ' ';
    append_key(out, l.parts[i]);
  }
  out += ']';
}

inline void append_key(std::string& out, const Painting& c) {
  if (c.layers.empty()) {
    out += std::to_string(c.cell);
    return;
  }
  out += '(';
  for (const Layer& l : c.layers) {
    append_key(out, l);
    out += ' ';
  }
  out += std::to_string(c.cell);
  out += ')';
}

inline void append_key(std::string& out, const Frame& d) {
  out += '(';
  for (std::size_t i = 0; i < d.layers.size(); ++i) {
    if (i) out += ' ';
    append_key(out, d.layers[i]);
  }
  out += ')';
}
}  // namespace detail

template <class T>
std::string serialize(const T& value) {
  std::string out;
  detail::append_key(out, value);
  return out;
}

inline bool operator==(const Painting& a, const Painting& b) {
  return a.dim == b.dim && serialize(a) == serialize(b);
}
inline bool operator==(const Layer& a, const Layer& b) { return serialize(a) == serialize(b); }
inline bool operator==(const Frame& a, const Frame& b) {
  return a.dim == b.dim && serialize(a) == serialize(b);
}

namespace detail {

class KeyParser {
 public:
  explicit KeyParser(std::string_view text) : text_(text) {}

  Frame frame(int dim) {
    Frame d{dim, {}};
    expect('(');
    while (peek() != ')') {
      if (!d.layers.empty()) expect(' ');
      d.layers.push_back(layer(dim - 1, d.p()));
    }
    expect(')');
    if (d.p() > dim) fail("frame of dimension " + std::to_string(dim) + " has too many layers");
    return d;
  }

  void finish() {
    if (pos_ != text_.size()) fail("trailing characters");
  }

 private:
  Layer layer(int part_dim, int p) {
    Layer l;
    expect('[');
    while (peek() != ']') {
      if (!l.parts.empty()) expect(' ');
      l.parts.push_back(painting(part_dim, p));
    }
    expect(']');
    return l;
  }

  Painting painting(int dim, int p) {
    if (dim < p) fail("painting below its frame");
    Painting c{dim, {}, 0};
    if (peek() != '(') {
      if (dim != p) fail("painting of dimension " + std::to_string(dim) + " needs layers");
      c.cell = number();
      return c;
    }
    expect('(');
    for (int j = p; j < dim; ++j) {
      c.layers.push_back(layer(dim - 1, j));
      expect(' ');
    }
    c.cell = number();
    expect(')');
    return c;
  }

  std::size_t number() {
    std::size_t start = pos_;
    std::size_t value = 0;
    while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9')
      value = value * 10 + static_cast<std::size_t>(text_[pos_++] - '0');
    if (pos_ == start) fail("expected a cell number");
    return value;
  }

  char peek() const {
    if (pos_ >= text_.size()) fail("unexpected end of key");
    return text_[pos_];
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::SyntaxError, "frame key '" + std::string(text_) + "' at offset " +
                                            std::to_string(pos_) + ": " + what);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Inverse of serialize for full or partial frames of the given dimension.
inline Frame parse_frame(std::string_view key, int dim) {
  detail::KeyParser parser(key);
  Frame d = parser.frame(dim);
  parser.finish();
  return d;
}

inline Frame unit_frame(int dim) { return Frame{dim, {}}; }

using Family = std::map<std::string, FinSet>;

/// families[n] maps full-frame keys of dimension n to fibres.  Truncation
/// -1 (no families at all) is the empty prefix a stream can start from.
class IndexedNuSet {
 public:
  explicit IndexedNuSet(Arity nu, std::vector<Family> families = {})
      : nu_(nu), families_(std::move(families)) {}

  Arity arity() const noexcept { return nu_; }
  int truncation() const noexcept { return static_cast<int>(families_.size()) - 1; }

  const std::vector<Family>& families() const noexcept { return families_; }
  const Family& family(int n) const {
    if (n < 0 || n > truncation())
      throw Error(ErrorKind::DimensionOutOfRange,
                  "no family at dimension " + std::to_string(n) + " (truncation " +
                      std::to_string(truncation()) + ")");
    return families_[static_cast<std::size_t>(n)];
  }

  const FinSet* find_fibre(int n, const std::string& key) const {
    const Family& f = family(n);
    auto it = f.find(key);
    return it == f.end() ? nullptr : &it->second;
  }

  const FinSet& fibre(int n, const std::string& key) const {
    const FinSet* f = find_fibre(n, key);
    if (!f)
      throw Error(ErrorKind::UnknownFrame,
                  "no fibre for frame " + key + " at dimension " + std::to_string(n));
    return *f;
  }

  IndexedNuSet truncated(int N) const {
    if (N < -1 || N > truncation())
      throw Error(ErrorKind::DimensionOutOfRange, "cannot truncate at " + std::to_string(N));
    return IndexedNuSet(nu_, std::vector<Family>(families_.begin(), families_.begin() + (N + 1)));
  }

  IndexedNuSet extended(Family next) const {
    auto families = families_;
    families.push_back(std::move(next));
    return IndexedNuSet(nu_, std::move(families));
  }

  bool operator==(const IndexedNuSet&) const = default;

 private:
  Arity nu_;
  std::vector<Family> families_;
};

// ---------------------------------------------------------------------------
// Restrictions.  Indices follow the frame/layer/painting tables literally:
// the dimension n is carried by the arguments and p is the number of layers
// of the frame d.

inline Frame restr_frame(const IndexedNuSet& S, int eps, int q, const Frame& d);
inline Layer restr_layer(const IndexedNuSet& S, int eps, int q, const Frame& d, const Layer& l);
inline Painting restr_painting(const IndexedNuSet& S, int eps, int q, const Frame& d,
                               const Painting& c);

namespace detail {
inline void side_condition(bool ok, const char* op, int p, int q, int n, const char* bound) {
  if (!ok)
    throw Error(ErrorKind::SideConditionViolated,
                std::string(op) + ": need " + bound + " with p=" + std::to_string(p) +
                    ", q=" + std::to_string(q) + ", n=" + std::to_string(n));
}

inline void check_direction(const IndexedNuSet& S, int eps) {
  if (eps < 0 || eps >= S.arity().value())
    throw Error(ErrorKind::IndexOutOfRange, "direction " + std::to_string(eps) +
                                                " outside arity " +
                                                std::to_string(S.arity().value()));
}

inline Frame with_layers(const Frame& d, const std::vector<Layer>& extra) {
  Frame full = d;
  full.layers.insert(full.layers.end(), extra.begin(), extra.end());
  return full;
}
}  // namespace detail

/// restr_frame(eps, q) on a frame(n, p), p <= q <= n-1: layer j becomes
/// restr_layer(eps, q-1) over the prefix of d below j.
inline Frame restr_frame(const IndexedNuSet& S, int eps, int q, const Frame& d) {
  const int n = d.dim, p = d.p();
  detail::side_condition(p <= q && q <= n - 1, "restr_frame", p, q, n, "p <= q <= n-1");
  detail::check_direction(S, eps);
  Frame out{n - 1, {}};
  out.layers.reserve(d.layers.size());
  Frame prefix{n, {}};
  for (const Layer& l : d.layers) {
    out.layers.push_back(restr_layer(S, eps, q - 1, prefix, l));
    prefix.layers.push_back(l);
  }
  return out;
}

/// Pointwise restriction of a layer(n, p), p <= q <= n-2.  Component ω sits
/// over restr_frame(ω, p)(d); the result component must sit over the frame
/// obtained the other way round, which is asserted (the transport).
inline Layer restr_layer(const IndexedNuSet& S, int eps, int q, const Frame& d, const Layer& l) {
  const int n = d.dim, p = d.p();
  detail::side_condition(p <= q && q <= n - 2, "restr_layer", p, q, n, "p <= q <= n-2");
  detail::check_direction(S, eps);
  const int nu = S.arity().value();
  if (static_cast<int>(l.parts.size()) != nu)
    throw Error(ErrorKind::CoherenceMismatch, "layer has " + std::to_string(l.parts.size()) +
                                                  " components, arity is " + std::to_string(nu));
  Layer out;
  out.parts.reserve(l.parts.size());
  for (int omega = 0; omega < nu; ++omega) {
    const Painting& c = l.parts[static_cast<std::size_t>(omega)];
    Frame over = restr_frame(S, omega, p, d);
    if (c.dim != n - 1 || static_cast<int>(c.layers.size()) != n - 1 - p)
      throw Error(ErrorKind::CoherenceMismatch,
                  "component " + std::to_string(omega) + " has the wrong shape for frame " +
                      serialize(d));
    const std::string full = serialize(detail::with_layers(over, c.layers));
    const FinSet* fibre = n - 1 <= S.truncation() ? S.find_fibre(n - 1, full) : nullptr;
    if (!fibre || c.cell >= fibre->size)
      throw Error(ErrorKind::CoherenceMismatch,
                  "component " + std::to_string(omega) + " of a layer over " + serialize(d) +
                      " is not a painting over " + serialize(over));
    Frame lhs = restr_frame(S, eps, q, over);
    Frame rhs = restr_frame(S, omega, p, restr_frame(S, eps, q + 1, d));
    if (serialize(lhs) != serialize(rhs))
      throw Error(ErrorKind::CoherenceMismatch,
                  "restrictions do not commute on " + serialize(d) + ": " + serialize(lhs) +
                      " vs " + serialize(rhs));
    out.parts.push_back(restr_painting(S, eps, q, over, c));
  }
  return out;
}

/// p = q projects direction eps of the first layer; p < q restricts the
/// first layer and recurses into the rest.
inline Painting restr_painting(const IndexedNuSet& S, int eps, int q, const Frame& d,
                               const Painting& c) {
  const int n = d.dim, p = d.p();
  detail::side_condition(p <= q && q <= n - 1, "restr_painting", p, q, n, "p <= q <= n-1");
  detail::check_direction(S, eps);
  if (c.dim != n || static_cast<int>(c.layers.size()) != n - p)
    throw Error(ErrorKind::CoherenceMismatch,
                "painting " + serialize(c) + " does not complete frame " + serialize(d));
  Painting out{n - 1, {}, 0};
  Frame prefix = d;
  for (int j = p; j < q; ++j) {
    const Layer& l = c.layers[static_cast<std::size_t>(j - p)];
    out.layers.push_back(restr_layer(S, eps, q - 1, prefix, l));
    prefix.layers.push_back(l);
  }
  const Painting& tail =
      c.layers[static_cast<std::size_t>(q - p)].parts.at(static_cast<std::size_t>(eps));
  out.layers.insert(out.layers.end(), tail.layers.begin(), tail.layers.end());
  out.cell = tail.cell;
  return out;
}

// ---------------------------------------------------------------------------
// Enumeration.

namespace detail {

class Enumerator {
 public:
  explicit Enumerator(const IndexedNuSet& S) : S_(S) {}

  const std::vector<Frame>& frames(int n, int p) {
    if (n < 0 || p < 0 || p > n || n > S_.truncation() + 1)
      throw Error(ErrorKind::DimensionOutOfRange,
                  "frames(" + std::to_string(n) + ", " + std::to_string(p) +
                      ") unavailable at truncation " + std::to_string(S_.truncation()));
    auto k = std::make_pair(n, p);
    if (auto it = frames_.find(k); it != frames_.end()) return it->second;
    std::vector<Frame> out;
    if (p == 0) {
      out.push_back(unit_frame(n));
    } else {
      for (const Frame& d : frames(n, p - 1))
        for (Layer& l : layers(d)) {
          Frame e = d;
          e.layers.push_back(std::move(l));
          out.push_back(std::move(e));
        }
    }
    return frames_.emplace(k, std::move(out)).first->second;
  }

  /// Layers(n, p) over d: one painting(n-1, p) per direction, each over
  /// restr_frame(ω, p)(d), in product order with direction 0 outermost.
  std::vector<Layer> layers(const Frame& d) {
    const int nu = S_.arity().value();
    std::vector<std::vector<Painting>> choices;
    for (int omega = 0; omega < nu; ++omega)
      choices.push_back(paintings(restr_frame(S_, omega, d.p(), d)));
    std::vector<Layer> out;
    Layer current;
    product(choices, 0, current, out);
    return out;
  }

  const std::vector<Painting>& paintings(const Frame& d) {
    auto k = std::make_pair(d.dim, serialize(d));
    if (auto it = paintings_.find(k); it != paintings_.end()) return it->second;
    std::vector<Painting> out;
    if (d.full()) {
      const FinSet& fibre = S_.fibre(d.dim, k.second);
      for (std::size_t i = 0; i < fibre.size; ++i) out.push_back(Painting{d.dim, {}, i});
    } else {
      for (Layer& l : layers(d)) {
        Frame e = d;
        e.layers.push_back(l);
        for (const Painting& rest : paintings(e)) {
          Painting c{d.dim, {l}, rest.cell};
          c.layers.insert(c.layers.end(), rest.layers.begin(), rest.layers.end());
          out.push_back(std::move(c));
        }
      }
    }
    return paintings_.emplace(std::move(k), std::move(out)).first->second;
  }

 private:
  static void product(const std::vector<std::vector<Painting>>& choices, std::size_t i,
                      Layer& current, std::vector<Layer>& out) {
    if (i == choices.size()) {
      out.push_back(current);
      return;
    }
    for (const Painting& c : choices[i]) {
      current.parts.push_back(c);
      product(choices, i + 1, current, out);
      current.parts.pop_back();
    }
  }

  const IndexedNuSet& S_;
  std::map<std::pair<int, int>, std::vector<Frame>> frames_;
  std::map<std::pair<int, std::string>, std::vector<Painting>> paintings_;
};

}  // namespace detail

/// All frames with p layers of a dim-n boundary.  Needs families below n
/// only, so n may exceed the truncation by one.
inline std::vector<Frame> enumerate_frames(const IndexedNuSet& S, int n, int p) {
  detail::Enumerator e(S);
  return e.frames(n, p);
}

/// All paintings completing d; for a full frame, the fibre elements.
inline std::vector<Painting> enumerate_paintings(const IndexedNuSet& S, const Frame& d) {
  if (d.dim > S.truncation())
    throw Error(ErrorKind::DimensionOutOfRange,
                "paintings of dimension " + std::to_string(d.dim) + " above truncation " +
                    std::to_string(S.truncation()));
  detail::Enumerator e(S);
  return e.paintings(d);
}

/// The full frame of a painting over the unit frame.
inline Frame frame_of(const Painting& c) { return Frame{c.dim, c.layers}; }

/// Codimension-1 face (eps, q) of a cell given by its full frame and index,
/// returned as a painting over the unit frame one dimension down.
inline Painting cell_face(const IndexedNuSet& S, int eps, int q, const Frame& d, std::size_t cell) {
  return restr_painting(S, eps, q, unit_frame(d.dim), Painting{d.dim, d.layers, cell});
}

/// Distinct cells of each dimension below d.dim reachable as iterated faces
/// of the full frame d (the boundary inventory).
inline std::vector<std::size_t> boundary_inventory(const IndexedNuSet& S, const Frame& d) {
  std::vector<std::set<std::string>> seen(static_cast<std::size_t>(std::max(d.dim, 0)));
  std::vector<Painting> frontier{Painting{d.dim, d.layers, 0}};
  for (int m = d.dim; m > 0; --m) {
    std::vector<Painting> next;
    for (const Painting& c : frontier)
      for (int q = 0; q < m; ++q)
        for (int eps = 0; eps < S.arity().value(); ++eps) {
          Painting f = restr_painting(S, eps, q, unit_frame(m), c);
          if (seen[static_cast<std::size_t>(m - 1)].insert(serialize(f)).second)
            next.push_back(std::move(f));
        }
    frontier = std::move(next);
  }
  std::vector<std::size_t> counts;
  for (const auto& s : seen) counts.push_back(s.size());
  return counts;
}

// ---------------------------------------------------------------------------
// Coherence.

namespace detail {
inline void coh_side_condition(int p, int r, int q, int n) {
  if (!(0 <= p && p <= r && r <= q && q <= n - 2))
    throw Error(ErrorKind::SideConditionViolated,
                "coherence needs p <= r <= q <= n-2, got p=" + std::to_string(p) +
                    ", r=" + std::to_string(r) + ", q=" + std::to_string(q) +
                    ", n=" + std::to_string(n));
}

inline std::string coh_label(int eps, int omega, int q, int r, int n, int p) {
  return "eps=" + std::to_string(eps) + " omega=" + std::to_string(omega) +
         " q=" + std::to_string(q) + " r=" + std::to_string(r) + " n=" + std::to_string(n) +
         " p=" + std::to_string(p);
}
}  // namespace detail

/// restr(eps, q) . restr(omega, r) = restr(omega, r) . restr(eps, q+1) on
/// every frame(n, p).  Transport failures are recorded, not thrown.
inline Report check_coh_frame(const IndexedNuSet& S, int eps, int omega, int q, int r, int n,
                              int p) {
  detail::coh_side_condition(p, r, q, n);
  Report report;
  const std::string where = detail::coh_label(eps, omega, q, r, n, p);
  for (const Frame& d : enumerate_frames(S, n, p)) {
    ++report.checked;
    try {
      Frame lhs = restr_frame(S, eps, q, restr_frame(S, omega, r, d));
      Frame rhs = restr_frame(S, omega, r, restr_frame(S, eps, q + 1, d));
      if (serialize(lhs) != serialize(rhs))
        report.add("coh-frame", where + " d=" + serialize(d) + ": " + serialize(lhs) + " vs " +
                                    serialize(rhs));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::CoherenceMismatch) throw;
      report.add("transport", where + " d=" + serialize(d) + ": " + e.what());
    }
  }
  return report;
}

/// The painting analogue, over every (d, c) with d a frame(n, p) and c a
/// painting completing it.  When p = r both sides must also agree with the
/// direct restriction of the first layer's omega component.
inline Report check_coh_painting(const IndexedNuSet& S, int eps, int omega, int q, int r, int n,
                                 int p) {
  detail::coh_side_condition(p, r, q, n);
  Report report;
  const std::string where = detail::coh_label(eps, omega, q, r, n, p);
  detail::Enumerator en(S);
  for (const Frame& d : en.frames(n, p)) {
    for (const Painting& c : en.paintings(d)) {
      ++report.checked;
      try {
        Painting lhs = restr_painting(S, eps, q, restr_frame(S, omega, r, d),
                                      restr_painting(S, omega, r, d, c));
        Painting rhs = restr_painting(S, omega, r, restr_frame(S, eps, q + 1, d),
                                      restr_painting(S, eps, q + 1, d, c));
        if (serialize(lhs) != serialize(rhs))
          report.add("coh-painting", where + " d=" + serialize(d) + " c=" + serialize(c) + ": " +
                                         serialize(lhs) + " vs " + serialize(rhs));
        if (p == r) {
          Painting direct = restr_painting(S, eps, q, restr_frame(S, omega, p, d),
                                           c.layers.front().parts.at(static_cast<std::size_t>(omega)));
          if (serialize(direct) != serialize(lhs))
            report.add("coh-painting-base", where + " d=" + serialize(d) + " c=" + serialize(c) +
                                                ": projection collapse fails");
        }
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::CoherenceMismatch) throw;
        report.add("transport", where + " d=" + serialize(d) + " c=" + serialize(c) + ": " +
                                    e.what());
      }
    }
  }
  return report;
}

/// Runs both coherence checkers over every legal index tuple with n <= max_n.
inline Report check_coherence(const IndexedNuSet& S, int max_n) {
  Report report;
  const int nu = S.arity().value();
  for (int n = 2; n <= max_n; ++n)
    for (int p = 0; p <= n - 2; ++p)
      for (int r = p; r <= n - 2; ++r)
        for (int q = r; q <= n - 2; ++q)
          for (int eps = 0; eps < nu; ++eps)
            for (int omega = 0; omega < nu; ++omega) {
              report.merge(check_coh_frame(S, eps, omega, q, r, n, p));
              report.merge(check_coh_painting(S, eps, omega, q, r, n, p));
            }
  return report;
}

/// Totality of each family over the enumerated full frames, well-formed
/// keys, and (optionally) coherence up to the truncation.
inline Report validate_indexed(const IndexedNuSet& S, bool coherence = true) {
  Report report;
  detail::Enumerator en(S);
  for (int n = 0; n <= S.truncation(); ++n) {
    for (const auto& [key, fibre] : S.family(n)) {
      try {
        Frame d = parse_frame(key, n);
        if (!d.full()) report.add("malformed frame key", "dim " + std::to_string(n) + " " + key);
      } catch (const Error& e) {
        report.add("malformed frame key", "dim " + std::to_string(n) + " " + e.what());
      }
      if (fibre.labels && fibre.labels->size() != fibre.size)
        report.add("label count", "dim " + std::to_string(n) + " " + key);
    }
    std::set<std::string> enumerated;
    try {
      for (const Frame& d : en.frames(n, n)) enumerated.insert(serialize(d));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::UnknownFrame && e.kind() != ErrorKind::CoherenceMismatch) throw;
      report.add("missing fibre", "dim " + std::to_string(n) + " enumeration: " + e.what());
      return report;
    }
    for (const std::string& key : enumerated)
      if (!S.family(n).count(key))
        report.add("missing fibre", "dim " + std::to_string(n) + " " + key);
    for (const auto& entry : S.family(n)) {
      ++report.checked;
      if (!enumerated.count(entry.first))
        report.add("orphan frame key", "dim " + std::to_string(n) + " " + entry.first);
    }
  }
  if (coherence && report.ok()) report.merge(check_coherence(S, S.truncation()));
  return report;
}

}  // namespace nuset
