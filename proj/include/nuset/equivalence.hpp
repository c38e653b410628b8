#pragma once

// Fibred <-> indexed conversion.  A cell's boundary frame puts, at layer p
// and direction ω, the painting of its face (ω, p) (the letter ω at
// position p from the left), keeping that face's own layers from p up.

#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "nuset/error.hpp"
#include "nuset/indexed.hpp"
#include "nuset/presheaf.hpp"
#include "nuset/report.hpp"
#include "nuset/word.hpp"

namespace nuset {

/// Which letter position the layer index p stands for.  Left is the wired
/// convention; Mirrored (position n-1-p) exists so tests can show that
/// mixing it with the restriction operators breaks compatibility.
enum class FaceConvention { Left, Mirrored };

/// Boundary frames and fibre positions of every cell of P up to a level.
class FibredIndex {
 public:
  FibredIndex(const TruncatedPresheaf& P, int upto, FaceConvention conv = FaceConvention::Left)
      : P_(P), conv_(conv) {
    if (upto > P.truncation())
      throw Error(ErrorKind::DimensionOutOfRange,
                  "level " + std::to_string(upto) + " above truncation " +
                      std::to_string(P.truncation()));
    for (int n = 0; n <= upto; ++n) add_level(n);
  }

  const Frame& boundary(int n, std::size_t x) const { return levels_.at(n).frames.at(x); }
  const std::string& key(int n, std::size_t x) const { return levels_.at(n).keys.at(x); }
  std::size_t fibre_index(int n, std::size_t x) const { return levels_.at(n).rank.at(x); }
  int levels() const noexcept { return static_cast<int>(levels_.size()); }

  /// The painting of y (a cell of dimension m) over the first p layers of
  /// its boundary.
  Painting painting_of(int m, std::size_t y, int p) const {
    const Frame& b = boundary(m, y);
    Painting c{m, {}, fibre_index(m, y)};
    c.layers.assign(b.layers.begin() + p, b.layers.end());
    return c;
  }

 private:
  struct Level {
    std::vector<Frame> frames;
    std::vector<std::string> keys;
    std::vector<std::size_t> rank;
  };

  void add_level(int n) {
    Level level;
    std::map<std::string, std::size_t> seen;
    const std::size_t size = P_.carrier(n).size;
    for (std::size_t x = 0; x < size; ++x) {
      Frame d{n, {}};
      for (int p = 0; p < n; ++p) {
        Layer l;
        for (int omega = 0; omega < P_.arity().value(); ++omega) {
          const int pos = conv_ == FaceConvention::Left ? p : n - 1 - p;
          std::size_t y = P_.face(face_word(P_.arity(), omega, static_cast<std::size_t>(pos),
                                            static_cast<std::size_t>(n)),
                                  x);
          l.parts.push_back(painting_of(n - 1, y, p));
        }
        d.layers.push_back(std::move(l));
      }
      std::string k = serialize(d);
      level.rank.push_back(seen[k]++);
      level.keys.push_back(std::move(k));
      level.frames.push_back(std::move(d));
    }
    levels_.push_back(std::move(level));
  }

  const TruncatedPresheaf& P_;
  FaceConvention conv_;
  std::vector<Level> levels_;
};

inline Frame boundary_frame(const TruncatedPresheaf& P, int n, std::size_t x) {
  if (n < 0 || n > P.truncation())
    throw Error(ErrorKind::DimensionOutOfRange, "no cells at dimension " + std::to_string(n));
  if (x >= P.carrier(n).size)
    throw Error(ErrorKind::RangeError, "cell " + std::to_string(x) + " outside carrier of size " +
                                           std::to_string(P.carrier(n).size));
  return FibredIndex(P, n).boundary(n, x);
}

namespace detail {
/// Families from a fibred index; the first cell whose boundary is not an
/// enumerable frame is reported through *stray (or thrown when null).
inline IndexedNuSet group_cells(const TruncatedPresheaf& P, const FibredIndex& index,
                                std::string* stray = nullptr) {
  IndexedNuSet S(P.arity());
  for (int n = 0; n <= P.truncation(); ++n) {
    std::map<std::string, std::vector<std::size_t>> groups;
    for (std::size_t x = 0; x < P.carrier(n).size; ++x) groups[index.key(n, x)].push_back(x);
    Family family;
    for (const Frame& d : enumerate_frames(S, n, n)) {
      const std::string k = serialize(d);
      FinSet fibre;
      if (auto it = groups.find(k); it != groups.end()) {
        fibre.size = it->second.size();
        if (P.carrier(n).labels) {
          std::vector<std::string> labels;
          for (std::size_t x : it->second) labels.push_back(P.carrier(n).label(x));
          fibre.labels = std::move(labels);
        }
        groups.erase(it);
      }
      family.emplace(k, std::move(fibre));
    }
    if (!groups.empty()) {
      std::string msg = "boundary frame " + groups.begin()->first + " of a dimension-" +
                        std::to_string(n) + " cell is not an enumerable frame";
      if (!stray) throw Error(ErrorKind::ValidationFailure, msg);
      *stray = msg;
      return S;
    }
    S = S.extended(std::move(family));
  }
  return S;
}
}  // namespace detail

/// Groups the cells of each dimension by boundary frame.  Families are
/// total over the enumerated frames, with empty fibres where no cell lands.
inline IndexedNuSet to_indexed(const TruncatedPresheaf& P) {
  Report laws = check_functor_laws(P);
  if (!laws.ok())
    throw Error(ErrorKind::LawViolation, laws.violations.front().detail);
  return detail::group_cells(P, FibredIndex(P, P.truncation()));
}

/// Restricting a cell's boundary painting along (ω, q) must give the
/// painting of its face ω at letter position q.  This pins the position
/// convention; a mismatched convention fails here.
inline Report check_boundary_compatibility(const TruncatedPresheaf& P,
                                           FaceConvention conv = FaceConvention::Left) {
  Report report;
  FibredIndex index(P, P.truncation(), conv);
  std::string stray;
  IndexedNuSet S = detail::group_cells(P, index, &stray);
  if (!stray.empty()) {
    report.add("boundary", stray);
    return report;
  }
  for (int n = 1; n <= P.truncation(); ++n)
    for (std::size_t x = 0; x < P.carrier(n).size; ++x)
      for (int q = 0; q < n; ++q)
        for (int omega = 0; omega < P.arity().value(); ++omega) {
          ++report.checked;
          std::size_t y = P.face(face_word(P.arity(), omega, static_cast<std::size_t>(q),
                                           static_cast<std::size_t>(n)),
                                 x);
          const std::string want = serialize(index.painting_of(n - 1, y, 0));
          try {
            Painting got = cell_face(S, omega, q, index.boundary(n, x), index.fibre_index(n, x));
            if (serialize(got) != want)
              report.add("compatibility", "dim " + std::to_string(n) + " cell " +
                                              P.carrier(n).label(x) + " face (" +
                                              std::to_string(omega) + ", " + std::to_string(q) +
                                              "): " + serialize(got) + " vs " + want);
          } catch (const Error& e) {
            if (e.kind() != ErrorKind::CoherenceMismatch) throw;
            report.add("transport", e.what());
          }
        }
  return report;
}

/// Cells of dimension n listed frame by frame in enumeration order.
class IndexedCarriers {
 public:
  explicit IndexedCarriers(const IndexedNuSet& S) {
    for (int n = 0; n <= S.truncation(); ++n) {
      Level level;
      std::size_t offset = 0;
      for (const Frame& d : enumerate_frames(S, n, n)) {
        std::string k = serialize(d);
        const FinSet& fibre = S.fibre(n, k);
        level.offset.emplace(k, offset);
        for (std::size_t i = 0; i < fibre.size; ++i) level.cells.emplace_back(d, i);
        offset += fibre.size;
      }
      levels_.push_back(std::move(level));
    }
  }

  std::size_t size(int n) const { return levels_.at(n).cells.size(); }
  const std::pair<Frame, std::size_t>& cell(int n, std::size_t x) const {
    return levels_.at(n).cells.at(x);
  }
  std::size_t index(int n, const std::string& key, std::size_t i) const {
    return levels_.at(n).offset.at(key) + i;
  }

 private:
  struct Level {
    std::vector<std::pair<Frame, std::size_t>> cells;
    std::map<std::string, std::size_t> offset;
  };
  std::vector<Level> levels_;
};

/// Disjoint sum of the fibres; the face (ω, q) of (d, i) is read off by
/// restricting the painting (d, i) over the unit frame.
inline TruncatedPresheaf to_fibred(const IndexedNuSet& S) {
  Report valid = validate_indexed(S, false);
  if (!valid.ok())
    throw Error(ErrorKind::ValidationFailure,
                valid.violations.front().kind + ": " + valid.violations.front().detail);
  if (S.truncation() < 0)
    throw Error(ErrorKind::ValidationFailure, "an indexed set needs at least dimension 0");
  IndexedCarriers cells(S);
  std::vector<FinSet> carriers;
  for (int n = 0; n <= S.truncation(); ++n) {
    FinSet carrier = FinSet::sized(cells.size(n));
    std::vector<std::string> labels;
    bool labelled = true;
    for (std::size_t x = 0; x < cells.size(n) && labelled; ++x) {
      const auto& [d, i] = cells.cell(n, x);
      const FinSet& fibre = S.fibre(n, serialize(d));
      if (!fibre.labels) labelled = false;
      else labels.push_back(fibre.label(i));
    }
    if (labelled && std::set<std::string>(labels.begin(), labels.end()).size() == labels.size())
      carrier.labels = std::move(labels);
    carriers.push_back(std::move(carrier));
  }
  std::map<Word, FaceMap> faces;
  for (int n = 1; n <= S.truncation(); ++n) {
    for (std::size_t q = 0; q < static_cast<std::size_t>(n); ++q)
      for (int omega = 0; omega < S.arity().value(); ++omega) {
        FaceMap map;
        for (std::size_t x = 0; x < cells.size(n); ++x) {
          const auto& [d, i] = cells.cell(n, x);
          Painting f = cell_face(S, omega, static_cast<int>(q), d, i);
          map.push_back(cells.index(n - 1, serialize(frame_of(f)), f.cell));
        }
        faces.emplace(face_word(S.arity(), omega, q, static_cast<std::size_t>(n)), std::move(map));
      }
  }
  return TruncatedPresheaf(S.arity(), S.truncation(), std::move(carriers), std::move(faces));
}

struct RoundTripReport {
  Report report;
  /// fibred -> indexed -> fibred: carrier bijection per dimension.
  std::vector<std::vector<std::size_t>> carrier_bijections;
  /// indexed -> fibred -> indexed: per dimension and frame key, the fibre
  /// bijection as an index array.
  std::vector<std::map<std::string, std::vector<std::size_t>>> fibre_bijections;

  bool ok() const noexcept { return report.ok(); }
};

namespace detail {
inline bool is_bijection(const std::vector<std::size_t>& f, std::size_t target) {
  if (f.size() != target) return false;
  std::vector<bool> hit(target, false);
  for (std::size_t y : f) {
    if (y >= target || hit[y]) return false;
    hit[y] = true;
  }
  return true;
}
}  // namespace detail

/// P ~ to_fibred(to_indexed(P)) via x |-> position of (boundary(x), rank).
inline RoundTripReport round_trip_report(const TruncatedPresheaf& P) {
  RoundTripReport out;
  IndexedNuSet S = to_indexed(P);
  TruncatedPresheaf Q = to_fibred(S);
  FibredIndex index(P, P.truncation());
  IndexedCarriers cells(S);
  for (int n = 0; n <= P.truncation(); ++n) {
    std::size_t total = 0;
    for (const auto& [k, fibre] : S.family(n)) total += fibre.size;
    if (total != P.carrier(n).size)
      out.report.add("fibre-partition", "dim " + std::to_string(n) + ": fibres sum to " +
                                            std::to_string(total) + ", carrier has " +
                                            std::to_string(P.carrier(n).size));
    std::vector<std::size_t> phi;
    for (std::size_t x = 0; x < P.carrier(n).size; ++x)
      phi.push_back(cells.index(n, index.key(n, x), index.fibre_index(n, x)));
    if (!detail::is_bijection(phi, Q.carrier(n).size))
      out.report.add("bijection", "dim " + std::to_string(n) + ": carrier map is not bijective");
    out.carrier_bijections.push_back(std::move(phi));
  }
  for (const auto& [w, map] : P.faces()) {
    const int n = static_cast<int>(w.length());
    const FaceMap& back = Q.face(w);
    for (std::size_t x = 0; x < map.size(); ++x) {
      ++out.report.checked;
      const auto& phi_n = out.carrier_bijections[static_cast<std::size_t>(n)];
      const auto& phi_m = out.carrier_bijections[static_cast<std::size_t>(n - 1)];
      if (back.at(phi_n[x]) != phi_m.at(map[x])) {
        out.report.add("face", "face " + w.to_string() + " not preserved at element " +
                                   P.carrier(n).label(x));
        break;
      }
    }
  }
  return out;
}

/// S ~ to_indexed(to_fibred(S)): the element (d, i) must come back in the
/// fibre over d.
inline RoundTripReport round_trip_report(const IndexedNuSet& S) {
  RoundTripReport out;
  TruncatedPresheaf P = to_fibred(S);
  IndexedNuSet T = to_indexed(P);
  FibredIndex index(P, P.truncation());
  IndexedCarriers cells(S);
  for (int n = 0; n <= S.truncation(); ++n) {
    std::map<std::string, std::vector<std::size_t>> bij;
    std::size_t total = 0;
    for (const auto& [k, fibre] : S.family(n)) {
      total += fibre.size;
      const FinSet* other = T.find_fibre(n, k);
      if (!other || other->size != fibre.size)
        out.report.add("fibre", "dim " + std::to_string(n) + " frame " + k +
                                    ": fibre size changed");
      bij[k] = std::vector<std::size_t>(fibre.size, fibre.size);
    }
    if (T.family(n).size() != S.family(n).size())
      out.report.add("frames", "dim " + std::to_string(n) + ": frame sets differ");
    if (total != P.carrier(n).size)
      out.report.add("fibre-partition", "dim " + std::to_string(n));
    for (std::size_t x = 0; x < cells.size(n); ++x) {
      ++out.report.checked;
      const auto& [d, i] = cells.cell(n, x);
      const std::string k = serialize(d);
      if (index.key(n, x) != k) {
        out.report.add("boundary", "dim " + std::to_string(n) + " cell " + std::to_string(x) +
                                       " returns over " + index.key(n, x) + " instead of " + k);
        continue;
      }
      bij[k].at(i) = index.fibre_index(n, x);
    }
    for (const auto& [k, f] : bij)
      if (!detail::is_bijection(f, f.size()))
        out.report.add("bijection", "dim " + std::to_string(n) + " frame " + k);
    out.fibre_bijections.push_back(std::move(bij));
  }
  return out;
}

/// Valid by construction: families are filled level by level over the
/// enumerated frames with fibre sizes drawn uniformly from {0, 1, 2}.
inline IndexedNuSet random_indexed(Arity nu, int N, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> size(0, 2);
  IndexedNuSet S(nu);
  for (int n = 0; n <= N; ++n) {
    Family family;
    for (const Frame& d : enumerate_frames(S, n, n))
      family.emplace(serialize(d), FinSet::sized(static_cast<std::size_t>(size(rng))));
    S = S.extended(std::move(family));
  }
  return S;
}

inline TruncatedPresheaf random_presheaf(Arity nu, int N, std::uint64_t seed) {
  return to_fibred(random_indexed(nu, N, seed));
}

}  // namespace nuset
