#pragma once

// Finite fibred ν-sets truncated at some dimension N: a finite carrier per
// dimension and one total map per codimension-1 word.  Actions of arbitrary
// words are derived by peeling letters off with factor_leftmost.

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "nuset/error.hpp"
#include "nuset/report.hpp"
#include "nuset/word.hpp"

namespace nuset {

/// Elements are 0..size-1; labels are optional and, when present, distinct.
struct FinSet {
  std::size_t size = 0;
  std::optional<std::vector<std::string>> labels;

  static FinSet sized(std::size_t n) { return FinSet{n, std::nullopt}; }
  static FinSet labelled(std::vector<std::string> names) {
    std::set<std::string> seen(names.begin(), names.end());
    if (seen.size() != names.size())
      throw Error(ErrorKind::RangeError, "element labels must be distinct");
    FinSet s{names.size(), std::move(names)};
    return s;
  }

  std::string label(std::size_t i) const {
    if (labels) return (*labels).at(i);
    return std::to_string(i);
  }

  bool operator==(const FinSet&) const = default;
};

using FaceMap = std::vector<std::size_t>;

class TruncatedPresheaf {
 public:
  /// faces must hold an entry for every codimension-1 word at every
  /// dimension 1..trunc, each a total map into the carrier one step down.
  TruncatedPresheaf(Arity nu, int trunc, std::vector<FinSet> carriers,
                    std::map<Word, FaceMap> faces)
      : nu_(nu), trunc_(trunc), carriers_(std::move(carriers)), faces_(std::move(faces)) {
    if (trunc_ < 0)
      throw Error(ErrorKind::DimensionOutOfRange, "truncation must be non-negative");
    if (carriers_.size() != static_cast<std::size_t>(trunc_) + 1)
      throw Error(ErrorKind::RangeError, "expected " + std::to_string(trunc_ + 1) +
                                             " carriers, got " +
                                             std::to_string(carriers_.size()));
    for (const auto& [w, map] : faces_) {
      if (w.arity() != nu_)
        throw Error(ErrorKind::ArityError, "face word '" + w.to_string() + "' has the wrong arity");
      if (w.length() == 0 || w.stars() + 1 != w.length())
        throw Error(ErrorKind::RangeError, "'" + w.to_string() + "' is not a codimension-1 word");
      if (w.length() > static_cast<std::size_t>(trunc_))
        throw Error(ErrorKind::DimensionOutOfRange,
                    "face '" + w.to_string() + "' lies above the truncation");
    }
    for (int n = 1; n <= trunc_; ++n) {
      for (const Word& w : hom_enumerate(nu_, n - 1, n)) {
        auto it = faces_.find(w);
        if (it == faces_.end())
          throw Error(ErrorKind::MissingFace,
                      "no face map for '" + w.to_string() + "' at dimension " + std::to_string(n));
        if (it->second.size() != carriers_[n].size)
          throw Error(ErrorKind::RangeError, "face '" + w.to_string() + "' has " +
                                                 std::to_string(it->second.size()) +
                                                 " entries, carrier has " +
                                                 std::to_string(carriers_[n].size));
        for (std::size_t x = 0; x < it->second.size(); ++x)
          if (it->second[x] >= carriers_[n - 1].size)
            throw Error(ErrorKind::RangeError, "face '" + w.to_string() + "' sends " +
                                                   std::to_string(x) + " to " +
                                                   std::to_string(it->second[x]) +
                                                   ", outside a carrier of size " +
                                                   std::to_string(carriers_[n - 1].size));
      }
    }
  }

  Arity arity() const noexcept { return nu_; }
  int truncation() const noexcept { return trunc_; }
  const FinSet& carrier(int n) const {
    check_dimension(n);
    return carriers_[static_cast<std::size_t>(n)];
  }
  const std::vector<FinSet>& carriers() const noexcept { return carriers_; }
  const std::map<Word, FaceMap>& faces() const noexcept { return faces_; }

  const FaceMap& face(const Word& w) const {
    auto it = faces_.find(w);
    if (it == faces_.end())
      throw Error(ErrorKind::MissingFace, "no face map for '" + w.to_string() + "'");
    return it->second;
  }
  std::size_t face(const Word& w, std::size_t x) const { return face(w).at(x); }

  /// Copy with a single face-map entry overwritten, unchecked against the
  /// functor laws.  Used to build counterexamples.
  TruncatedPresheaf with_face_entry(const Word& w, std::size_t x, std::size_t value) const {
    auto faces = faces_;
    faces.at(w).at(x) = value;
    return TruncatedPresheaf(nu_, trunc_, carriers_, std::move(faces));
  }

  bool operator==(const TruncatedPresheaf&) const = default;

 private:
  void check_dimension(int n) const {
    if (n < 0 || n > trunc_)
      throw Error(ErrorKind::DimensionOutOfRange,
                  "dimension " + std::to_string(n) + " outside 0.." + std::to_string(trunc_));
  }

  Arity nu_;
  int trunc_;
  std::vector<FinSet> carriers_;
  std::map<Word, FaceMap> faces_;
};

/// The map X(n) -> X(stars f) induced by f ∈ Hom(p, n).  Peels the leftmost
/// letter: f = w ∘ f' acts as action(f') after the face w.
inline FaceMap action(const TruncatedPresheaf& P, const Word& f) {
  if (f.arity() != P.arity())
    throw Error(ErrorKind::ArityMismatch, "word and presheaf arities differ");
  if (f.length() > static_cast<std::size_t>(P.truncation()))
    throw Error(ErrorKind::DimensionOutOfRange,
                "'" + f.to_string() + "' acts on dimension " + std::to_string(f.length()) +
                    " above the truncation " + std::to_string(P.truncation()));
  const std::size_t size = P.carrier(static_cast<int>(f.length())).size;
  FaceMap result(size);
  for (std::size_t x = 0; x < size; ++x) result[x] = x;
  Word rest = f;
  while (!rest.is_identity()) {
    auto [w, tail] = factor_leftmost(rest);
    const FaceMap& step = P.face(w);
    for (auto& y : result) y = step[y];
    rest = std::move(tail);
  }
  return result;
}

/// Every word of Hom(n-2, n) factors through codimension-1 faces in two
/// ways (peel either letter first); both must induce the same map.
inline Report check_functor_laws(const TruncatedPresheaf& P) {
  Report report;
  const Arity nu = P.arity();
  for (int n = 2; n <= P.truncation(); ++n) {
    for (const Word& f : hom_enumerate(nu, n - 2, n)) {
      std::vector<std::pair<Word, Word>> factorizations;
      for (std::size_t i = 0; i < f.length(); ++i) {
        if (f[i].is_star()) continue;
        std::vector<Letter> rest = f.letters();
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
        factorizations.emplace_back(face_word(nu, f[i].direction(), i, f.length()),
                                    Word(nu, std::move(rest)));
      }
      const auto& [w1, g1] = factorizations.front();
      for (std::size_t k = 1; k < factorizations.size(); ++k) {
        const auto& [w2, g2] = factorizations[k];
        const FaceMap& outer1 = P.face(w1);
        const FaceMap& outer2 = P.face(w2);
        const FaceMap& inner1 = P.face(g1);
        const FaceMap& inner2 = P.face(g2);
        for (std::size_t x = 0; x < outer1.size(); ++x) {
          ++report.checked;
          std::size_t a = inner1[outer1[x]];
          std::size_t b = inner2[outer2[x]];
          if (a != b)
            report.add("functor-law",
                       "dim " + std::to_string(n) + " word " + f.to_string() + ": " +
                           w1.to_string() + " then " + g1.to_string() + " vs " +
                           w2.to_string() + " then " + g2.to_string() + " disagree on element " +
                           P.carrier(n).label(x) + " (" + P.carrier(n - 2).label(a) +
                           " vs " + P.carrier(n - 2).label(b) + ")");
        }
      }
    }
  }
  return report;
}

}  // namespace nuset
