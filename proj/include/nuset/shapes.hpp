#pragma once

// Standard shapes: the representable presheaf of n, cells at level p being
// the words of Hom(p, n), acting by precomposition.

#include <cstddef>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "nuset/error.hpp"
#include "nuset/presheaf.hpp"
#include "nuset/word.hpp"

namespace nuset {

/// Cells carry their word text as label; index i at level p is the i-th
/// word of hom_enumerate(nu, p, n).
inline TruncatedPresheaf standard_shape(Arity nu, std::size_t n) {
  std::vector<std::vector<Word>> cells;
  std::vector<FinSet> carriers;
  for (std::size_t p = 0; p <= n; ++p) {
    cells.push_back(hom_enumerate(nu, p, n));
    std::vector<std::string> labels;
    for (const Word& w : cells.back()) labels.push_back(w.to_string());
    carriers.push_back(FinSet::labelled(std::move(labels)));
  }
  std::map<Word, FaceMap> faces;
  for (std::size_t p = 1; p <= n; ++p) {
    std::map<Word, std::size_t> below;
    for (std::size_t i = 0; i < cells[p - 1].size(); ++i) below.emplace(cells[p - 1][i], i);
    for (const Word& w : hom_enumerate(nu, p - 1, p)) {
      FaceMap map;
      map.reserve(cells[p].size());
      for (const Word& g : cells[p]) map.push_back(below.at(compose(g, w)));
      faces.emplace(w, std::move(map));
    }
  }
  return TruncatedPresheaf(nu, static_cast<int>(n), std::move(carriers), std::move(faces));
}

/// The ν faces obtained by replacing the leftmost star of w with each
/// direction, in direction order.
inline std::vector<Word> orientation_endpoints(const Word& w) {
  const auto& letters = w.letters();
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (!letters[i].is_star()) continue;
    std::vector<Word> out;
    for (int d = 0; d < w.arity().value(); ++d) {
      auto copy = letters;
      copy[i] = Letter::dir(d);
      out.emplace_back(w.arity(), std::move(copy));
    }
    return out;
  }
  throw Error(ErrorKind::AllLetters, "'" + w.to_string() + "' has no star to orient along");
}

/// Lowest level drawn as points.  For ν = 1 level 0 holds the colour of
/// the augmentation, so points start one level up.
inline int geometric_base(const TruncatedPresheaf& P) {
  return P.arity().value() == 1 && P.truncation() >= 1 ? 1 : 0;
}

namespace detail {
inline std::string dot_escape(const std::string& s) {
  if (s.empty()) return "\xCE\xB5";
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}
}  // namespace detail

/// Points are the cells at the geometric base level, lines the cells one
/// level up (oriented as by orientation_endpoints).  Higher cells are not
/// drawn; they are listed in comments so the node set stays the points.
inline std::string to_dot(const TruncatedPresheaf& P) {
  const int g0 = geometric_base(P);
  const int nu = P.arity().value();
  std::ostringstream out;
  out << "digraph nuset {\n  rankdir=LR;\n";
  auto node_id = [](int level, std::size_t x) {
    return "c" + std::to_string(level) + "_" + std::to_string(x);
  };
  for (std::size_t x = 0; x < P.carrier(g0).size; ++x)
    out << "  " << node_id(g0, x) << " [label=\"" << detail::dot_escape(P.carrier(g0).label(x))
        << "\"];\n";
  if (g0 + 1 <= P.truncation()) {
    const int m = g0 + 1;
    const FinSet& lines = P.carrier(m);
    for (std::size_t x = 0; x < lines.size; ++x) {
      const std::string label = detail::dot_escape(lines.label(x));
      if (nu == 1) {
        // The line points at the face with its leftmost star replaced.
        std::size_t to = P.face(face_word(P.arity(), 0, 0, m), x);
        std::size_t from = P.face(face_word(P.arity(), 0, 1, m), x);
        out << "  " << node_id(g0, from) << " -> " << node_id(g0, to) << " [label=\"" << label
            << "\"];\n";
      } else {
        std::size_t from = P.face(face_word(P.arity(), 0, 0, m), x);
        for (int d = 1; d < nu; ++d) {
          std::size_t to = P.face(face_word(P.arity(), d, 0, m), x);
          out << "  " << node_id(g0, from) << " -> " << node_id(g0, to) << " [label=\"" << label
              << "\"];\n";
        }
      }
    }
  }
  for (int level = g0 + 2; level <= P.truncation(); ++level)
    for (std::size_t x = 0; x < P.carrier(level).size; ++x)
      out << "  // level " << level << ": " << detail::dot_escape(P.carrier(level).label(x))
          << "\n";
  out << "}\n";
  return out.str();
}

}  // namespace nuset
