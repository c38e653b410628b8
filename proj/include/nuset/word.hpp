#pragma once

// The ν-semi-shape category: objects are naturals, a morphism p -> n is a
// word of length n over the alphabet {⋆, 0, ..., ν-1} containing exactly p
// stars.  ν = 1 gives augmented semi-simplicial sets, ν = 2 semi-cubical.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nuset/error.hpp"

namespace nuset {

/// Number of directions.  Bounded by 10 so every direction renders as a
/// single character.
class Arity {
 public:
  static constexpr int kMax = 10;

  explicit Arity(int nu) : nu_(nu) {
    if (nu < 1 || nu > kMax)
      throw Error(ErrorKind::ArityError,
                  "arity must lie in [1, " + std::to_string(kMax) + "], got " +
                      std::to_string(nu));
  }

  int value() const noexcept { return nu_; }
  auto operator<=>(const Arity&) const = default;

 private:
  int nu_;
};

/// Star, or a direction index.  Ordered Star < Dir(0) < Dir(1) < ...
class Letter {
 public:
  static constexpr Letter star() noexcept { return Letter(-1); }
  static constexpr Letter dir(int i) noexcept { return Letter(i); }

  constexpr bool is_star() const noexcept { return code_ < 0; }
  constexpr int direction() const noexcept { return code_; }
  auto operator<=>(const Letter&) const = default;

 private:
  constexpr explicit Letter(int code) noexcept : code_(code) {}
  std::int8_t code_;
};

inline std::string letter_text(Arity nu, Letter a) {
  if (a.is_star()) return "*";
  if (nu.value() == 2) return a.direction() == 0 ? "L" : "R";
  return std::string(1, static_cast<char>('0' + a.direction()));
}

class Word {
 public:
  explicit Word(Arity nu) : nu_(nu) {}
  Word(Arity nu, std::vector<Letter> letters) : nu_(nu), letters_(std::move(letters)) {
    for (Letter a : letters_)
      if (!a.is_star() && (a.direction() < 0 || a.direction() >= nu_.value()))
        throw Error(ErrorKind::ArityError,
                    "direction " + std::to_string(a.direction()) +
                        " outside arity " + std::to_string(nu_.value()));
  }

  Arity arity() const noexcept { return nu_; }
  std::size_t length() const noexcept { return letters_.size(); }
  std::size_t stars() const noexcept {
    std::size_t count = 0;
    for (Letter a : letters_) count += a.is_star() ? 1 : 0;
    return count;
  }
  bool is_identity() const noexcept { return stars() == length(); }

  const std::vector<Letter>& letters() const noexcept { return letters_; }
  Letter operator[](std::size_t i) const { return letters_.at(i); }

  std::string to_string() const {
    std::string out;
    for (Letter a : letters_) out += letter_text(nu_, a);
    return out;
  }

  bool operator==(const Word&) const = default;
  auto operator<=>(const Word& other) const {
    if (auto c = nu_ <=> other.nu_; c != 0) return c;
    if (auto c = letters_.size() <=> other.letters_.size(); c != 0) return c;
    return letters_ <=> other.letters_;
  }

 private:
  Arity nu_;
  std::vector<Letter> letters_;
};

/// Parses the compact text syntax: '*' (or '⋆') for stars, "0" for ν = 1,
/// "L"/"R" for ν = 2, digits otherwise.  The empty string and "ε" denote the
/// empty word.
inline Word parse_word(Arity nu, std::string_view text) {
  static constexpr std::string_view kStarUtf8 = "\xE2\x8B\x86";
  static constexpr std::string_view kEpsilonUtf8 = "\xCE\xB5";
  std::vector<Letter> letters;
  if (text == kEpsilonUtf8) return Word(nu);
  for (std::size_t i = 0; i < text.size();) {
    if (text.substr(i, kStarUtf8.size()) == kStarUtf8) {
      letters.push_back(Letter::star());
      i += kStarUtf8.size();
      continue;
    }
    char c = text[i];
    int dir = -2;
    if (c == '*') {
      dir = -1;
    } else if (nu.value() == 2) {
      if (c == 'L') dir = 0;
      if (c == 'R') dir = 1;
    } else if (c >= '0' && c <= '9' && c - '0' < nu.value()) {
      dir = c - '0';
    }
    if (dir == -2)
      throw Error(ErrorKind::SyntaxError,
                  "symbol '" + std::string(1, c) + "' at offset " +
                      std::to_string(i) + " is not a letter of arity " +
                      std::to_string(nu.value()));
    letters.push_back(dir < 0 ? Letter::star() : Letter::dir(dir));
    ++i;
  }
  return Word(nu, std::move(letters));
}

/// ⋆ⁿ, the identity on n.
inline Word identity(Arity nu, std::size_t n) {
  return Word(nu, std::vector<Letter>(n, Letter::star()));
}

/// g ∘ f for f: p -> m and g: m -> n.  Follows the defining recursion on g:
/// the empty word returns f, a direction letter of g is copied, and a star
/// of g consumes the next letter of f.
inline Word compose(const Word& g, const Word& f) {
  if (g.arity() != f.arity())
    throw Error(ErrorKind::ArityMismatch, "cannot compose words of arities " +
                                              std::to_string(g.arity().value()) +
                                              " and " +
                                              std::to_string(f.arity().value()));
  if (g.stars() != f.length())
    throw Error(ErrorKind::NotComposable,
                "'" + g.to_string() + "' has " + std::to_string(g.stars()) +
                    " stars but '" + f.to_string() + "' has length " +
                    std::to_string(f.length()));
  std::vector<Letter> out;
  out.reserve(g.length());
  std::size_t next = 0;
  for (Letter a : g.letters()) {
    if (a.is_star())
      out.push_back(f.letters()[next++]);
    else
      out.push_back(a);
  }
  return Word(g.arity(), std::move(out));
}

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// |Hom(p, n)| = C(n, p) · ν^(n-p).
inline std::uint64_t hom_count(Arity nu, std::size_t p, std::size_t n) {
  if (p > n) return 0;
  std::uint64_t r = binomial(n, p);
  for (std::size_t i = p; i < n; ++i) r *= static_cast<std::uint64_t>(nu.value());
  return r;
}

namespace detail {
inline void enumerate_words(Arity nu, std::size_t stars_left, std::size_t n,
                            std::vector<Letter>& prefix, std::vector<Word>& out) {
  std::size_t remaining = n - prefix.size();
  if (remaining == 0) {
    out.emplace_back(nu, prefix);
    return;
  }
  if (stars_left > 0) {
    prefix.push_back(Letter::star());
    enumerate_words(nu, stars_left - 1, n, prefix, out);
    prefix.pop_back();
  }
  if (remaining > stars_left) {
    for (int d = 0; d < nu.value(); ++d) {
      prefix.push_back(Letter::dir(d));
      enumerate_words(nu, stars_left, n, prefix, out);
      prefix.pop_back();
    }
  }
}
}  // namespace detail

/// All words of Hom(p, n) in lexicographic order (Star < Dir(0) < ...).
inline std::vector<Word> hom_enumerate(Arity nu, std::size_t p, std::size_t n) {
  std::vector<Word> out;
  if (p > n) return out;
  out.reserve(hom_count(nu, p, n));
  std::vector<Letter> prefix;
  prefix.reserve(n);
  detail::enumerate_words(nu, p, n, prefix, out);
  return out;
}

/// ⋆^q · eps · ⋆^(n-1-q), the codimension-1 morphism n-1 -> n selecting the
/// face of direction eps at position q (counted from the left).
inline Word face_word(Arity nu, int eps, std::size_t q, std::size_t n) {
  if (q >= n)
    throw Error(ErrorKind::IndexOutOfRange,
                "face position " + std::to_string(q) + " out of range for length " +
                    std::to_string(n));
  if (eps < 0 || eps >= nu.value())
    throw Error(ErrorKind::IndexOutOfRange,
                "direction " + std::to_string(eps) + " outside arity " +
                    std::to_string(nu.value()));
  std::vector<Letter> letters(n, Letter::star());
  letters[q] = Letter::dir(eps);
  return Word(nu, std::move(letters));
}

/// Splits f = w ∘ f' where w is codimension 1 carrying f's leftmost direction
/// letter at the same position and f' is f with that letter deleted.
inline std::pair<Word, Word> factor_leftmost(const Word& f) {
  const auto& letters = f.letters();
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (letters[i].is_star()) continue;
    Word w = face_word(f.arity(), letters[i].direction(), i, letters.size());
    std::vector<Letter> rest = letters;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
    return {std::move(w), Word(f.arity(), std::move(rest))};
  }
  throw Error(ErrorKind::NoLetter, "'" + f.to_string() + "' is an identity and does not factor");
}

/// Position of the single direction letter of a codimension-1 word.
inline std::size_t face_position(const Word& w) {
  for (std::size_t i = 0; i < w.length(); ++i)
    if (!w[i].is_star()) return i;
  throw Error(ErrorKind::NoLetter, "'" + w.to_string() + "' has no direction letter");
}

}  // namespace nuset
