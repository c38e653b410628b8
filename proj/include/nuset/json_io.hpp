#pragma once

// File formats.
//   fibred:  {"nu", "trunc", "carriers": [size | [labels]], "faces": {"<n>": {"<word>": [..]}}}
//   indexed: {"nu", "trunc", "families": {"<n>": {"<frame-key>": size | [labels]}}}
// Emission sorts keys and indents by two spaces.

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "nuset/error.hpp"
#include "nuset/indexed.hpp"
#include "nuset/presheaf.hpp"
#include "nuset/word.hpp"

namespace nuset {

namespace detail {

/// Line of the first occurrence of a quoted field name, for messages.
inline std::size_t line_of(std::string_view text, const std::string& field) {
  std::size_t at = text.find("\"" + field + "\"");
  if (at == std::string_view::npos) return 0;
  std::size_t line = 1;
  for (std::size_t i = 0; i < at; ++i) line += text[i] == '\n';
  return line;
}

class FieldError {
 public:
  explicit FieldError(std::string_view text) : text_(text) {}

  [[noreturn]] void raise(ErrorKind kind, const std::string& path, const std::string& field,
                          const std::string& what) const {
    std::size_t line = line_of(text_, field);
    std::string where = line ? "line " + std::to_string(line) + ", " : std::string();
    throw Error(kind, where + "field " + path + ": " + what);
  }

 private:
  std::string_view text_;
};

inline nlohmann::json parse_json(std::string_view text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(ErrorKind::SyntaxError,
                "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " +
                    e.what());
  }
}

inline FinSet parse_finset(const nlohmann::json& v, const FieldError& err, const std::string& path,
                           const std::string& field) {
  if (v.is_number_unsigned()) return FinSet::sized(v.get<std::size_t>());
  if (v.is_array()) {
    std::vector<std::string> labels;
    for (const auto& x : v) {
      if (!x.is_string()) err.raise(ErrorKind::SyntaxError, path, field, "labels must be strings");
      labels.push_back(x.get<std::string>());
    }
    try {
      return FinSet::labelled(std::move(labels));
    } catch (const Error& e) {
      err.raise(ErrorKind::RangeError, path, field, e.what());
    }
  }
  err.raise(ErrorKind::SyntaxError, path, field, "expected a size or an array of labels");
}

inline nlohmann::json emit_finset(const FinSet& s) {
  if (s.labels) return nlohmann::json(*s.labels);
  return nlohmann::json(s.size);
}

inline std::pair<Arity, int> parse_header(const nlohmann::json& j, const FieldError& err,
                                          int min_trunc) {
  if (!j.is_object()) err.raise(ErrorKind::SyntaxError, "/", "", "top level must be an object");
  if (!j.contains("nu") || !j["nu"].is_number_integer())
    err.raise(ErrorKind::SyntaxError, "/nu", "nu", "missing or not an integer");
  if (!j.contains("trunc") || !j["trunc"].is_number_integer())
    err.raise(ErrorKind::SyntaxError, "/trunc", "trunc", "missing or not an integer");
  int nu = j["nu"].get<int>();
  int trunc = j["trunc"].get<int>();
  if (nu < 1 || nu > Arity::kMax)
    err.raise(ErrorKind::ArityError, "/nu", "nu", "arity " + std::to_string(nu) + " unsupported");
  if (trunc < min_trunc)
    err.raise(ErrorKind::RangeError, "/trunc", "trunc", "truncation " + std::to_string(trunc));
  return {Arity(nu), trunc};
}

}  // namespace detail

inline TruncatedPresheaf parse_nuset(std::string_view text) {
  detail::FieldError err(text);
  nlohmann::json j = detail::parse_json(text);
  auto [nu, trunc] = detail::parse_header(j, err, 0);
  if (!j.contains("carriers") || !j["carriers"].is_array())
    err.raise(ErrorKind::SyntaxError, "/carriers", "carriers", "missing or not an array");
  const auto& cs = j["carriers"];
  if (cs.size() != static_cast<std::size_t>(trunc) + 1)
    err.raise(ErrorKind::RangeError, "/carriers", "carriers",
              "expected " + std::to_string(trunc + 1) + " carriers, got " +
                  std::to_string(cs.size()));
  std::vector<FinSet> carriers;
  for (std::size_t n = 0; n < cs.size(); ++n)
    carriers.push_back(detail::parse_finset(cs[n], err, "/carriers/" + std::to_string(n), "carriers"));

  std::map<Word, FaceMap> faces;
  if (trunc > 0 && (!j.contains("faces") || !j["faces"].is_object()))
    err.raise(ErrorKind::MissingFace, "/faces", "faces", "missing face table");
  if (j.contains("faces")) {
    for (const auto& [dim, table] : j["faces"].items()) {
      const std::string path = "/faces/" + dim;
      int n = 0;
      try {
        n = std::stoi(dim);
      } catch (...) {
        err.raise(ErrorKind::SyntaxError, path, dim, "dimension key is not a number");
      }
      if (n < 1 || n > trunc)
        err.raise(ErrorKind::RangeError, path, dim, "dimension outside 1.." + std::to_string(trunc));
      if (!table.is_object()) err.raise(ErrorKind::SyntaxError, path, dim, "expected an object");
      for (const auto& [text_word, values] : table.items()) {
        const std::string wpath = path + "/" + text_word;
        Word w = [&] {
          try {
            return parse_word(nu, text_word);
          } catch (const Error& e) {
            err.raise(e.kind(), wpath, text_word, e.what());
          }
        }();
        if (w.length() != static_cast<std::size_t>(n) || w.stars() + 1 != w.length())
          err.raise(ErrorKind::RangeError, wpath, text_word,
                    "not a codimension-1 word of length " + std::to_string(n));
        if (!values.is_array())
          err.raise(ErrorKind::SyntaxError, wpath, text_word, "expected an array");
        FaceMap map;
        for (const auto& v : values) {
          if (!v.is_number_unsigned())
            err.raise(ErrorKind::SyntaxError, wpath, text_word, "entries must be naturals");
          std::size_t y = v.get<std::size_t>();
          if (y >= carriers[static_cast<std::size_t>(n - 1)].size)
            err.raise(ErrorKind::RangeError, wpath, text_word,
                      "value " + std::to_string(y) + " outside carrier of size " +
                          std::to_string(carriers[static_cast<std::size_t>(n - 1)].size));
          map.push_back(y);
        }
        if (map.size() != carriers[static_cast<std::size_t>(n)].size)
          err.raise(ErrorKind::RangeError, wpath, text_word,
                    "has " + std::to_string(map.size()) + " entries, carrier has " +
                        std::to_string(carriers[static_cast<std::size_t>(n)].size));
        faces.emplace(std::move(w), std::move(map));
      }
    }
  }
  for (int n = 1; n <= trunc; ++n)
    for (const Word& w : hom_enumerate(nu, static_cast<std::size_t>(n - 1), static_cast<std::size_t>(n)))
      if (!faces.count(w))
        err.raise(ErrorKind::MissingFace, "/faces/" + std::to_string(n), std::to_string(n),
                  "no face map for '" + w.to_string() + "'");
  return TruncatedPresheaf(nu, trunc, std::move(carriers), std::move(faces));
}

inline nlohmann::json nuset_to_json(const TruncatedPresheaf& P) {
  nlohmann::json j;
  j["nu"] = P.arity().value();
  j["trunc"] = P.truncation();
  j["carriers"] = nlohmann::json::array();
  for (const FinSet& c : P.carriers()) j["carriers"].push_back(detail::emit_finset(c));
  j["faces"] = nlohmann::json::object();
  for (const auto& [w, map] : P.faces()) j["faces"][std::to_string(w.length())][w.to_string()] = map;
  return j;
}

inline std::string emit_nuset(const TruncatedPresheaf& P) { return nuset_to_json(P).dump(2) + "\n"; }

inline IndexedNuSet parse_indexed(std::string_view text) {
  detail::FieldError err(text);
  nlohmann::json j = detail::parse_json(text);
  auto [nu, trunc] = detail::parse_header(j, err, -1);
  std::vector<Family> families(static_cast<std::size_t>(trunc + 1));
  if (!j.contains("families") || !j["families"].is_object())
    err.raise(ErrorKind::SyntaxError, "/families", "families", "missing or not an object");
  for (const auto& [dim, table] : j["families"].items()) {
    const std::string path = "/families/" + dim;
    int n = 0;
    try {
      n = std::stoi(dim);
    } catch (...) {
      err.raise(ErrorKind::SyntaxError, path, dim, "dimension key is not a number");
    }
    if (n < 0 || n > trunc)
      err.raise(ErrorKind::RangeError, path, dim, "dimension outside 0.." + std::to_string(trunc));
    if (!table.is_object()) err.raise(ErrorKind::SyntaxError, path, dim, "expected an object");
    for (const auto& [key, value] : table.items()) {
      try {
        Frame d = parse_frame(key, n);
        if (!d.full()) throw Error(ErrorKind::SyntaxError, "frame key '" + key + "' is not full");
      } catch (const Error& e) {
        err.raise(ErrorKind::SyntaxError, path + "/" + key, key, e.what());
      }
      families[static_cast<std::size_t>(n)].emplace(
          key, detail::parse_finset(value, err, path + "/" + key, key));
    }
  }
  return IndexedNuSet(nu, std::move(families));
}

inline nlohmann::json indexed_to_json(const IndexedNuSet& S) {
  nlohmann::json j;
  j["nu"] = S.arity().value();
  j["trunc"] = S.truncation();
  j["families"] = nlohmann::json::object();
  for (int n = 0; n <= S.truncation(); ++n) {
    nlohmann::json fam = nlohmann::json::object();
    for (const auto& [key, fibre] : S.family(n)) fam[key] = detail::emit_finset(fibre);
    j["families"][std::to_string(n)] = std::move(fam);
  }
  return j;
}

inline std::string emit_indexed(const IndexedNuSet& S) { return indexed_to_json(S).dump(2) + "\n"; }

inline nlohmann::json report_to_json(const Report& r) {
  nlohmann::json j;
  j["ok"] = r.ok();
  j["checked"] = r.checked;
  j["violations"] = nlohmann::json::array();
  for (const Violation& v : r.violations)
    j["violations"].push_back({{"kind", v.kind}, {"detail", v.detail}});
  return j;
}

}  // namespace nuset
