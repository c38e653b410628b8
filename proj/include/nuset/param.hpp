#pragma once

// ν-ary parametricity on a small type language: U, Π, n-ary products,
// application, λ, tuples and projections.  Types and terms share one AST.

#include <cctype>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "nuset/error.hpp"
#include "nuset/word.hpp"

namespace nuset {

struct ExprNode;
using Expr = std::shared_ptr<const ExprNode>;

namespace ast {
struct Univ {};
struct Var {
  std::string name;
};
struct Pi {
  std::string var;
  Expr dom, cod;
};
struct Prod {
  std::vector<Expr> factors;
};
struct Lam {
  std::string var;
  Expr body;
};
struct App {
  Expr fun, arg;
};
struct Tuple {
  std::vector<Expr> items;
};
struct Proj {
  Expr of;
  std::size_t index;
};
}  // namespace ast

struct ExprNode {
  std::variant<ast::Univ, ast::Var, ast::Pi, ast::Prod, ast::Lam, ast::App, ast::Tuple, ast::Proj>
      node;
};

using TypeExpr = Expr;
using TermExpr = Expr;

/// Binder name of a non-dependent arrow.  Never occurs as a variable.
inline constexpr std::string_view kAnon = "_";

inline Expr univ() { return std::make_shared<ExprNode>(ExprNode{ast::Univ{}}); }
inline Expr var(std::string name) {
  return std::make_shared<ExprNode>(ExprNode{ast::Var{std::move(name)}});
}
inline Expr pi(std::string x, Expr dom, Expr cod) {
  return std::make_shared<ExprNode>(ExprNode{ast::Pi{std::move(x), std::move(dom), std::move(cod)}});
}
inline Expr arrow(Expr dom, Expr cod) { return pi(std::string(kAnon), std::move(dom), std::move(cod)); }
inline Expr lam(std::string x, Expr body) {
  return std::make_shared<ExprNode>(ExprNode{ast::Lam{std::move(x), std::move(body)}});
}
inline Expr app(Expr f, Expr a) {
  return std::make_shared<ExprNode>(ExprNode{ast::App{std::move(f), std::move(a)}});
}
inline Expr proj(Expr t, std::size_t i) {
  return std::make_shared<ExprNode>(ExprNode{ast::Proj{std::move(t), i}});
}
/// A one-factor product is its factor.
inline Expr prod(std::vector<Expr> factors) {
  if (factors.size() == 1) return factors.front();
  return std::make_shared<ExprNode>(ExprNode{ast::Prod{std::move(factors)}});
}
/// A one-item tuple is its item.
inline Expr tuple(std::vector<Expr> items) {
  if (items.size() == 1) return items.front();
  return std::make_shared<ExprNode>(ExprNode{ast::Tuple{std::move(items)}});
}

template <class T>
const T* as(const Expr& e) {
  return std::get_if<T>(&e->node);
}

// ---------------------------------------------------------------------------
// Variables and substitution.

namespace detail {
inline void collect_free(const Expr& e, std::set<std::string>& bound, std::set<std::string>& out) {
  if (auto v = as<ast::Var>(e)) {
    if (!bound.count(v->name)) out.insert(v->name);
  } else if (auto p = as<ast::Pi>(e)) {
    collect_free(p->dom, bound, out);
    bool added = bound.insert(p->var).second;
    collect_free(p->cod, bound, out);
    if (added) bound.erase(p->var);
  } else if (auto l = as<ast::Lam>(e)) {
    bool added = bound.insert(l->var).second;
    collect_free(l->body, bound, out);
    if (added) bound.erase(l->var);
  } else if (auto pr = as<ast::Prod>(e)) {
    for (const Expr& f : pr->factors) collect_free(f, bound, out);
  } else if (auto t = as<ast::Tuple>(e)) {
    for (const Expr& f : t->items) collect_free(f, bound, out);
  } else if (auto a = as<ast::App>(e)) {
    collect_free(a->fun, bound, out);
    collect_free(a->arg, bound, out);
  } else if (auto j = as<ast::Proj>(e)) {
    collect_free(j->of, bound, out);
  }
}

inline void collect_names(const Expr& e, std::set<std::string>& out) {
  if (auto v = as<ast::Var>(e)) {
    out.insert(v->name);
  } else if (auto p = as<ast::Pi>(e)) {
    out.insert(p->var);
    collect_names(p->dom, out);
    collect_names(p->cod, out);
  } else if (auto l = as<ast::Lam>(e)) {
    out.insert(l->var);
    collect_names(l->body, out);
  } else if (auto pr = as<ast::Prod>(e)) {
    for (const Expr& f : pr->factors) collect_names(f, out);
  } else if (auto t = as<ast::Tuple>(e)) {
    for (const Expr& f : t->items) collect_names(f, out);
  } else if (auto a = as<ast::App>(e)) {
    collect_names(a->fun, out);
    collect_names(a->arg, out);
  } else if (auto j = as<ast::Proj>(e)) {
    collect_names(j->of, out);
  }
}
}  // namespace detail

inline std::set<std::string> free_vars(const Expr& e) {
  std::set<std::string> bound, out;
  detail::collect_free(e, bound, out);
  return out;
}

inline bool occurs_free(const std::string& x, const Expr& e) { return free_vars(e).count(x) > 0; }

/// e[t/x], renaming binders (by appending primes) that would capture.
inline Expr subst(const Expr& e, const std::string& x, const Expr& t) {
  if (auto v = as<ast::Var>(e)) return v->name == x ? t : e;
  if (as<ast::Univ>(e)) return e;
  auto binder = [&](const std::string& y, const Expr& body,
                    const std::function<Expr(std::string, Expr)>& rebuild) -> Expr {
    if (y == x || !occurs_free(x, body)) return rebuild(y, body);
    std::set<std::string> ft = free_vars(t);
    if (!ft.count(y)) return rebuild(y, subst(body, x, t));
    std::set<std::string> avoid = ft;
    detail::collect_names(body, avoid);
    std::string fresh = y;
    while (avoid.count(fresh) || fresh == x) fresh += '\'';
    return rebuild(fresh, subst(subst(body, y, var(fresh)), x, t));
  };
  if (auto p = as<ast::Pi>(e)) {
    Expr dom = subst(p->dom, x, t);
    return binder(p->var, p->cod, [&](std::string y, Expr cod) { return pi(std::move(y), dom, std::move(cod)); });
  }
  if (auto l = as<ast::Lam>(e))
    return binder(l->var, l->body, [](std::string y, Expr body) { return lam(std::move(y), std::move(body)); });
  if (auto pr = as<ast::Prod>(e)) {
    std::vector<Expr> fs;
    for (const Expr& f : pr->factors) fs.push_back(subst(f, x, t));
    return prod(std::move(fs));
  }
  if (auto tu = as<ast::Tuple>(e)) {
    std::vector<Expr> items;
    for (const Expr& f : tu->items) items.push_back(subst(f, x, t));
    return tuple(std::move(items));
  }
  if (auto a = as<ast::App>(e)) return app(subst(a->fun, x, t), subst(a->arg, x, t));
  auto j = as<ast::Proj>(e);
  return proj(subst(j->of, x, t), j->index);
}

/// Beta and projection reduction everywhere, including under binders.
inline Expr normalize(const Expr& e) {
  if (as<ast::Univ>(e) || as<ast::Var>(e)) return e;
  if (auto p = as<ast::Pi>(e)) return pi(p->var, normalize(p->dom), normalize(p->cod));
  if (auto l = as<ast::Lam>(e)) return lam(l->var, normalize(l->body));
  if (auto pr = as<ast::Prod>(e)) {
    std::vector<Expr> fs;
    for (const Expr& f : pr->factors) fs.push_back(normalize(f));
    return prod(std::move(fs));
  }
  if (auto tu = as<ast::Tuple>(e)) {
    std::vector<Expr> items;
    for (const Expr& f : tu->items) items.push_back(normalize(f));
    return tuple(std::move(items));
  }
  if (auto a = as<ast::App>(e)) {
    Expr f = normalize(a->fun);
    Expr x = normalize(a->arg);
    if (auto l = as<ast::Lam>(f)) return normalize(subst(l->body, l->var, x));
    return app(f, x);
  }
  auto j = as<ast::Proj>(e);
  Expr of = normalize(j->of);
  if (auto tu = as<ast::Tuple>(of)) {
    if (j->index >= tu->items.size())
      throw Error(ErrorKind::RangeError, "projection ." + std::to_string(j->index) +
                                             " out of a " + std::to_string(tu->items.size()) +
                                             "-tuple");
    return tu->items[j->index];
  }
  return proj(of, j->index);
}

namespace detail {
inline bool alpha_eq(const Expr& a, const Expr& b, std::map<std::string, std::string>& l2r,
                     std::map<std::string, std::string>& r2l) {
  if (a->node.index() != b->node.index()) return false;
  if (as<ast::Univ>(a)) return true;
  if (auto va = as<ast::Var>(a)) {
    const std::string& x = va->name;
    const std::string& y = as<ast::Var>(b)->name;
    auto ix = l2r.find(x);
    auto iy = r2l.find(y);
    if (ix == l2r.end() && iy == r2l.end()) return x == y;
    return ix != l2r.end() && iy != r2l.end() && ix->second == y && iy->second == x;
  }
  auto under = [&](const std::string& x, const std::string& y, const Expr& ba, const Expr& bb) {
    auto saved_l = l2r.find(x) != l2r.end() ? std::optional(l2r[x]) : std::nullopt;
    auto saved_r = r2l.find(y) != r2l.end() ? std::optional(r2l[y]) : std::nullopt;
    l2r[x] = y;
    r2l[y] = x;
    bool ok = alpha_eq(ba, bb, l2r, r2l);
    if (saved_l) l2r[x] = *saved_l; else l2r.erase(x);
    if (saved_r) r2l[y] = *saved_r; else r2l.erase(y);
    return ok;
  };
  if (auto pa = as<ast::Pi>(a)) {
    auto pb = as<ast::Pi>(b);
    return alpha_eq(pa->dom, pb->dom, l2r, r2l) && under(pa->var, pb->var, pa->cod, pb->cod);
  }
  if (auto la = as<ast::Lam>(a)) {
    auto lb = as<ast::Lam>(b);
    return under(la->var, lb->var, la->body, lb->body);
  }
  auto list_eq = [&](const std::vector<Expr>& xs, const std::vector<Expr>& ys) {
    if (xs.size() != ys.size()) return false;
    for (std::size_t i = 0; i < xs.size(); ++i)
      if (!alpha_eq(xs[i], ys[i], l2r, r2l)) return false;
    return true;
  };
  if (auto pa = as<ast::Prod>(a)) return list_eq(pa->factors, as<ast::Prod>(b)->factors);
  if (auto ta = as<ast::Tuple>(a)) return list_eq(ta->items, as<ast::Tuple>(b)->items);
  if (auto aa = as<ast::App>(a)) {
    auto ab = as<ast::App>(b);
    return alpha_eq(aa->fun, ab->fun, l2r, r2l) && alpha_eq(aa->arg, ab->arg, l2r, r2l);
  }
  auto ja = as<ast::Proj>(a);
  auto jb = as<ast::Proj>(b);
  return ja->index == jb->index && alpha_eq(ja->of, jb->of, l2r, r2l);
}
}  // namespace detail

inline bool alpha_equal(const Expr& a, const Expr& b) {
  std::map<std::string, std::string> l2r, r2l;
  return detail::alpha_eq(a, b, l2r, r2l);
}

// ---------------------------------------------------------------------------
// Printing.  Precedence: 0 binders and arrows, 1 products, 2 application,
// 3 projection and atoms.

namespace detail {
inline void print(std::ostream& out, const Expr& e, int level) {
  auto open = [&](int need) {
    if (level > need) out << '(';
  };
  auto close = [&](int need) {
    if (level > need) out << ')';
  };
  if (as<ast::Univ>(e)) {
    out << 'U';
  } else if (auto v = as<ast::Var>(e)) {
    out << v->name;
  } else if (auto p = as<ast::Pi>(e)) {
    open(0);
    if (p->var == kAnon || !occurs_free(p->var, p->cod)) {
      print(out, p->dom, 1);
      out << " -> ";
    } else {
      out << "Pi " << p->var << ":";
      print(out, p->dom, 1);
      out << ". ";
    }
    print(out, p->cod, 0);
    close(0);
  } else if (auto l = as<ast::Lam>(e)) {
    open(0);
    out << '\\' << l->var << ". ";
    print(out, l->body, 0);
    close(0);
  } else if (auto pr = as<ast::Prod>(e)) {
    open(1);
    for (std::size_t i = 0; i < pr->factors.size(); ++i) {
      if (i) out << " * ";
      print(out, pr->factors[i], 2);
    }
    close(1);
  } else if (auto a = as<ast::App>(e)) {
    open(2);
    print(out, a->fun, 2);
    out << ' ';
    print(out, a->arg, 3);
    close(2);
  } else if (auto t = as<ast::Tuple>(e)) {
    out << '(';
    for (std::size_t i = 0; i < t->items.size(); ++i) {
      if (i) out << ", ";
      print(out, t->items[i], 0);
    }
    out << ')';
  } else if (auto j = as<ast::Proj>(e)) {
    print(out, j->of, 3);
    out << '.' << j->index;
  }
}
}  // namespace detail

inline std::string print_type(const Expr& e) {
  std::ostringstream out;
  detail::print(out, e, 0);
  return out.str();
}

// ---------------------------------------------------------------------------
// Parsing.
//
//   expr  := 'Pi' id ':' expr '.' expr | '\' id '.' expr | arrow
//   arrow := prod ('->' expr)?
//   prod  := app ('*' app)*
//   app   := post post*
//   post  := atom ('.' digits)*
//   atom  := 'U' | id | '(' expr (',' expr)* ')'
//
// Π, λ, →, × are accepted for Pi, \, ->, *.

namespace detail {

class TypeParser {
 public:
  explicit TypeParser(std::string_view text) : text_(text) {}

  Expr parse() {
    Expr e = expr();
    skip_space();
    if (pos_ < text_.size()) fail("unexpected input");
    return e;
  }

 private:
  Expr expr() {
    skip_space();
    if (keyword("Pi") || symbol("\xCE\xA0")) {
      std::string x = ident();
      if (!symbol(":")) fail("expected ':' after binder");
      Expr dom = expr();
      if (!binder_dot()) fail("expected '.' after binder type");
      Expr cod = expr();
      return pi(std::move(x), std::move(dom), std::move(cod));
    }
    if (symbol("\\") || symbol("\xCE\xBB")) {
      std::string x = ident();
      if (!binder_dot()) fail("expected '.' after lambda binder");
      return lam(std::move(x), expr());
    }
    Expr lhs = product();
    if (symbol("->") || symbol("\xE2\x86\x92")) return arrow(std::move(lhs), expr());
    return lhs;
  }

  Expr product() {
    std::vector<Expr> factors{application()};
    while (symbol("*") || symbol("\xC3\x97")) factors.push_back(application());
    return prod(std::move(factors));
  }

  Expr application() {
    Expr e = postfix();
    while (starts_atom()) e = app(std::move(e), postfix());
    return e;
  }

  Expr postfix() {
    Expr e = atom();
    while (pos_ + 1 < text_.size() && text_[pos_] == '.' && is_digit(text_[pos_ + 1])) {
      ++pos_;
      std::size_t i = 0;
      while (pos_ < text_.size() && is_digit(text_[pos_])) i = i * 10 + (text_[pos_++] - '0');
      e = proj(std::move(e), i);
    }
    return e;
  }

  Expr atom() {
    skip_space();
    if (symbol("(")) {
      std::vector<Expr> items{expr()};
      while (symbol(",")) items.push_back(expr());
      if (!symbol(")")) fail("expected ')'");
      return items.size() == 1 ? items.front() : tuple(std::move(items));
    }
    std::string x = ident();
    if (x == "U") return univ();
    return var(std::move(x));
  }

  bool starts_atom() {
    skip_space();
    if (pos_ >= text_.size()) return false;
    char c = text_[pos_];
    if (c == '(') return true;
    if (!(is_alpha(c) || c == '_')) return false;
    std::size_t end = pos_;
    while (end < text_.size() && is_ident(text_[end])) ++end;
    return text_.substr(pos_, end - pos_) != "Pi";
  }

  std::string ident() {
    skip_space();
    if (pos_ >= text_.size() || !(is_alpha(text_[pos_]) || text_[pos_] == '_'))
      fail("expected an identifier");
    std::size_t start = pos_;
    while (pos_ < text_.size() && is_ident(text_[pos_])) ++pos_;
    std::string x(text_.substr(start, pos_ - start));
    if (x == "Pi") fail("'Pi' is reserved");
    return x;
  }

  bool keyword(std::string_view kw) {
    skip_space();
    if (text_.substr(pos_, kw.size()) != kw) return false;
    std::size_t end = pos_ + kw.size();
    if (end < text_.size() && is_ident(text_[end])) return false;
    pos_ = end;
    return true;
  }

  bool symbol(std::string_view s) {
    skip_space();
    if (text_.substr(pos_, s.size()) != s) return false;
    pos_ += s.size();
    return true;
  }

  bool binder_dot() {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      return true;
    }
    return false;
  }

  void skip_space() {
    while (pos_ < text_.size() &&
           (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' || text_[pos_] == '\r'))
      ++pos_;
  }

  static bool is_digit(char c) { return c >= '0' && c <= '9'; }
  static bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
  static bool is_ident(char c) { return is_alpha(c) || is_digit(c) || c == '_' || c == '\''; }

  [[noreturn]] void fail(const std::string& what) const {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(ErrorKind::SyntaxError,
                "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + what);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Expr parse_type(std::string_view text) { return detail::TypeParser(text).parse(); }

// ---------------------------------------------------------------------------
// Translation.  translate(T) is a λ over a ν-tuple u returning the relation
// ⟦T⟧(u).  A variable x of the input has ν copies x_ε and a witness x_S;
// free variables are translated diagonally, X_k to X_{k+1}.

namespace detail {

/// Successor name of a free variable: X3 -> X4, anything else gets _S.
inline std::string star_name(const std::string& x) {
  std::size_t i = x.size();
  while (i > 0 && x[i - 1] >= '0' && x[i - 1] <= '9') --i;
  if (i < x.size() && i > 0) {
    std::size_t k = std::stoul(x.substr(i));
    return x.substr(0, i) + std::to_string(k + 1);
  }
  return x + "_S";
}

class Translator {
 public:
  Translator(Arity nu, const Expr& input) : nu_(nu) { collect_names(input, used_); }

  Expr translate(const Expr& T) {
    std::string u = fresh("u");
    return lam(u, rel(T, {}, var(u)));
  }

 private:
  struct Binding {
    std::vector<Expr> copies;
    Expr star;
  };
  using Env = std::map<std::string, Binding>;

  int nu() const { return nu_.value(); }

  std::string fresh(const std::string& base) {
    std::string x = base;
    while (used_.count(x)) x += '\'';
    used_.insert(x);
    return x;
  }

  Expr component(const Expr& u, int i) const {
    if (nu() == 1) return u;
    if (auto t = as<ast::Tuple>(u)) return t->items.at(static_cast<std::size_t>(i));
    return proj(u, static_cast<std::size_t>(i));
  }

  Binding lookup(const std::string& x, const Env& env) const {
    if (auto it = env.find(x); it != env.end()) return it->second;
    Binding b;
    for (int i = 0; i < nu(); ++i) b.copies.push_back(var(x));
    b.star = var(star_name(x));
    return b;
  }

  /// Copy i of e: every translated variable replaced by its i-th copy.
  Expr copy(const Expr& e, int i, const Env& env) {
    if (as<ast::Univ>(e)) return e;
    if (auto v = as<ast::Var>(e)) return lookup(v->name, env).copies.at(static_cast<std::size_t>(i));
    if (auto p = as<ast::Pi>(e)) {
      Expr dom = copy(p->dom, i, env);
      std::string y = fresh(base(p->var) + "_" + letter(i));
      Env inner = env;
      inner[p->var] = Binding{std::vector<Expr>(static_cast<std::size_t>(nu()), var(y)), nullptr};
      return pi(y, dom, copy(p->cod, i, inner));
    }
    if (auto l = as<ast::Lam>(e)) {
      std::string y = fresh(base(l->var) + "_" + letter(i));
      Env inner = env;
      inner[l->var] = Binding{std::vector<Expr>(static_cast<std::size_t>(nu()), var(y)), nullptr};
      return lam(y, copy(l->body, i, inner));
    }
    if (auto pr = as<ast::Prod>(e)) {
      std::vector<Expr> fs;
      for (const Expr& f : pr->factors) fs.push_back(copy(f, i, env));
      return prod(std::move(fs));
    }
    if (auto t = as<ast::Tuple>(e)) {
      std::vector<Expr> items;
      for (const Expr& f : t->items) items.push_back(copy(f, i, env));
      return tuple(std::move(items));
    }
    if (auto a = as<ast::App>(e)) return app(copy(a->fun, i, env), copy(a->arg, i, env));
    auto j = as<ast::Proj>(e);
    return proj(copy(j->of, i, env), j->index);
  }

  /// ⟦T⟧(u) for a type T.
  Expr rel(const Expr& T, const Env& env, const Expr& u) {
    if (as<ast::Univ>(T)) {
      std::vector<Expr> fs;
      for (int i = 0; i < nu(); ++i) fs.push_back(component(u, i));
      return arrow(prod(std::move(fs)), univ());
    }
    if (auto p = as<ast::Pi>(T)) {
      const std::string b = base(p->var);
      Binding x;
      std::vector<Expr> doms;
      std::vector<std::string> names;
      for (int i = 0; i < nu(); ++i) {
        names.push_back(fresh(b + "_" + letter(i)));
        x.copies.push_back(var(names.back()));
        doms.push_back(copy(p->dom, i, env));
      }
      std::string s = fresh(b + "_S");
      x.star = var(s);
      Expr witness = rel(p->dom, env, tuple(x.copies));
      Env inner = env;
      inner[p->var] = x;
      std::vector<Expr> images;
      for (int i = 0; i < nu(); ++i) images.push_back(app(component(u, i), x.copies[static_cast<std::size_t>(i)]));
      Expr body = pi(s, witness, rel(p->cod, inner, tuple(std::move(images))));
      for (int i = nu() - 1; i >= 0; --i)
        body = pi(names[static_cast<std::size_t>(i)], doms[static_cast<std::size_t>(i)], body);
      return body;
    }
    if (auto pr = as<ast::Prod>(T)) {
      std::vector<Expr> fs;
      for (std::size_t j = 0; j < pr->factors.size(); ++j) {
        std::vector<Expr> parts;
        for (int i = 0; i < nu(); ++i) parts.push_back(proj(component(u, i), j));
        fs.push_back(rel(pr->factors[j], env, tuple(std::move(parts))));
      }
      return prod(std::move(fs));
    }
    if (as<ast::Var>(T) || as<ast::App>(T) || as<ast::Proj>(T)) return app(term(T, env), u);
    throw Error(ErrorKind::UnsupportedConstruct, "'" + print_type(T) + "' is not a type");
  }

  /// ⟦t⟧ for a term t.
  Expr term(const Expr& t, const Env& env) {
    if (auto v = as<ast::Var>(t)) {
      Expr s = lookup(v->name, env).star;
      if (!s)
        throw Error(ErrorKind::UnsupportedConstruct,
                    "variable '" + v->name + "' has no parametricity witness here");
      return s;
    }
    if (auto a = as<ast::App>(t)) {
      Expr f = term(a->fun, env);
      for (int i = 0; i < nu(); ++i) f = app(f, copy(a->arg, i, env));
      return app(f, term(a->arg, env));
    }
    if (auto tu = as<ast::Tuple>(t)) {
      std::vector<Expr> items;
      for (const Expr& x : tu->items) items.push_back(term(x, env));
      return tuple(std::move(items));
    }
    if (auto j = as<ast::Proj>(t)) return proj(term(j->of, env), j->index);
    if (auto l = as<ast::Lam>(t)) {
      const std::string b = base(l->var);
      Binding x;
      std::vector<std::string> names;
      for (int i = 0; i < nu(); ++i) {
        names.push_back(fresh(b + "_" + letter(i)));
        x.copies.push_back(var(names.back()));
      }
      std::string s = fresh(b + "_S");
      x.star = var(s);
      Env inner = env;
      inner[l->var] = x;
      Expr body = lam(s, term(l->body, inner));
      for (int i = nu() - 1; i >= 0; --i) body = lam(names[static_cast<std::size_t>(i)], body);
      return body;
    }
    // A type in term position: its translation as a function of the tuple.
    std::string u = fresh("u");
    return lam(u, rel(t, env, var(u)));
  }

  std::string base(const std::string& x) {
    if (x != kAnon) return x;
    return fresh("x" + std::to_string(++anon_));
  }

  std::string letter(int i) const { return letter_text(nu_, Letter::dir(i)); }

  Arity nu_;
  std::set<std::string> used_;
  int anon_ = 0;
};

}  // namespace detail

inline Expr translate(const Expr& T, Arity nu) { return detail::Translator(nu, T).translate(T); }

/// ν copies of x as a tuple (x itself when ν = 1).
inline Expr diagonal(const Expr& x, Arity nu) {
  return tuple(std::vector<Expr>(static_cast<std::size_t>(nu.value()), x));
}

/// S_0 = U, S_{k+1} = nf(translate(S_k) applied to the diagonal of X_k).
inline Expr iterate_types(Arity nu, std::size_t steps) {
  Expr S = univ();
  for (std::size_t k = 0; k < steps; ++k)
    S = normalize(app(translate(S, nu), diagonal(var("X" + std::to_string(k)), nu)));
  return S;
}

// ---------------------------------------------------------------------------
// Telescopes.

struct Hypothesis {
  std::string name;
  Expr type;
};

struct Telescope {
  std::vector<Hypothesis> hyps;
  Expr result;
};

/// Flattens Π-binders and splits product-typed binders into one
/// hypothesis per factor.  The final codomain must be U.
inline Telescope to_telescope(const Expr& T) {
  Telescope tel;
  std::set<std::string> used;
  detail::collect_names(T, used);
  int counter = 0;
  auto fresh = [&]() {
    std::string x;
    do x = "h" + std::to_string(++counter);
    while (used.count(x));
    used.insert(x);
    return x;
  };
  std::function<Expr(const Expr&)> split = [&](const Expr& A) -> Expr {
    if (auto pr = as<ast::Prod>(A)) {
      std::vector<Expr> parts;
      for (const Expr& f : pr->factors) parts.push_back(split(f));
      return tuple(std::move(parts));
    }
    std::string x = fresh();
    tel.hyps.push_back({x, A});
    return var(x);
  };
  Expr cur = normalize(T);
  while (auto p = as<ast::Pi>(cur)) {
    Expr value = split(p->dom);
    cur = normalize(subst(p->cod, p->var, value));
  }
  if (!as<ast::Univ>(cur))
    throw Error(ErrorKind::NotATelescope, "telescope ends in '" + print_type(cur) + "', not U");
  tel.result = cur;
  return tel;
}

/// Head variable of an application spine, if any.
inline std::optional<std::string> head_name(const Expr& e) {
  Expr cur = e;
  while (auto a = as<ast::App>(cur)) cur = a->fun;
  if (auto v = as<ast::Var>(cur)) return v->name;
  return std::nullopt;
}

/// Level k of a name X<k>.
inline std::optional<std::size_t> level_of(const std::string& name) {
  if (name.size() < 2 || name[0] != 'X') return std::nullopt;
  for (std::size_t i = 1; i < name.size(); ++i)
    if (name[i] < '0' || name[i] > '9') return std::nullopt;
  return std::stoul(name.substr(1));
}

inline std::map<std::size_t, std::size_t> telescope_stats(const Expr& T) {
  std::map<std::size_t, std::size_t> stats;
  for (const Hypothesis& h : to_telescope(T).hyps)
    if (auto head = head_name(h.type))
      if (auto k = level_of(*head)) ++stats[*k];
  return stats;
}

// ---------------------------------------------------------------------------
// Display form: "Π a b c d. X1(a,c) × ... → U".  X0 hypotheses are named
// a, b, c, ... in order; other hypotheses print as head(arguments) with
// tuple arguments flattened.

namespace detail {
inline void flat_args(const Expr& e, const std::map<std::string, std::string>& names,
                      std::vector<std::string>& out) {
  if (auto t = as<ast::Tuple>(e)) {
    for (const Expr& x : t->items) flat_args(x, names, out);
    return;
  }
  if (auto v = as<ast::Var>(e)) {
    auto it = names.find(v->name);
    out.push_back(it == names.end() ? v->name : it->second);
    return;
  }
  out.push_back("(" + print_type(e) + ")");
}

inline std::string point_name(std::size_t i) {
  std::string s(1, static_cast<char>('a' + i % 26));
  if (i >= 26) s += std::to_string(i / 26);
  return s;
}
}  // namespace detail

struct DisplayHyp {
  std::string head;
  std::vector<std::string> args;
  bool operator==(const DisplayHyp&) const = default;
};

struct DisplayForm {
  std::vector<std::string> points;
  std::vector<DisplayHyp> hyps;
};

inline DisplayForm display_form(const Telescope& tel) {
  DisplayForm out;
  std::map<std::string, std::string> names;
  for (const Hypothesis& h : tel.hyps) {
    if (auto v = as<ast::Var>(h.type); v && v->name == "X0") {
      names[h.name] = detail::point_name(out.points.size());
      out.points.push_back(names[h.name]);
    }
  }
  for (const Hypothesis& h : tel.hyps) {
    if (auto v = as<ast::Var>(h.type); v && v->name == "X0") continue;
    DisplayHyp d;
    d.head = head_name(h.type).value_or("?");
    std::vector<Expr> args;
    for (Expr cur = h.type; auto a = as<ast::App>(cur); cur = a->fun) args.insert(args.begin(), a->arg);
    for (const Expr& a : args) detail::flat_args(a, names, d.args);
    out.hyps.push_back(std::move(d));
  }
  return out;
}

inline std::string print_display(const DisplayForm& form) {
  std::string out;
  if (!form.points.empty()) {
    out += "\xCE\xA0";
    for (const std::string& p : form.points) out += " " + p;
    out += ". ";
  }
  for (std::size_t i = 0; i < form.hyps.size(); ++i) {
    if (i) out += " \xC3\x97 ";
    out += form.hyps[i].head + "(";
    for (std::size_t j = 0; j < form.hyps[i].args.size(); ++j) {
      if (j) out += ",";
      out += form.hyps[i].args[j];
    }
    out += ")";
  }
  out += form.hyps.empty() ? "U" : " \xE2\x86\x92 U";
  return out;
}

/// Parses "H(a,b) × H(c,d) → U" (× or *, → or ->) into hypotheses.  Heads
/// are compared without underscores, so X_1 and X1 agree.
inline std::vector<DisplayHyp> parse_display(std::string_view text) {
  std::vector<DisplayHyp> out;
  std::size_t i = 0;
  auto skip = [&]() {
    while (i < text.size() && text[i] == ' ') ++i;
  };
  auto take = [&](std::string_view s) {
    skip();
    if (text.substr(i, s.size()) == s) {
      i += s.size();
      return true;
    }
    return false;
  };
  auto ident = [&]() {
    skip();
    std::size_t start = i;
    while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) ++i;
    if (start == i) throw Error(ErrorKind::SyntaxError, "display: identifier expected at " + std::to_string(start));
    return std::string(text.substr(start, i - start));
  };
  while (true) {
    skip();
    if (take("U")) break;
    DisplayHyp h;
    h.head = ident();
    std::erase(h.head, '_');
    if (!take("(")) throw Error(ErrorKind::SyntaxError, "display: '(' expected");
    do h.args.push_back(ident());
    while (take(","));
    if (!take(")")) throw Error(ErrorKind::SyntaxError, "display: ')' expected");
    out.push_back(std::move(h));
    if (take("\xC3\x97") || take("*") || take("\xE2\x86\x92") || take("->")) continue;
    throw Error(ErrorKind::SyntaxError, "display: separator expected");
  }
  return out;
}

/// Same hypotheses in the same order up to a bijective renaming of points.
inline bool display_matches(const DisplayForm& form, std::string_view target) {
  std::vector<DisplayHyp> want = parse_display(target);
  if (want.size() != form.hyps.size()) return false;
  std::map<std::string, std::string> fwd, back;
  for (std::size_t i = 0; i < want.size(); ++i) {
    const DisplayHyp& a = form.hyps[i];
    const DisplayHyp& b = want[i];
    if (a.head != b.head || a.args.size() != b.args.size()) return false;
    for (std::size_t j = 0; j < a.args.size(); ++j) {
      auto [f, fnew] = fwd.emplace(a.args[j], b.args[j]);
      auto [r, rnew] = back.emplace(b.args[j], a.args[j]);
      if (f->second != b.args[j] || r->second != a.args[j]) return false;
      (void)fnew;
      (void)rnew;
    }
  }
  return true;
}

}  // namespace nuset
