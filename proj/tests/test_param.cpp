#include <catch_amalgamated.hpp>

#include <random>

#include "support.hpp"

using namespace nuset;
using support::kind_of;

namespace {

std::map<std::size_t, std::size_t> expected_stats(int nu, std::size_t n) {
  std::map<std::size_t, std::size_t> out;
  for (const auto& c : kHomCounts)
    if (c.nu == nu && static_cast<std::size_t>(c.n) == n && c.p < c.n)
      out[static_cast<std::size_t>(c.p)] = c.count;
  return out;
}

// Random types over U, a free X0, arrows, products and Π over U.
Expr random_type(std::mt19937_64& rng, int depth, std::vector<std::string>& scope) {
  std::uniform_int_distribution<int> pick(0, depth > 0 ? 5 : 1);
  switch (pick(rng)) {
    case 0:
      return univ();
    case 1: {
      std::uniform_int_distribution<std::size_t> v(0, scope.size());
      std::size_t i = v(rng);
      return i == scope.size() ? var("X0") : var(scope[i]);
    }
    case 2:
      return arrow(random_type(rng, depth - 1, scope), random_type(rng, depth - 1, scope));
    case 3:
      return prod({random_type(rng, depth - 1, scope), random_type(rng, depth - 1, scope)});
    default: {
      std::string x = "a" + std::to_string(scope.size());
      scope.push_back(x);
      Expr body = random_type(rng, depth - 1, scope);
      scope.pop_back();
      return pi(x, univ(), body);
    }
  }
}

}  // namespace

TEST_CASE("telescope counts equal hom counts", "[param]") {
  for (int v = 1; v <= 2; ++v)
    for (std::size_t n = 0; n <= 4; ++n) {
      INFO("nu=" << v << " n=" << n);
      CHECK(telescope_stats(iterate_types(Arity(v), n)) == expected_stats(v, n));
    }
  CHECK(telescope_stats(iterate_types(Arity(3), 3)) == expected_stats(3, 3));
}

TEST_CASE("frozen telescope statistics", "[param]") {
  using Stats = std::map<std::size_t, std::size_t>;
  CHECK(telescope_stats(iterate_types(Arity(2), 2)) == Stats{{0, 4}, {1, 4}});
  CHECK(telescope_stats(iterate_types(Arity(2), 3)) == Stats{{0, 8}, {1, 12}, {2, 6}});
  CHECK(telescope_stats(iterate_types(Arity(1), 3)) == Stats{{0, 1}, {1, 3}, {2, 3}});
  CHECK(telescope_stats(iterate_types(Arity(2), 0)).empty());
  CHECK(as<ast::Univ>(iterate_types(Arity(2), 0)));
}

TEST_CASE("the square display", "[param]") {
  DisplayForm form = display_form(to_telescope(iterate_types(Arity(2), 2)));
  CHECK(form.points.size() == 4);
  CHECK(display_matches(form, "X_1(a,b) \xC3\x97 X_1(c,d) \xC3\x97 X_1(a,c) \xC3\x97 X_1(b,d) \xE2\x86\x92 U"));
  CHECK(display_matches(form, "X1(a,b) * X1(c,d) * X1(a,c) * X1(b,d) -> U"));
  CHECK_FALSE(display_matches(form, "X1(a,b) * X1(a,b) * X1(a,c) * X1(b,d) -> U"));
  CHECK_FALSE(display_matches(form, "X1(a,b) * X1(c,d) -> U"));
  CHECK(print_display(form).find("\xE2\x86\x92 U") != std::string::npos);
}

TEST_CASE("first steps of the binary iteration", "[param]") {
  CHECK(print_type(iterate_types(Arity(2), 1)) == "X0 * X0 -> U");
  CHECK(print_type(iterate_types(Arity(1), 1)) == "X0 -> U");
}

TEST_CASE("surface syntax round trips through the printer", "[param][syntax]") {
  for (const char* text : {"U", "Pi x:U. x -> x", "X0 * X0 -> U", "Pi A:U. Pi B:A -> U. B",
                           "(U -> U) -> U", "\\x. f x y", "t.0 u.1", "(a, b, c)"}) {
    Expr e = parse_type(text);
    INFO(text);
    CHECK(alpha_equal(parse_type(print_type(e)), e));
  }
  CHECK(alpha_equal(parse_type("\xCE\xA0 x:U. x \xE2\x86\x92 x \xC3\x97 x"),
                    parse_type("Pi x:U. x -> x * x")));
  CHECK(alpha_equal(parse_type("Pi x:U. x"), parse_type("Pi y:U. y")));
  CHECK_FALSE(alpha_equal(parse_type("Pi x:U. x"), parse_type("Pi y:U. x")));
}

TEST_CASE("syntax errors carry line and column", "[param][syntax][errors]") {
  try {
    parse_type("Pi x:U.\n  x ->");
    FAIL("expected a syntax error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SyntaxError);
    CHECK(std::string(e.what()).find("line 2, column 7") != std::string::npos);
  }
  CHECK(kind_of([] { parse_type("Pi x U. x"); }) == ErrorKind::SyntaxError);
  CHECK(kind_of([] { parse_type("(U"); }) == ErrorKind::SyntaxError);
  CHECK(kind_of([] { parse_type("U )"); }) == ErrorKind::SyntaxError);
  CHECK(kind_of([] { parse_type(""); }) == ErrorKind::SyntaxError);
}

TEST_CASE("substitution avoids capture", "[param]") {
  Expr e = parse_type("Pi y:U. x -> y");
  Expr r = subst(e, "x", var("y"));
  CHECK(free_vars(r) == std::set<std::string>{"y"});
  CHECK(alpha_equal(r, parse_type("Pi z:U. y -> z")));
  CHECK(occurs_free("x", e));
  CHECK_FALSE(occurs_free("y", e));
}

TEST_CASE("normalization reduces beta and projection redexes", "[param]") {
  CHECK(alpha_equal(normalize(parse_type("(\\x. x -> x) U")), parse_type("U -> U")));
  CHECK(alpha_equal(normalize(parse_type("(a, b).1")), var("b")));
  CHECK(alpha_equal(normalize(parse_type("(\\p. p.0 * p.1) (A, B)")), parse_type("A * B")));
}

TEST_CASE("normalize is idempotent on translation outputs", "[param]") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 100; ++i) {
    std::vector<std::string> scope;
    Expr T = random_type(rng, 3, scope);
    int nu = 1 + i % 3;
    Expr out = normalize(app(translate(T, Arity(nu)), diagonal(var("Y"), Arity(nu))));
    INFO(print_type(T) << " at nu=" << nu);
    CHECK(alpha_equal(normalize(out), out));
  }
  for (int v = 1; v <= 3; ++v)
    for (std::size_t n = 0; n <= 3; ++n) {
      Expr T = iterate_types(Arity(v), n);
      CHECK(alpha_equal(normalize(T), T));
    }
}

TEST_CASE("translation preserves closedness and scoping", "[param]") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    std::vector<std::string> scope;
    Expr T = random_type(rng, 3, scope);
    std::set<std::string> allowed;
    for (const std::string& x : free_vars(T)) {
      allowed.insert(x);
      allowed.insert(detail::star_name(x));
    }
    for (const std::string& x : free_vars(translate(T, Arity(2)))) CHECK(allowed.count(x));
  }
  CHECK(free_vars(translate(parse_type("Pi A:U. A -> A"), Arity(2))).empty());
}

TEST_CASE("telescope and translation errors", "[param][errors]") {
  CHECK(kind_of([] { to_telescope(parse_type("U -> X0")); }) == ErrorKind::NotATelescope);
  CHECK(kind_of([] { translate(parse_type("\\x. x"), Arity(2)); }) == ErrorKind::UnsupportedConstruct);
  CHECK(kind_of([] { parse_display("X1(a,b"); }) == ErrorKind::SyntaxError);
}

TEST_CASE("binder copies are named by direction", "[param]") {
  std::string s = print_type(translate(parse_type("Pi A:U. A"), Arity(2)));
  CHECK(s.find("A_L") != std::string::npos);
  CHECK(s.find("A_R") != std::string::npos);
  CHECK(s.find("A_S") != std::string::npos);
  std::string t = print_type(translate(parse_type("Pi A:U. A"), Arity(3)));
  CHECK(t.find("A_2") != std::string::npos);
}
