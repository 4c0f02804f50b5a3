#include "doctest.h"
#include "test_util.hpp"

#include "nccell/embedded.hpp"
#include "nccell/identity.hpp"
#include "nccell/rewrite.hpp"

using namespace nccell;
using namespace nccell::sym;

namespace {

NCPoly poly(const char* text, const Alphabet& ab) { return to_ncpoly(parse_expression(text), ab); }

// p*p -> p, adj(p) -> p, adj(l) -> l
RewriteSystem pl_rules() { return ident::rules_get("CFreeC01"); }

}  // namespace

TEST_CASE("word order") {
  const Word a{{0, false}}, as{{0, true}}, b{{1, false}};
  CHECK(word_less({}, a));
  CHECK(word_less(a, as));
  CHECK(word_less(as, b));
  CHECK(word_less(b, Word{{0, false}, {0, false}}));
  CHECK(adjoint_word(Word{{0, false}, {1, true}}) == Word{{1, false}, {0, true}});
}

TEST_CASE("polynomial arithmetic keeps no zero coefficients") {
  const Alphabet ab({"a", "b"});
  const NCPoly x = poly("a*b + 2*b - a*b", ab);
  CHECK(x.size() == 1);
  CHECK(x == poly("2*b", ab));
  CHECK((x - x).is_zero());
  CHECK(poly("adj(a*b)", ab) == poly("adj(b)*adj(a)", ab));
  CHECK(poly("adj((1+2i)*a)", ab) == poly("(1-2i)*adj(a)", ab));
  CHECK(poly("0.5*a + 0.25*a", ab) == poly("0.75*a", ab));
}

TEST_CASE("normal forms") {
  const RewriteSystem rules = pl_rules();
  const Alphabet& ab = rules.alphabet();
  CHECK(normal_form(poly("p*p*p", ab), rules) == poly("p", ab));
  CHECK(normal_form(poly("adj(p*l)", ab), rules) == poly("l*p", ab));
  CHECK(normal_form(poly("(p - p*l*p)*(1 - p)*l*(1 - p)", ab), rules).is_zero());
}

TEST_CASE("normal form is idempotent and fixed by every rule") {
  const RewriteSystem rules = ident::rules_get("G2st");
  const Alphabet& ab = rules.alphabet();
  for (const char* text : {"h*h*h", "k*x*h*adj(x)", "adj(x)*k*k*x", "(1 - h)*(1 - h) + adj(x)*x", "h*adj(x)*k"}) {
    CAPTURE(text);
    const NCPoly once = normal_form(poly(text, ab), rules);
    CHECK(normal_form(once, rules) == once);
  }
}

TEST_CASE("orientation of the G2st rules") {
  const RewriteSystem rules = ident::rules_get("G2st");
  const Alphabet& ab = rules.alphabet();
  CHECK(normal_form(poly("h*h", ab), rules) == poly("h - adj(x)*x", ab));
  CHECK(normal_form(poly("k*k", ab), rules) == poly("k - x*adj(x)", ab));
  CHECK(normal_form(poly("k*x", ab), rules) == poly("x*h", ab));
  CHECK(normal_form(poly("h*adj(x)", ab), rules) == poly("adj(x)*k", ab));
  CHECK(normal_form(poly("adj(h)", ab), rules) == poly("h", ab));
}

TEST_CASE("rules must decrease the word order") {
  const Alphabet ab({"p"});
  CHECK_THROWS_AS(RewriteSystem(ab, {Rule{Word{{0, false}}, poly("p*p", ab)}}), OrderViolation);
  CHECK_NOTHROW(RewriteSystem(ab, {Rule{Word{{0, false}, {0, false}}, poly("p", ab)}}));
}

TEST_CASE("prove_identity is reflexive and returns a certificate on failure") {
  const RewriteSystem rules = pl_rules();
  const Alphabet& ab = rules.alphabet();
  for (const char* text : {"p", "l*p*l", "adj(l)*p - 3*p*l"}) CHECK(prove_identity(poly(text, ab), poly(text, ab), rules).holds);
  const IdentityProof bad = prove_identity(poly("p*l", ab), poly("l*p", ab), rules);
  CHECK_FALSE(bad.holds);
  CHECK(bad.difference.at(0, 0) == poly("p*l - l*p", ab));
}

TEST_CASE("substitute_genmap") {
  const Alphabet q({"h0", "k0", "x0"});
  const Alphabet pl({"p", "l"});
  std::map<std::uint32_t, PolyMatrix> theta = {
      {0, PolyMatrix(poly("p - p*l*p", pl))},
      {1, PolyMatrix(poly("(1 - p)*l*(1 - p)", pl))},
      {2, PolyMatrix(poly("(1 - p)*l*p", pl))},
  };
  const PolyMatrix hk = substitute_genmap(poly("h0*k0", q), theta);
  CHECK(hk.at(0, 0) == poly("(p - p*l*p)*((1 - p)*l*(1 - p))", pl));
  CHECK(normal_form(hk, pl_rules()).is_zero());

  std::map<std::uint32_t, PolyMatrix> id = {
      {0, PolyMatrix(poly("h0", q))}, {1, PolyMatrix(poly("k0", q))}, {2, PolyMatrix(poly("x0", q))}};
  const NCPoly target = poly("h0*adj(x0) + 2*k0 - x0*x0", q);
  CHECK(substitute_genmap(target, id).at(0, 0) == target);

  // homomorphic and adjoint compatible
  const NCPoly u = poly("h0 + x0", q), v = poly("adj(x0)*k0", q);
  CHECK(substitute_genmap(u * v, theta) == substitute_genmap(u, theta) * substitute_genmap(v, theta));
  CHECK(substitute_genmap(u.adjoint(), theta) == substitute_genmap(u, theta).adjoint());

  std::map<std::uint32_t, PolyMatrix> missing = {{0, PolyMatrix(poly("p", pl))}};
  CHECK_THROWS_AS(substitute_genmap(poly("k0", q), missing), std::invalid_argument);
  std::map<std::uint32_t, PolyMatrix> ragged = {{0, PolyMatrix(2, 2)}, {1, PolyMatrix(poly("p", pl))}};
  CHECK_THROWS_AS(substitute_genmap(poly("h0", q), ragged), std::invalid_argument);
}

TEST_CASE("lambda images kill P0^2 - P0 modulo G2st") {
  const RewriteSystem& g2 = ident::rules_get("G2st");
  const Alphabet& ab = g2.alphabet();
  const Alphabet q({"h0", "k0", "x0"});
  auto unit = [&](const char* e, std::size_t i, std::size_t j) {
    PolyMatrix m(2, 2);
    m.at(i, j) = poly(e, ab);
    return m;
  };
  std::map<std::uint32_t, PolyMatrix> lambda = {{0, unit("h", 0, 0)}, {1, unit("k", 1, 1)}, {2, unit("x", 1, 0)}};
  // the four entries of P0^2 - P0 and P0* - P0 with P0 = [[1 - h0, x0*], [x0, k0]]
  for (const char* rel : {"(1 - h0)*(1 - h0) + adj(x0)*x0 - (1 - h0)", "(1 - h0)*adj(x0) + adj(x0)*k0 - adj(x0)",
                          "x0*(1 - h0) + k0*x0 - x0", "x0*adj(x0) + k0*k0 - k0", "adj(h0) - h0", "h0*k0"}) {
    CAPTURE(rel);
    CHECK(normal_form(substitute_genmap(poly(rel, q), lambda), g2).is_zero());
  }
}

TEST_CASE("shipped identity files all hold") {
  for (const char* file : {"identities/ideal.idt", "identities/exactness.idt", "identities/grassmannian.idt"}) {
    CAPTURE(file);
    const auto text = embedded_source(file);
    REQUIRE(text.has_value());
    CHECK(*text == testutil::read_source(file));
    for (const auto& r : ident::check_identity_file(*text)) {
      CAPTURE(r.label);
      CAPTURE(r.difference);
      CHECK(r.holds);
    }
  }
  CHECK(ident::check_identity_file(*embedded_source("identities/ideal.idt")).size() == 9);
}

TEST_CASE("a false identity is reported with its reduced difference") {
  const auto results = ident::check_identity_file("swap: p*l == l*p modulo CFreeC01\n");
  REQUIRE(results.size() == 1);
  CHECK(results[0].label == "swap");
  CHECK_FALSE(results[0].holds);
  CHECK(results[0].difference == "-l*p + p*l");
}

TEST_CASE("identity file errors") {
  CHECK_THROWS_AS(ident::parse_identity_file("a == b"), ParseError);
  CHECK_THROWS_AS(ident::parse_identity_file("let A = 1\nlet A = 2"), ParseError);
  CHECK_THROWS_AS(ident::parse_identity_file("let A = A*A"), ParseError);
  try {
    ident::parse_identity_file("let A = p\n\nA + == p modulo free");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  const auto f = ident::parse_identity_file("let A = p\nA*A == A modulo free");
  REQUIRE(f.cases.size() == 1);
  CHECK(f.cases[0].label == "line 2");
  CHECK_FALSE(ident::check_identity(f.cases[0]).holds);
}
