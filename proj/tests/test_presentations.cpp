#include "doctest.h"
#include "test_util.hpp"

#include "nccell/embedded.hpp"
#include "nccell/ncpoly.hpp"
#include "nccell/presentation.hpp"

#include <algorithm>
#include <set>

using namespace nccell;
using namespace nccell::pres;

namespace {

const std::vector<std::string> kShipped = {"G2nc", "G2st", "qC", "P", "C0_01", "D", "CFreeC", "CFreeC01"};

std::vector<std::string> messages(const std::vector<Diagnostic>& ds) {
  std::vector<std::string> out;
  for (const auto& d : ds) out.push_back(d.message);
  return out;
}

// Relations up to commutative reordering: compare lhs - rhs as polynomials
// with letters of a sorted alphabet, and up to overall sign.
std::set<std::string> relation_set(const Presentation& p) {
  sym::Alphabet alphabet(p.generators);
  std::set<std::string> out;
  for (const auto& r : p.expanded) {
    if (r.kind != RelKind::Eq) continue;
    const sym::NCPoly f = sym::to_ncpoly(r.lhs, alphabet) - sym::to_ncpoly(r.rhs, alphabet);
    const std::string a = f.to_string(alphabet);
    const std::string b = (-f).to_string(alphabet);
    out.insert(std::min(a, b));
  }
  return out;
}

}  // namespace

TEST_CASE("G2st expands to the five projection relations") {
  const Presentation p = registry_get("G2st");
  CHECK(p.generators == std::vector<std::string>{"h", "k", "x"});
  CHECK_FALSE(p.unital);
  CHECK(p.expanded.size() == 5);

  // h* = h, k* = k, h^2 + x*x = h, xh... written by hand
  const Presentation ref = parse_presentation(R"(presentation R nonunital {
    gen h, k, x;
    rel eq(adj(h), h);
    rel eq(adj(k), k);
    rel eq(h * h + adj(x) * x, h);
    rel eq(x * h, k * x);
    rel eq(k * k + x * adj(x), k);
  })");
  CHECK(relation_set(p) == relation_set(ref));
}

TEST_CASE("free presentation has nothing to expand") {
  const Presentation p = parse_presentation("presentation Free nonunital { gen a; }");
  CHECK(p.generators.size() == 1);
  CHECK(p.relations.empty());
  CHECK(p.expanded.empty());
}

TEST_CASE("unitary(1 + x) expands to both unitarity equations") {
  const Presentation p = registry_get("C0_01");
  REQUIRE(p.expanded.size() == 2);
  sym::Alphabet ab({"x"});
  auto poly = [&](const char* text) { return sym::to_ncpoly(parse_expression(text), ab); };
  auto lhs_minus_rhs = [&](const Relation& r) { return sym::to_ncpoly(r.lhs, ab) - sym::to_ncpoly(r.rhs, ab); };
  CHECK(lhs_minus_rhs(p.expanded[0]) == poly("adj(1 + x) * (1 + x) - 1"));
  CHECK(lhs_minus_rhs(p.expanded[1]) == poly("(1 + x) * adj(1 + x) - 1"));
}

TEST_CASE("registry contents") {
  const Presentation qc = registry_get("qC");
  CHECK(qc.generators == std::vector<std::string>{"h0", "k0", "x0"});
  const Presentation d = registry_get("D");
  REQUIRE(d.relations.size() == 1);
  CHECK(d.relations[0].kind == RelKind::NormLe);
  CHECK(d.relations[0].to_string() == "normle(1 + y, 1)");
  CHECK(d.meta.projective);

  const Presentation pp = registry_get("P");
  std::set<RelKind> kinds;
  for (const auto& r : pp.relations) kinds.insert(r.kind);
  CHECK(kinds.count(RelKind::Range01));
  CHECK(kinds.count(RelKind::Zero));
  CHECK_FALSE(kinds.count(RelKind::Proj));
  CHECK(pp.meta.projective);
  CHECK(registry_get("G2st").meta.semiprojective);

  CHECK_THROWS_AS(registry_get("Nope"), std::invalid_argument);
  CHECK_THROWS_AS(registry_get("ConeMn(0)"), std::invalid_argument);
}

TEST_CASE("registry matches the shipped files and validates cleanly") {
  for (const auto& name : kShipped) {
    CAPTURE(name);
    const std::string text = testutil::read_source(registry_file(name));
    REQUIRE_FALSE(text.empty());
    CHECK(embedded_source(registry_file(name)).value() == text);
    const Presentation fromfile = parse_presentation(text);
    CHECK(registry_get(name).same_algebra(fromfile));
    CHECK(validate_presentation(registry_get(name)).empty());
  }
  for (int n = 1; n <= 4; ++n) {
    const Presentation c = registry_get("ConeMn(" + std::to_string(n) + ")");
    CHECK(c.generators.size() == static_cast<std::size_t>(n));
    CHECK(validate_presentation(c).empty());
  }
}

TEST_CASE("canonical printing is idempotent") {
  for (const auto& name : kShipped) {
    CAPTURE(name);
    const Presentation once = parse_presentation(testutil::read_source(registry_file(name)));
    const std::string printed = print_presentation(once);
    const Presentation twice = parse_presentation(printed);
    CHECK(once.same_algebra(twice));
    CHECK(print_presentation(twice) == printed);
  }
}

TEST_CASE("G2st canonical form") {
  CHECK(print_presentation(registry_get("G2st")) ==
        "presentation G2st nonunital {\n  gen h, k, x;\n  rel proj([[1 - h, adj(x)], [x, k]]);\n}\n");
}

TEST_CASE("diagnostics") {
  const auto undeclared = validate_presentation(
      parse_presentation_unchecked("presentation A nonunital { gen h; rel eq(h * z, 0); }"));
  REQUIRE(undeclared.size() == 1);
  CHECK(undeclared[0].message == "undeclared generator z");
  CHECK(undeclared[0].path == "rel[0]/lhs/rhs");

  const auto cyclic = validate_presentation(
      parse_presentation_unchecked("presentation A nonunital { gen h; let A = A * A; rel selfadj(A); }"));
  REQUIRE(cyclic.size() == 1);
  CHECK(cyclic[0].message == "cyclic binding A");

  const auto two_cycle = messages(validate_presentation(
      parse_presentation_unchecked("presentation A nonunital { gen h; let A = B; let B = A + h; }")));
  CHECK(std::count(two_cycle.begin(), two_cycle.end(), "cyclic binding A") +
            std::count(two_cycle.begin(), two_cycle.end(), "cyclic binding B") ==
        1);

  // a binding no relation uses is not read in the unitization
  const auto unit_let = messages(validate_presentation(
      parse_presentation_unchecked("presentation A nonunital { gen h; let B = 1 - h; rel proj(h); }")));
  REQUIRE(unit_let.size() == 1);
  CHECK(unit_let[0] == "unit literal outside a relation in nonunital presentation");
  CHECK(validate_presentation(
            parse_presentation_unchecked("presentation A nonunital { gen h; let B = 1 - h; rel proj(B); }"))
            .empty());
  CHECK(validate_presentation(
            parse_presentation_unchecked("presentation A unital { gen h; let B = 1 - h; rel proj(h); }"))
            .empty());

  const auto dup = messages(validate_presentation(parse_presentation_unchecked(
      "presentation A nonunital { gen h, h; }")));
  CHECK(dup == std::vector<std::string>{"duplicate generator h"});

  const auto shape = messages(validate_presentation(parse_presentation_unchecked(
      "presentation A nonunital { gen h; rel proj([[h, h]]); }")));
  REQUIRE(shape.size() == 1);
  CHECK(shape[0] == "proj needs a square operand");

  CHECK_THROWS_AS(parse_presentation("presentation A nonunital { gen h; rel eq(h, q); }"), PresentationError);
}

TEST_CASE("syntax errors carry line and column") {
  try {
    parse_presentation("presentation A nonunital {\n  gen h\n  rel proj(h);\n}");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() == 3);
  }
  CHECK_THROWS_AS(parse_presentation("presentation A sometimes { }"), ParseError);
  CHECK_THROWS_AS(parse_presentation("presentation A nonunital { rel frob(h); }"), ParseError);
  CHECK_THROWS_AS(parse_presentation("presentation A nonunital { gen h; rel normle(h, -1); }"), ParseError);
  CHECK_THROWS_AS(parse_presentation("presentation A nonunital { gen h; "), ParseError);
}

TEST_CASE("adjoint normalization is involutive") {
  const StarExpr e = parse_expression("adj(adj(a * b + 2i * c))");
  CHECK(normalize_adjoints(e) == normalize_adjoints(parse_expression("a * b + 2i * c")));
  CHECK(normalize_adjoints(parse_expression("adj(a * b)")).to_string() == "adj(b) * adj(a)");
}

TEST_CASE("unit glyph and comments") {
  const Presentation p = parse_presentation(
      "presentation U unital { # a comment\n gen u; // another\n rel unitary(u); rel eq(u * u, \xF0\x9D\x9F\x99); }");
  CHECK(p.relations.size() == 2);
  CHECK(p.relations[1].rhs.is_unit());
}

TEST_CASE("cone presentation relations hold for t e_j1") {
  const Presentation c = registry_get("ConeMn(3)");
  // every expanded eq relation becomes zero after c_j -> t e_{j1}; spot
  // check the count: (n-1) modulus relations, n(n-1) orthogonality
  // relations, n(n-1) product relations
  const std::size_t eqs = std::count_if(c.expanded.begin(), c.expanded.end(),
                                        [](const Relation& r) { return r.kind == RelKind::Eq; });
  CHECK(eqs == 2 + 6 + 6);
}
