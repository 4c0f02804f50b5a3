#include "nccell/identity.hpp"

#include "nccell/presentation.hpp"

#include <map>
#include <mutex>
#include <regex>
#include <set>

namespace nccell::ident {

namespace {

struct Line {
  int number = 0;
  std::string label;
  std::vector<Token> tokens;
};

// Labels may contain '-', which the expression tokenizer splits, so they are
// cut out of the text before tokenizing.
std::vector<Line> split_lines(std::string_view text) {
  static const std::regex kLabel(R"(^(\s*)([A-Za-z_][A-Za-z0-9_.\-]*)(\s*):)");
  std::string blanked;
  std::map<int, std::string> labels;
  int number = 1;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(start, end - start));
    std::smatch m;
    if (std::regex_search(line, m, kLabel) && m[2].str() != "let") {
      labels[number] = m[2].str();
      line.replace(0, static_cast<std::size_t>(m.length(0)), static_cast<std::size_t>(m.length(0)), ' ');
    }
    blanked += line;
    if (end < text.size()) blanked += '\n';
    start = end + 1;
    ++number;
  }

  std::vector<Line> out;
  for (Token& t : tokenize(blanked)) {
    if (t.type == Token::Type::End) break;
    if (out.empty() || out.back().number != t.line) {
      Line l;
      l.number = t.line;
      if (const auto it = labels.find(t.line); it != labels.end()) l.label = it->second;
      out.push_back(std::move(l));
    }
    out.back().tokens.push_back(std::move(t));
  }
  for (Line& l : out) {
    Token end;
    end.line = l.number;
    end.column = l.tokens.back().column + static_cast<int>(l.tokens.back().text.size());
    l.tokens.push_back(end);
  }
  return out;
}

}  // namespace

IdentityFile parse_identity_file(std::string_view text) {
  IdentityFile file;
  std::map<std::string, StarExpr> lets;
  for (Line& line : split_lines(text)) {
    ExprParser in(line.tokens);
    if (in.at_ident("let") && line.label.empty()) {
      in.next();
      const std::string name = in.expect_ident();
      in.expect_punct("=");
      StarExpr e = in.parse_expr();
      in.accept_punct(";");
      if (!in.at_end()) in.fail("unexpected input after binding");
      if (lets.count(name)) in.fail("binding " + name + " defined twice");
      // Earlier bindings are inlined right away, so a binding can never
      // refer to itself.
      e = substitute(e, lets);
      std::set<std::string> refs;
      collect_generators(e, refs);
      if (refs.count(name)) in.fail("cyclic binding " + name);
      lets.emplace(name, e);
      file.lets.emplace_back(name, e);
      continue;
    }
    IdentityCase c;
    c.line = line.number;
    c.label = line.label.empty() ? "line " + std::to_string(line.number) : line.label;
    c.lhs = substitute(in.parse_expr(), lets);
    in.expect_punct("==");
    c.rhs = substitute(in.parse_expr(), lets);
    if (!in.at_ident("modulo")) in.fail("expected 'modulo <rules>'");
    in.next();
    c.rules = in.expect_ident();
    in.accept_punct(";");
    if (!in.at_end()) in.fail("unexpected input after identity");
    file.cases.push_back(std::move(c));
  }
  return file;
}

std::vector<std::string> letter_order(std::string_view rules) {
  // Mixed generators first, so the projection relations orient as
  // h*h -> h - adj(x)*x and k*x -> x*h.
  static const std::map<std::string, std::vector<std::string>, std::less<>> kOrders = {
      {"G2st", {"x", "h", "k"}},   {"G2nc", {"c", "a", "b"}},     {"qC", {"x0", "h0", "k0"}},
      {"P", {"x", "h", "k"}},      {"CFreeC01", {"p", "l"}},      {"CFreeC", {"p0", "q0"}},
  };
  if (const auto it = kOrders.find(rules); it != kOrders.end()) return it->second;
  return pres::registry_get(rules).generators;
}

const sym::RewriteSystem& rules_get(std::string_view rules) {
  static std::mutex mu;
  static std::map<std::string, sym::RewriteSystem, std::less<>> cache;
  std::lock_guard<std::mutex> lock(mu);
  if (const auto it = cache.find(rules); it != cache.end()) return it->second;

  const auto p = pres::registry_shared(rules);
  sym::Alphabet alphabet(letter_order(rules));
  std::vector<sym::NCPoly> zeros;
  for (const auto& r : p->expanded) {
    if (r.kind != pres::RelKind::Eq) continue;
    zeros.push_back(sym::to_ncpoly(r.lhs, alphabet) - sym::to_ncpoly(r.rhs, alphabet));
  }
  auto system = sym::RewriteSystem::from_relations(std::move(alphabet), zeros);
  return cache.emplace(std::string(rules), std::move(system)).first->second;
}

IdentityResult check_identity(const IdentityCase& c) {
  sym::RewriteSystem free_system;
  const sym::RewriteSystem* system = nullptr;
  if (c.rules == "free") {
    std::set<std::string> names;
    collect_generators(c.lhs, names);
    collect_generators(c.rhs, names);
    free_system = sym::RewriteSystem(sym::Alphabet({names.begin(), names.end()}), {});
    system = &free_system;
  } else {
    system = &rules_get(c.rules);
  }
  IdentityResult out;
  out.label = c.label;
  out.alphabet = system->alphabet();
  out.lhs = sym::to_poly_matrix(c.lhs, out.alphabet);
  out.rhs = sym::to_poly_matrix(c.rhs, out.alphabet);
  // A scalar side such as 0 stands for the zero matrix of the other's shape.
  auto widen = [](const sym::PolyMatrix& m, std::size_t rows, std::size_t cols) {
    if (m.rows() == rows && m.cols() == cols) return m;
    if (m.rows() != 1 || m.cols() != 1 || rows != cols) {
      throw ShapeError("identity sides have different block shapes");
    }
    sym::PolyMatrix w(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) w.at(i, i) = m.at(0, 0);
    return w;
  };
  if (out.lhs.rows() * out.lhs.cols() >= out.rhs.rows() * out.rhs.cols()) {
    out.rhs = widen(out.rhs, out.lhs.rows(), out.lhs.cols());
  } else {
    out.lhs = widen(out.lhs, out.rhs.rows(), out.rhs.cols());
  }
  const sym::IdentityProof proof = sym::prove_identity(out.lhs, out.rhs, *system);
  out.holds = proof.holds;
  out.difference = proof.holds ? "0" : proof.difference.to_string(out.alphabet);
  return out;
}

std::vector<IdentityResult> check_identity_file(std::string_view text) {
  std::vector<IdentityResult> out;
  for (const IdentityCase& c : parse_identity_file(text).cases) out.push_back(check_identity(c));
  return out;
}

}  // namespace nccell::ident
