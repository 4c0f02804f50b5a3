#include "nccell/presentation.hpp"

#include "nccell/embedded.hpp"
#include "nccell/ncpoly.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <set>

namespace nccell::pres {

std::string_view rel_keyword(RelKind kind) {
  switch (kind) {
    case RelKind::Proj: return "proj";
    case RelKind::SelfAdj: return "selfadj";
    case RelKind::Eq: return "eq";
    case RelKind::Range01: return "range01";
    case RelKind::NormLe: return "normle";
    case RelKind::Zero: return "zero";
    case RelKind::Unitary: return "unitary";
  }
  return "?";
}

namespace {

std::optional<RelKind> rel_kind_from(std::string_view word) {
  for (RelKind k : {RelKind::Proj, RelKind::SelfAdj, RelKind::Eq, RelKind::Range01, RelKind::NormLe,
                    RelKind::Zero, RelKind::Unitary}) {
    if (rel_keyword(k) == word) return k;
  }
  return std::nullopt;
}

std::string bound_text(const mpq_class& b) {
  std::string d = exact_decimal(b);
  return d.empty() ? b.get_str() : d;
}

}  // namespace

std::string Relation::to_string() const {
  std::string out(rel_keyword(kind));
  out += "(" + lhs.to_string();
  if (kind == RelKind::Eq) out += ", " + rhs.to_string();
  if (kind == RelKind::NormLe) out += ", " + bound_text(bound);
  return out + ")";
}

bool Presentation::same_algebra(const Presentation& other) const {
  return name == other.name && unital == other.unital && generators == other.generators &&
         lets == other.lets && relations == other.relations && expanded == other.expanded;
}

PresentationError::PresentationError(std::vector<Diagnostic> diagnostics)
    : std::runtime_error(diagnostics.empty() ? std::string("invalid presentation")
                                             : diagnostics.front().message +
                                                   (diagnostics.front().path.empty()
                                                        ? std::string()
                                                        : " (at " + diagnostics.front().path + ")")),
      diagnostics_(std::move(diagnostics)) {}

Presentation parse_presentation_unchecked(std::string_view text) {
  ExprParser in(text);
  if (!in.at_ident("presentation")) in.fail("expected 'presentation'");
  in.next();
  Presentation p;
  p.name = in.expect_ident();
  if (in.at_ident("unital")) {
    p.unital = true;
  } else if (!in.at_ident("nonunital")) {
    in.fail("expected 'unital' or 'nonunital'");
  }
  in.next();
  in.expect_punct("{");
  while (!in.accept_punct("}")) {
    if (in.at_end()) in.fail("unexpected end of input; missing '}'");
    if (in.at_ident("gen")) {
      in.next();
      do {
        p.generators.push_back(in.expect_ident());
      } while (in.accept_punct(","));
    } else if (in.at_ident("let")) {
      in.next();
      std::string name = in.expect_ident();
      in.expect_punct("=");
      p.lets.emplace_back(std::move(name), in.parse_expr());
    } else if (in.at_ident("rel")) {
      in.next();
      if (in.peek().type != Token::Type::Ident) in.fail("expected a constraint keyword");
      const auto kind = rel_kind_from(in.peek().text);
      if (!kind) in.fail("unknown constraint '" + in.peek().text + "'");
      in.next();
      Relation r;
      r.kind = *kind;
      in.expect_punct("(");
      r.lhs = in.parse_expr();
      if (r.kind == RelKind::Eq) {
        in.expect_punct(",");
        r.rhs = in.parse_expr();
      } else if (r.kind == RelKind::NormLe) {
        in.expect_punct(",");
        if (in.peek().type != Token::Type::Number) in.fail("normle bound must be a nonnegative real literal");
        r.bound = GaussRational::from_decimal(in.next().text).re();
      }
      in.expect_punct(")");
      p.relations.push_back(std::move(r));
    } else {
      in.fail("expected 'gen', 'let', 'rel' or '}'");
    }
    in.expect_punct(";");
  }
  if (!in.at_end()) in.fail("unexpected input after presentation");
  return p;
}

namespace {

void check_names(const StarExpr& e, const std::set<std::string>& known, const std::string& path,
                 std::vector<Diagnostic>& out) {
  using K = StarExpr::Kind;
  switch (e.kind()) {
    case K::Generator:
      if (!known.count(e.name())) out.push_back({path, "undeclared generator " + e.name()});
      return;
    case K::Unit:
    case K::Scalar:
      return;
    case K::Sum:
    case K::Difference:
    case K::Product:
      check_names(e.lhs(), known, path + "/lhs", out);
      check_names(e.rhs(), known, path + "/rhs", out);
      return;
    case K::Negation:
    case K::Adjoint:
      check_names(e.operand(), known, path + "/arg", out);
      return;
    case K::Block:
      for (std::size_t i = 0; i < e.rows().size(); ++i)
        for (std::size_t j = 0; j < e.rows()[i].size(); ++j)
          check_names(e.rows()[i][j], known, path + "/entry(" + std::to_string(i) + "," + std::to_string(j) + ")",
                      out);
      return;
  }
}

StarExpr inline_with(const StarExpr& e, const std::map<std::string, StarExpr>& lets, int depth = 0) {
  if (depth > 256) throw std::runtime_error("let-binding nesting too deep");
  std::set<std::string> names;
  collect_generators(e, names);
  std::map<std::string, StarExpr> images;
  for (const auto& n : names) {
    const auto it = lets.find(n);
    if (it != lets.end()) images.emplace(n, inline_with(it->second, lets, depth + 1));
  }
  return images.empty() ? e : substitute(e, images);
}

std::map<std::string, StarExpr> let_map(const Presentation& p) {
  return {p.lets.begin(), p.lets.end()};
}

bool is_square_relation(RelKind k) {
  return k == RelKind::Proj || k == RelKind::SelfAdj || k == RelKind::Unitary || k == RelKind::Range01;
}

}  // namespace

StarExpr inline_lets(const StarExpr& e, const Presentation& p) { return inline_with(e, let_map(p)); }

std::vector<Diagnostic> validate_presentation(const Presentation& p) {
  std::vector<Diagnostic> out;
  std::set<std::string> gens;
  for (const auto& g : p.generators) {
    if (g == "adj") out.push_back({"gen", "reserved word used as generator name"});
    if (!gens.insert(g).second) out.push_back({"gen", "duplicate generator " + g});
  }
  std::set<std::string> known = gens;
  for (const auto& [name, expr] : p.lets) {
    if (gens.count(name)) out.push_back({"let " + name, "binding " + name + " shadows a generator"});
    if (!known.insert(name).second && !gens.count(name)) {
      out.push_back({"let " + name, "duplicate binding " + name});
    }
  }
  // Bindings reached from some relation; a unit elsewhere has no unitization
  // to live in.
  std::set<std::string> used;
  {
    std::vector<std::string> todo;
    for (const Relation& r : p.relations) {
      std::set<std::string> refs;
      collect_generators(r.lhs, refs);
      if (r.kind == RelKind::Eq) collect_generators(r.rhs, refs);
      todo.insert(todo.end(), refs.begin(), refs.end());
    }
    while (!todo.empty()) {
      const std::string n = todo.back();
      todo.pop_back();
      if (!used.insert(n).second) continue;
      for (const auto& [name, expr] : p.lets)
        if (name == n) {
          std::set<std::string> refs;
          collect_generators(expr, refs);
          todo.insert(todo.end(), refs.begin(), refs.end());
        }
    }
  }
  for (const auto& [name, expr] : p.lets) {
    check_names(expr, known, "let " + name, out);
    if (!p.unital && !used.count(name) && contains_unit(expr)) {
      out.push_back({"let " + name, "unit literal outside a relation in nonunital presentation"});
    }
  }

  // Cycles in the binding graph.
  const auto lets = let_map(p);
  std::map<std::string, int> state;  // 0 new, 1 on stack, 2 done
  bool cyclic = false;
  std::function<void(const std::string&)> visit = [&](const std::string& name) {
    state[name] = 1;
    std::set<std::string> refs;
    collect_generators(lets.at(name), refs);
    for (const auto& r : refs) {
      if (!lets.count(r)) continue;
      if (state[r] == 1) {
        out.push_back({"let " + r, "cyclic binding " + r});
        cyclic = true;
      } else if (state[r] == 0) {
        visit(r);
      }
    }
    state[name] = 2;
  };
  for (const auto& [name, expr] : p.lets)
    if (state[name] == 0) visit(name);

  for (std::size_t i = 0; i < p.relations.size(); ++i) {
    const Relation& r = p.relations[i];
    const std::string path = "rel[" + std::to_string(i) + "]";
    check_names(r.lhs, known, path + "/lhs", out);
    if (r.kind == RelKind::Eq) check_names(r.rhs, known, path + "/rhs", out);
    if (sgn(r.bound) < 0) out.push_back({path, "negative norm bound"});
  }
  if (!out.empty() || cyclic) return out;

  for (std::size_t i = 0; i < p.relations.size(); ++i) {
    const Relation& r = p.relations[i];
    const std::string path = "rel[" + std::to_string(i) + "]";
    try {
      const ExprMatrix lhs = expand_blocks(inline_with(r.lhs, lets));
      if (is_square_relation(r.kind) && !lhs.broadcast && lhs.rows != lhs.cols) {
        out.push_back({path, std::string(rel_keyword(r.kind)) + " needs a square operand"});
      }
      if (r.kind == RelKind::Eq) {
        const ExprMatrix rhs = expand_blocks(inline_with(r.rhs, lets));
        if (!lhs.broadcast && !rhs.broadcast && (lhs.rows != rhs.rows || lhs.cols != rhs.cols)) {
          out.push_back({path, "eq operands have different block shapes"});
        }
      }
    } catch (const ShapeError& err) {
      out.push_back({path, err.what()});
    }
  }
  return out;
}

namespace {

class Expander {
 public:
  explicit Expander(const Presentation& p) : alphabet_(p.generators), lets_(let_map(p)) {}

  void expand(const Relation& r, std::vector<Relation>& out) const {
    const StarExpr e = inline_with(r.lhs, lets_);
    switch (r.kind) {
      case RelKind::Eq:
        equate(expand_blocks(e), expand_blocks(inline_with(r.rhs, lets_)), false, out);
        return;
      case RelKind::Zero: {
        const ExprMatrix m = expand_blocks(e);
        equate(m, zero_like(m), false, out);
        return;
      }
      case RelKind::SelfAdj:
        self_adjoint(e, out);
        return;
      case RelKind::Proj:
        self_adjoint(e, out);
        equate(expand_blocks(StarExpr::product(e, e)), expand_blocks(e), true, out);
        return;
      case RelKind::Unitary: {
        const StarExpr u = StarExpr::unit();
        equate(expand_blocks(StarExpr::product(StarExpr::adjoint(e), e)), expand_blocks(u), true, out);
        equate(expand_blocks(StarExpr::product(e, StarExpr::adjoint(e))), expand_blocks(u), true, out);
        return;
      }
      case RelKind::Range01:
      case RelKind::NormLe: {
        Relation kept = r;
        kept.lhs = e;
        out.push_back(std::move(kept));
        return;
      }
    }
  }

 private:
  static ExprMatrix zero_like(const ExprMatrix& m) {
    ExprMatrix z = m;
    for (auto& entry : z.entries) entry = StarExpr();
    return z;
  }

  void self_adjoint(const StarExpr& e, std::vector<Relation>& out) const {
    equate(expand_blocks(StarExpr::adjoint(e)), expand_blocks(e), true, out);
  }

  // Entrywise equations; `lower` keeps only i >= j, for differences that are
  // self-adjoint whenever the lower triangle vanishes.
  void equate(ExprMatrix a, ExprMatrix b, bool lower, std::vector<Relation>& out) const {
    if (a.broadcast && !b.broadcast) a = a.resized(b.rows);
    if (b.broadcast && !a.broadcast) b = b.resized(a.rows);
    if (a.rows != b.rows || a.cols != b.cols) throw ShapeError("eq operands have different block shapes");
    for (std::size_t i = 0; i < a.rows; ++i)
      for (std::size_t j = 0; j < a.cols; ++j) {
        if (lower && j > i) continue;
        Relation r;
        r.kind = RelKind::Eq;
        r.lhs = normalize_adjoints(a.at(i, j));
        r.rhs = normalize_adjoints(b.at(i, j));
        if ((sym::to_ncpoly(r.lhs, alphabet_) - sym::to_ncpoly(r.rhs, alphabet_)).is_zero()) continue;
        out.push_back(std::move(r));
      }
  }

  sym::Alphabet alphabet_;
  std::map<std::string, StarExpr> lets_;
};

}  // namespace

Presentation finalize_presentation(Presentation p) {
  auto diagnostics = validate_presentation(p);
  if (!diagnostics.empty()) throw PresentationError(std::move(diagnostics));
  p.expanded.clear();
  const Expander expander(p);
  for (const Relation& r : p.relations) expander.expand(r, p.expanded);
  return p;
}

Presentation parse_presentation(std::string_view text) {
  return finalize_presentation(parse_presentation_unchecked(text));
}

std::string print_presentation(const Presentation& p) {
  std::string out = "presentation " + p.name + (p.unital ? " unital" : " nonunital") + " {\n";
  if (!p.generators.empty()) {
    out += "  gen ";
    for (std::size_t i = 0; i < p.generators.size(); ++i) {
      if (i) out += ", ";
      out += p.generators[i];
    }
    out += ";\n";
  }
  for (const auto& [name, expr] : p.lets) out += "  let " + name + " = " + expr.to_string() + ";\n";
  for (const auto& r : p.relations) out += "  rel " + r.to_string() + ";\n";
  return out + "}\n";
}

// ---------------------------------------------------------------------------
// Registry

namespace {

struct Entry {
  std::string_view name;
  std::string_view file;
  Metadata meta;
};

const std::vector<Entry>& entries() {
  static const std::vector<Entry> kEntries = {
      {"G2nc", "presentations/g2nc.ncp",
       {false, true, "unitization of G2st; semiprojective with it"}},
      {"G2st", "presentations/g2st.ncp",
       {false, true, "semiprojective: Blackadar, Shape theory for C*-algebras, Cor. 2.16, Prop. 2.17"}},
      {"qC", "presentations/qc.ncp",
       {false, true, "concrete picture: f in C0((0,1], M2) with f(1) diagonal"}},
      {"P", "presentations/p.ncp",
       {true, true, "projective: Loring, Projective K-theory and homotopy, Thm. 9"}},
      {"C0_01", "presentations/c0_01.ncp",
       {false, true, "unitization is C(S^1)"}},
      {"D", "presentations/d.ncp",
       {true, true, "unitization is the universal unital C*-algebra of a contraction"}},
      {"CFreeC", "presentations/cfreec.ncp", {false, true, "free product of two copies of C"}},
      {"CFreeC01", "presentations/cfreec01.ncp", {false, false, "free product of C and C0((0,1])"}},
  };
  return kEntries;
}

std::optional<int> cone_size(std::string_view name) {
  constexpr std::string_view prefix = "ConeMn(";
  if (name.substr(0, prefix.size()) != prefix || name.back() != ')') return std::nullopt;
  const std::string digits(name.substr(prefix.size(), name.size() - prefix.size() - 1));
  if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit) || digits.size() > 3) {
    return std::nullopt;
  }
  const int n = std::stoi(digits);
  if (n < 1) return std::nullopt;
  return n;
}

}  // namespace

std::string cone_source(int n) {
  if (n < 1) throw std::invalid_argument("cone_source: n must be positive");
  // c_j plays t*e_{j1}: c_1 is a positive contraction and the c_j share its
  // modulus while having orthogonal ranges.
  std::string gens;
  for (int j = 1; j <= n; ++j) gens += (j > 1 ? ", c" : "c") + std::to_string(j);
  std::string out = "presentation ConeM" + std::to_string(n) + " nonunital {\n  gen " + gens + ";\n";
  out += "  rel range01(c1);\n";
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      const std::string ci = "c" + std::to_string(i);
      const std::string cj = "c" + std::to_string(j);
      if (i == j && i > 1) out += "  rel eq(adj(" + ci + ") * " + ci + ", c1 * c1);\n";
      if (i != j) out += "  rel zero(adj(" + ci + ") * " + cj + ");\n";
      if (j > 1) out += "  rel zero(" + ci + " * " + cj + ");\n";
    }
  return out + "}\n";
}

std::string registry_file(std::string_view name) {
  for (const auto& e : entries())
    if (e.name == name) return std::string(e.file);
  throw std::invalid_argument("no shipped file for algebra " + std::string(name));
}

Presentation registry_get(std::string_view name) {
  if (const auto n = cone_size(name)) {
    Presentation p = parse_presentation(cone_source(*n));
    p.meta = {true, true, "cone over M_n; projective"};
    return p;
  }
  for (const auto& e : entries()) {
    if (e.name != name) continue;
    const auto text = embedded_source(e.file);
    if (!text) throw std::logic_error("missing embedded source " + std::string(e.file));
    Presentation p = parse_presentation(*text);
    p.meta = e.meta;
    return p;
  }
  throw std::invalid_argument("unknown algebra " + std::string(name));
}

std::shared_ptr<const Presentation> registry_shared(std::string_view name) {
  static std::mutex mu;
  static std::map<std::string, std::shared_ptr<const Presentation>, std::less<>> cache;
  std::lock_guard<std::mutex> lock(mu);
  const auto it = cache.find(name);
  if (it != cache.end()) return it->second;
  auto p = std::make_shared<const Presentation>(registry_get(name));
  cache.emplace(std::string(name), p);
  return p;
}

std::vector<std::string> registry_names() {
  std::vector<std::string> out;
  for (const auto& e : entries()) out.emplace_back(e.name);
  out.emplace_back("ConeMn(n)");
  return out;
}

}  // namespace nccell::pres
