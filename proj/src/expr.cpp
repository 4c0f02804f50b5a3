#include "nccell/expr.hpp"

#include <cctype>
#include <sstream>
#include <utility>

namespace nccell {

struct StarExpr::Node {
  Kind kind = Kind::Scalar;
  std::string name;
  GaussRational value;
  std::vector<StarExpr> children;
  Rows rows;
};

std::shared_ptr<StarExpr::Node> StarExpr::make_node(Kind kind) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  return n;
}

StarExpr::StarExpr() : StarExpr(make_node(Kind::Scalar)) {}

StarExpr::StarExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

StarExpr StarExpr::generator(std::string name) {
  auto n = make_node(Kind::Generator);
  n->name = std::move(name);
  return StarExpr(std::move(n));
}

StarExpr StarExpr::unit() { return StarExpr(make_node(Kind::Unit)); }

StarExpr StarExpr::scalar(GaussRational value) {
  auto n = make_node(Kind::Scalar);
  n->value = std::move(value);
  return StarExpr(std::move(n));
}

#define NCCELL_BINARY(fn, K)                          \
  StarExpr StarExpr::fn(StarExpr a, StarExpr b) {     \
    auto n = make_node(Kind::K);        \
    n->children = {std::move(a), std::move(b)};       \
    return StarExpr(std::move(n));                    \
  }
NCCELL_BINARY(sum, Sum)
NCCELL_BINARY(difference, Difference)
NCCELL_BINARY(product, Product)
#undef NCCELL_BINARY

StarExpr StarExpr::negation(StarExpr a) {
  auto n = make_node(Kind::Negation);
  n->children = {std::move(a)};
  return StarExpr(std::move(n));
}

StarExpr StarExpr::adjoint(StarExpr a) {
  auto n = make_node(Kind::Adjoint);
  n->children = {std::move(a)};
  return StarExpr(std::move(n));
}

StarExpr StarExpr::block(Rows rows) {
  auto n = make_node(Kind::Block);
  n->rows = std::move(rows);
  return StarExpr(std::move(n));
}

StarExpr::Kind StarExpr::kind() const { return node_->kind; }
const std::string& StarExpr::name() const { return node_->name; }
const GaussRational& StarExpr::value() const { return node_->value; }
const StarExpr& StarExpr::lhs() const { return node_->children.at(0); }
const StarExpr& StarExpr::rhs() const { return node_->children.at(1); }
const StarExpr& StarExpr::operand() const { return node_->children.at(0); }
const StarExpr::Rows& StarExpr::rows() const { return node_->rows; }

bool StarExpr::is_zero_literal() const { return kind() == Kind::Scalar && value().is_zero(); }

bool operator==(const StarExpr& a, const StarExpr& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case StarExpr::Kind::Generator:
      return a.name() == b.name();
    case StarExpr::Kind::Unit:
      return true;
    case StarExpr::Kind::Scalar:
      return a.value() == b.value();
    case StarExpr::Kind::Block:
      return a.rows() == b.rows();
    default:
      return a.node_->children == b.node_->children;
  }
}

namespace {

constexpr int kLevelSum = 1;
constexpr int kLevelProduct = 2;
constexpr int kLevelUnary = 3;
constexpr int kLevelAtom = 4;

void print(const StarExpr& e, int min_level, std::string& out);

std::string scalar_text(const GaussRational& v, int& level) {
  level = kLevelAtom;
  const bool re_zero = sgn(v.re()) == 0;
  const bool im_zero = sgn(v.im()) == 0;
  if (im_zero) {
    std::string d = exact_decimal(abs(v.re()));
    if (d.empty()) d = mpq_class(abs(v.re())).get_str();
    if (sgn(v.re()) < 0) {
      level = kLevelUnary;
      return "-" + d;
    }
    return d;
  }
  if (re_zero) {
    std::string d = exact_decimal(abs(v.im()));
    if (d.empty()) d = mpq_class(abs(v.im())).get_str();
    if (sgn(v.im()) < 0) {
      level = kLevelUnary;
      return "-" + d + "i";
    }
    return d + "i";
  }
  int dummy = 0;
  return "(" + scalar_text(GaussRational(v.re(), 0), dummy) + " + " +
         scalar_text(GaussRational(0, v.im()), dummy) + ")";
}

void print_wrapped(int own_level, int min_level, std::string& out, const std::string& body) {
  if (own_level < min_level) {
    out += "(" + body + ")";
  } else {
    out += body;
  }
}

void print(const StarExpr& e, int min_level, std::string& out) {
  using K = StarExpr::Kind;
  std::string body;
  int level = kLevelAtom;
  switch (e.kind()) {
    case K::Generator:
      body = e.name();
      break;
    case K::Unit:
      body = "1";
      break;
    case K::Scalar:
      body = scalar_text(e.value(), level);
      break;
    case K::Sum:
    case K::Difference:
      level = kLevelSum;
      print(e.lhs(), kLevelSum, body);
      body += e.kind() == K::Sum ? " + " : " - ";
      print(e.rhs(), kLevelProduct, body);
      break;
    case K::Product:
      level = kLevelProduct;
      print(e.lhs(), kLevelProduct, body);
      body += " * ";
      print(e.rhs(), kLevelUnary, body);
      break;
    case K::Negation:
      level = kLevelUnary;
      body = "-";
      print(e.operand(), kLevelUnary, body);
      break;
    case K::Adjoint:
      body = "adj(";
      print(e.operand(), 0, body);
      body += ")";
      break;
    case K::Block: {
      body = "[";
      for (std::size_t i = 0; i < e.rows().size(); ++i) {
        if (i) body += ", ";
        body += "[";
        for (std::size_t j = 0; j < e.rows()[i].size(); ++j) {
          if (j) body += ", ";
          print(e.rows()[i][j], 0, body);
        }
        body += "]";
      }
      body += "]";
      break;
    }
  }
  print_wrapped(level, min_level, out, body);
}

}  // namespace

std::string StarExpr::to_string() const {
  std::string out;
  print(*this, 0, out);
  return out;
}

StarExpr add(const StarExpr& a, const StarExpr& b) {
  if (a.is_zero_literal()) return b;
  if (b.is_zero_literal()) return a;
  return StarExpr::sum(a, b);
}

StarExpr subtract(const StarExpr& a, const StarExpr& b) {
  if (b.is_zero_literal()) return a;
  if (a.is_zero_literal()) return negate(b);
  return StarExpr::difference(a, b);
}

StarExpr multiply(const StarExpr& a, const StarExpr& b) {
  if (a.is_zero_literal() || b.is_zero_literal()) return StarExpr();
  if (a.is_unit()) return b;
  if (b.is_unit()) return a;
  return StarExpr::product(a, b);
}

StarExpr negate(const StarExpr& a) {
  if (a.is_zero_literal()) return a;
  return StarExpr::negation(a);
}

void collect_generators(const StarExpr& e, std::set<std::string>& out) {
  using K = StarExpr::Kind;
  switch (e.kind()) {
    case K::Generator:
      out.insert(e.name());
      return;
    case K::Unit:
    case K::Scalar:
      return;
    case K::Sum:
    case K::Difference:
    case K::Product:
      collect_generators(e.lhs(), out);
      collect_generators(e.rhs(), out);
      return;
    case K::Negation:
    case K::Adjoint:
      collect_generators(e.operand(), out);
      return;
    case K::Block:
      for (const auto& row : e.rows())
        for (const auto& entry : row) collect_generators(entry, out);
      return;
  }
}

namespace {

template <class Pred>
bool any_node(const StarExpr& e, Pred pred) {
  using K = StarExpr::Kind;
  if (pred(e)) return true;
  switch (e.kind()) {
    case K::Sum:
    case K::Difference:
    case K::Product:
      return any_node(e.lhs(), pred) || any_node(e.rhs(), pred);
    case K::Negation:
    case K::Adjoint:
      return any_node(e.operand(), pred);
    case K::Block:
      for (const auto& row : e.rows())
        for (const auto& entry : row)
          if (any_node(entry, pred)) return true;
      return false;
    default:
      return false;
  }
}

}  // namespace

bool contains_unit(const StarExpr& e) {
  return any_node(e, [](const StarExpr& n) { return n.kind() == StarExpr::Kind::Unit; });
}

bool contains_block(const StarExpr& e) {
  return any_node(e, [](const StarExpr& n) { return n.kind() == StarExpr::Kind::Block; });
}

StarExpr substitute(const StarExpr& e, const std::map<std::string, StarExpr>& images) {
  using K = StarExpr::Kind;
  switch (e.kind()) {
    case K::Generator: {
      const auto it = images.find(e.name());
      return it == images.end() ? e : it->second;
    }
    case K::Unit:
    case K::Scalar:
      return e;
    case K::Sum:
      return StarExpr::sum(substitute(e.lhs(), images), substitute(e.rhs(), images));
    case K::Difference:
      return StarExpr::difference(substitute(e.lhs(), images), substitute(e.rhs(), images));
    case K::Product:
      return StarExpr::product(substitute(e.lhs(), images), substitute(e.rhs(), images));
    case K::Negation:
      return StarExpr::negation(substitute(e.operand(), images));
    case K::Adjoint:
      return StarExpr::adjoint(substitute(e.operand(), images));
    case K::Block: {
      StarExpr::Rows rows;
      for (const auto& row : e.rows()) {
        rows.emplace_back();
        for (const auto& entry : row) rows.back().push_back(substitute(entry, images));
      }
      return StarExpr::block(std::move(rows));
    }
  }
  return e;
}

namespace {

StarExpr normalize(const StarExpr& e, bool star) {
  using K = StarExpr::Kind;
  switch (e.kind()) {
    case K::Generator:
      return star ? StarExpr::adjoint(e) : e;
    case K::Unit:
      return e;
    case K::Scalar:
      return star ? StarExpr::scalar(e.value().conj()) : e;
    case K::Sum:
      return StarExpr::sum(normalize(e.lhs(), star), normalize(e.rhs(), star));
    case K::Difference:
      return StarExpr::difference(normalize(e.lhs(), star), normalize(e.rhs(), star));
    case K::Product:
      if (star) return StarExpr::product(normalize(e.rhs(), true), normalize(e.lhs(), true));
      return StarExpr::product(normalize(e.lhs(), false), normalize(e.rhs(), false));
    case K::Negation:
      return StarExpr::negation(normalize(e.operand(), star));
    case K::Adjoint:
      return normalize(e.operand(), !star);
    case K::Block: {
      const auto& src = e.rows();
      StarExpr::Rows rows;
      if (!star) {
        for (const auto& row : src) {
          rows.emplace_back();
          for (const auto& entry : row) rows.back().push_back(normalize(entry, false));
        }
      } else {
        const std::size_t ncols = src.empty() ? 0 : src.front().size();
        for (std::size_t j = 0; j < ncols; ++j) {
          rows.emplace_back();
          for (const auto& row : src) rows.back().push_back(normalize(row.at(j), true));
        }
      }
      return StarExpr::block(std::move(rows));
    }
  }
  return e;
}

StarExpr adjoint_folded(const StarExpr& e) {
  if (e.is_zero_literal() || e.is_unit()) return e;
  return StarExpr::adjoint(e);
}

std::string shape_text(const ExprMatrix& m) {
  return std::to_string(m.rows) + "x" + std::to_string(m.cols);
}

ExprMatrix broadcast_to(const ExprMatrix& m, const ExprMatrix& like) {
  if (!m.broadcast || like.broadcast) return m;
  if (like.rows != like.cols) {
    throw ShapeError("scalar multiple of the unit combined with non-square " + shape_text(like) +
                     " block");
  }
  return m.resized(like.rows);
}

ExprMatrix zero_matrix(std::size_t rows, std::size_t cols) {
  ExprMatrix m;
  m.rows = rows;
  m.cols = cols;
  m.entries.assign(rows * cols, StarExpr());
  return m;
}

}  // namespace

StarExpr normalize_adjoints(const StarExpr& e) { return normalize(e, false); }

ExprMatrix ExprMatrix::resized(std::size_t n) const {
  if (!broadcast) throw ShapeError("only scalar multiples of the unit can be resized");
  ExprMatrix m = zero_matrix(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = entries.front();
  return m;
}

ExprMatrix expand_blocks(const StarExpr& e) {
  using K = StarExpr::Kind;
  switch (e.kind()) {
    case K::Generator:
      return {1, 1, {e}, false};
    case K::Unit:
    case K::Scalar:
      return {1, 1, {e}, true};
    case K::Negation: {
      ExprMatrix m = expand_blocks(e.operand());
      for (auto& entry : m.entries) entry = negate(entry);
      return m;
    }
    case K::Adjoint: {
      const ExprMatrix m = expand_blocks(e.operand());
      ExprMatrix t = zero_matrix(m.cols, m.rows);
      t.broadcast = m.broadcast;
      for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) t.at(j, i) = adjoint_folded(m.at(i, j));
      return t;
    }
    case K::Sum:
    case K::Difference: {
      ExprMatrix a = expand_blocks(e.lhs());
      ExprMatrix b = expand_blocks(e.rhs());
      a = broadcast_to(a, b);
      b = broadcast_to(b, a);
      if (a.rows != b.rows || a.cols != b.cols) {
        throw ShapeError("cannot add " + shape_text(a) + " and " + shape_text(b) + " blocks");
      }
      ExprMatrix out = zero_matrix(a.rows, a.cols);
      out.broadcast = a.broadcast && b.broadcast;
      for (std::size_t i = 0; i < out.entries.size(); ++i) {
        out.entries[i] = e.kind() == K::Sum ? add(a.entries[i], b.entries[i])
                                            : subtract(a.entries[i], b.entries[i]);
      }
      return out;
    }
    case K::Product: {
      const ExprMatrix a = expand_blocks(e.lhs());
      const ExprMatrix b = expand_blocks(e.rhs());
      if (a.broadcast || b.broadcast) {
        const ExprMatrix& s = a.broadcast ? a : b;
        const ExprMatrix& m = a.broadcast ? b : a;
        ExprMatrix out = m;
        for (auto& entry : out.entries) {
          entry = a.broadcast ? multiply(s.entries.front(), entry) : multiply(entry, s.entries.front());
        }
        out.broadcast = a.broadcast && b.broadcast;
        return out;
      }
      if (a.cols != b.rows) {
        throw ShapeError("cannot multiply " + shape_text(a) + " by " + shape_text(b) + " block");
      }
      ExprMatrix out = zero_matrix(a.rows, b.cols);
      for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < b.cols; ++j) {
          StarExpr acc;
          for (std::size_t k = 0; k < a.cols; ++k) acc = add(acc, multiply(a.at(i, k), b.at(k, j)));
          out.at(i, j) = acc;
        }
      return out;
    }
    case K::Block: {
      const auto& src = e.rows();
      if (src.empty() || src.front().empty()) throw ShapeError("empty block matrix");
      const std::size_t nr = src.size();
      const std::size_t nc = src.front().size();
      for (const auto& row : src) {
        if (row.size() != nc) throw ShapeError("block matrix rows have different lengths");
      }
      std::vector<std::vector<ExprMatrix>> parts(nr);
      for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j) parts[i].push_back(expand_blocks(src[i][j]));
      std::vector<std::size_t> heights(nr, 0);
      std::vector<std::size_t> widths(nc, 0);
      for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j) {
          const ExprMatrix& p = parts[i][j];
          if (p.broadcast) continue;
          if (heights[i] != 0 && heights[i] != p.rows) throw ShapeError("block row heights disagree");
          if (widths[j] != 0 && widths[j] != p.cols) throw ShapeError("block column widths disagree");
          heights[i] = p.rows;
          widths[j] = p.cols;
        }
      for (auto& h : heights) h = h == 0 ? 1 : h;
      for (auto& w : widths) w = w == 0 ? 1 : w;
      std::size_t total_rows = 0;
      std::size_t total_cols = 0;
      for (auto h : heights) total_rows += h;
      for (auto w : widths) total_cols += w;
      ExprMatrix out = zero_matrix(total_rows, total_cols);
      std::size_t r0 = 0;
      for (std::size_t i = 0; i < nr; ++i) {
        std::size_t c0 = 0;
        for (std::size_t j = 0; j < nc; ++j) {
          ExprMatrix p = parts[i][j];
          if (p.broadcast) {
            if (heights[i] == widths[j]) {
              p = p.resized(heights[i]);
            } else if (p.entries.front().is_zero_literal()) {
              p = zero_matrix(heights[i], widths[j]);
            } else {
              throw ShapeError("scalar multiple of the unit in a non-square block position");
            }
          }
          for (std::size_t a = 0; a < p.rows; ++a)
            for (std::size_t b = 0; b < p.cols; ++b) out.at(r0 + a, c0 + b) = p.at(a, b);
          c0 += widths[j];
        }
        r0 += heights[i];
      }
      return out;
    }
  }
  throw ShapeError("unknown expression kind");
}

// ---------------------------------------------------------------------------

ParseError::ParseError(int line, int column, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                         ": " + message),
      line_(line),
      column_(column) {}

std::vector<Token> tokenize(std::string_view text) {
  static constexpr std::string_view kUnitGlyph = "\xF0\x9D\x9F\x99";  // U+1D7D9
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < text.size(); ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else if ((static_cast<unsigned char>(text[i]) & 0xC0) != 0x80) {
        ++col;
      }
    }
  };
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#' || (c == '/' && i + 1 < text.size() && text[i + 1] == '/')) {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    Token tok;
    tok.line = line;
    tok.column = col;
    if (text.substr(i, kUnitGlyph.size()) == kUnitGlyph) {
      tok.type = Token::Type::Unit;
      tok.text = "1";
      advance(kUnitGlyph.size());
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
        ++j;
      tok.type = Token::Type::Ident;
      tok.text = std::string(text.substr(i, j - i));
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c)) ||
               (c == '.' && i + 1 < text.size() && std::isdigit(static_cast<unsigned char>(text[i + 1])))) {
      std::size_t j = i;
      while (j < text.size() && (std::isdigit(static_cast<unsigned char>(text[j])) || text[j] == '.')) ++j;
      if (j < text.size() && (text[j] == 'e' || text[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < text.size() && (text[k] == '+' || text[k] == '-')) ++k;
        if (k < text.size() && std::isdigit(static_cast<unsigned char>(text[k]))) {
          while (k < text.size() && std::isdigit(static_cast<unsigned char>(text[k]))) ++k;
          j = k;
        }
      }
      tok.type = Token::Type::Number;
      tok.text = std::string(text.substr(i, j - i));
      if (j < text.size() && text[j] == 'i' &&
          (j + 1 >= text.size() || !(std::isalnum(static_cast<unsigned char>(text[j + 1])) || text[j + 1] == '_'))) {
        tok.type = Token::Type::Imaginary;
        ++j;
      }
      advance(j - i);
    } else if (c == '=' && i + 1 < text.size() && text[i + 1] == '=') {
      tok.type = Token::Type::Punct;
      tok.text = "==";
      advance(2);
    } else if (std::string_view("+-*()[],;{}=^:").find(c) != std::string_view::npos) {
      tok.type = Token::Type::Punct;
      tok.text = std::string(1, c);
      advance(1);
    } else {
      throw ParseError(line, col, std::string("unexpected character '") + c + "'");
    }
    out.push_back(std::move(tok));
  }
  Token end;
  end.type = Token::Type::End;
  end.line = line;
  end.column = col;
  out.push_back(end);
  return out;
}

ExprParser::ExprParser(std::string_view text) : tokens_(tokenize(text)) {}

ExprParser::ExprParser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {
  if (tokens_.empty() || tokens_.back().type != Token::Type::End) tokens_.push_back(Token{});
}

const Token& ExprParser::peek(std::size_t ahead) const {
  const std::size_t k = std::min(pos_ + ahead, tokens_.size() - 1);
  return tokens_[k];
}

Token ExprParser::next() {
  Token t = peek();
  if (pos_ < tokens_.size() - 1) ++pos_;
  return t;
}

bool ExprParser::at_punct(std::string_view p) const {
  return peek().type == Token::Type::Punct && peek().text == p;
}

bool ExprParser::at_ident(std::string_view word) const {
  return peek().type == Token::Type::Ident && peek().text == word;
}

bool ExprParser::accept_punct(std::string_view p) {
  if (!at_punct(p)) return false;
  next();
  return true;
}

void ExprParser::expect_punct(std::string_view p) {
  if (!accept_punct(p)) {
    const Token& t = peek();
    fail("expected '" + std::string(p) + "' but found " +
         (t.type == Token::Type::End ? std::string("end of input") : "'" + t.text + "'"));
  }
}

std::string ExprParser::expect_ident() {
  if (peek().type != Token::Type::Ident) {
    const Token& t = peek();
    fail("expected identifier but found " +
         (t.type == Token::Type::End ? std::string("end of input") : "'" + t.text + "'"));
  }
  return next().text;
}

void ExprParser::fail(const std::string& message) const {
  throw ParseError(peek().line, peek().column, message);
}

StarExpr ExprParser::parse_expr() {
  StarExpr acc = parse_term();
  while (at_punct("+") || at_punct("-")) {
    const bool plus = next().text == "+";
    StarExpr rhs = parse_term();
    acc = plus ? StarExpr::sum(std::move(acc), std::move(rhs))
               : StarExpr::difference(std::move(acc), std::move(rhs));
  }
  return acc;
}

StarExpr ExprParser::parse_term() {
  StarExpr acc = parse_unary();
  while (accept_punct("*")) acc = StarExpr::product(std::move(acc), parse_unary());
  return acc;
}

StarExpr ExprParser::parse_unary() {
  if (accept_punct("-")) return StarExpr::negation(parse_unary());
  return parse_primary();
}

StarExpr ExprParser::parse_primary() {
  const Token& t = peek();
  switch (t.type) {
    case Token::Type::Unit:
      next();
      return StarExpr::unit();
    case Token::Type::Number:
    case Token::Type::Imaginary: {
      const bool imaginary = t.type == Token::Type::Imaginary;
      GaussRational v;
      try {
        v = GaussRational::from_decimal(t.text, imaginary);
      } catch (const std::invalid_argument& err) {
        fail(err.what());
      }
      next();
      if (v.is_one()) return StarExpr::unit();
      return StarExpr::scalar(std::move(v));
    }
    case Token::Type::Ident: {
      if (t.text == "adj" && peek(1).type == Token::Type::Punct && peek(1).text == "(") {
        next();
        next();
        StarExpr inner = parse_expr();
        expect_punct(")");
        return StarExpr::adjoint(std::move(inner));
      }
      return StarExpr::generator(next().text);
    }
    case Token::Type::Punct:
      if (accept_punct("(")) {
        StarExpr inner = parse_expr();
        expect_punct(")");
        return inner;
      }
      if (accept_punct("[")) {
        StarExpr::Rows rows;
        do {
          expect_punct("[");
          rows.emplace_back();
          do {
            rows.back().push_back(parse_expr());
          } while (accept_punct(","));
          expect_punct("]");
        } while (accept_punct(","));
        expect_punct("]");
        return StarExpr::block(std::move(rows));
      }
      fail("unexpected '" + t.text + "' in expression");
    case Token::Type::End:
      fail("unexpected end of input in expression");
  }
  fail("unexpected token");
}

StarExpr parse_expression(std::string_view text) {
  ExprParser p(text);
  StarExpr e = p.parse_expr();
  if (!p.at_end()) p.fail("unexpected '" + p.peek().text + "' after expression");
  return e;
}

}  // namespace nccell
