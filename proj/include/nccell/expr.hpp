#pragma once

// Formal *-expressions over named generators, the shared tokenizer, and the
// expression grammar used by presentation, identity and symbol sources.

#include "nccell/gauss_rational.hpp"

#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nccell {

class StarExpr {
 public:
  enum class Kind { Generator, Unit, Scalar, Sum, Difference, Product, Negation, Adjoint, Block };
  using Rows = std::vector<std::vector<StarExpr>>;

  StarExpr();  // the scalar 0

  static StarExpr generator(std::string name);
  static StarExpr unit();
  static StarExpr scalar(GaussRational value);
  static StarExpr sum(StarExpr a, StarExpr b);
  static StarExpr difference(StarExpr a, StarExpr b);
  static StarExpr product(StarExpr a, StarExpr b);
  static StarExpr negation(StarExpr a);
  static StarExpr adjoint(StarExpr a);
  static StarExpr block(Rows rows);

  Kind kind() const;
  const std::string& name() const;       // Generator
  const GaussRational& value() const;    // Scalar
  const StarExpr& lhs() const;           // Sum, Difference, Product
  const StarExpr& rhs() const;           // Sum, Difference, Product
  const StarExpr& operand() const;       // Negation, Adjoint
  const Rows& rows() const;              // Block

  bool is_zero_literal() const;
  bool is_unit() const { return kind() == Kind::Unit; }

  /// Canonical text; parse_expression(to_string()) rebuilds an equal tree.
  std::string to_string() const;

  friend bool operator==(const StarExpr& a, const StarExpr& b);

 private:
  struct Node;
  static std::shared_ptr<Node> make_node(Kind kind);
  explicit StarExpr(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

// Zero-folding constructors used when expressions are generated rather than
// parsed: sums with 0 and products with 0 or 1 collapse.
StarExpr add(const StarExpr& a, const StarExpr& b);
StarExpr subtract(const StarExpr& a, const StarExpr& b);
StarExpr multiply(const StarExpr& a, const StarExpr& b);
StarExpr negate(const StarExpr& a);

void collect_generators(const StarExpr& e, std::set<std::string>& out);
bool contains_unit(const StarExpr& e);
bool contains_block(const StarExpr& e);

/// Replaces generator leaves by the mapped expressions; others are kept.
StarExpr substitute(const StarExpr& e, const std::map<std::string, StarExpr>& images);

/// Pushes adjoints to the generator leaves: adj(uv) = adj(v)adj(u),
/// adj(adj(g)) = g, adj of scalars conjugates. Blocks are transposed.
StarExpr normalize_adjoints(const StarExpr& e);

class ShapeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A block expression flattened to a rows x cols array of block-free
/// entries. `broadcast` marks scalar multiples of the unit, which adapt to
/// any square shape they are combined with.
struct ExprMatrix {
  std::size_t rows = 1;
  std::size_t cols = 1;
  std::vector<StarExpr> entries;
  bool broadcast = false;

  const StarExpr& at(std::size_t i, std::size_t j) const { return entries[i * cols + j]; }
  StarExpr& at(std::size_t i, std::size_t j) { return entries[i * cols + j]; }
  /// Materializes a broadcast value as an n x n diagonal.
  ExprMatrix resized(std::size_t n) const;
};

/// Flattens nested blocks and pushes sums, products and adjoints through
/// them. Throws ShapeError on inconsistent shapes.
ExprMatrix expand_blocks(const StarExpr& e);

// ---------------------------------------------------------------------------
// Tokenizer and expression parser.

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& message);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

struct Token {
  enum class Type { Ident, Number, Imaginary, Unit, Punct, End };
  Type type = Type::End;
  std::string text;
  int line = 1;
  int column = 1;
};

/// Splits source text into tokens. `//` and `#` start comments; "𝟙" is
/// accepted as the unit.
std::vector<Token> tokenize(std::string_view text);

class ExprParser {
 public:
  explicit ExprParser(std::string_view text);
  explicit ExprParser(std::vector<Token> tokens);

  StarExpr parse_expr();

  const Token& peek(std::size_t ahead = 0) const;
  Token next();
  bool at_end() const { return peek().type == Token::Type::End; }
  bool at_punct(std::string_view p) const;
  bool at_ident(std::string_view word) const;
  bool accept_punct(std::string_view p);
  void expect_punct(std::string_view p);
  std::string expect_ident();
  [[noreturn]] void fail(const std::string& message) const;

 private:
  StarExpr parse_term();
  StarExpr parse_unary();
  StarExpr parse_primary();

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

/// Parses one complete expression; trailing input is an error.
StarExpr parse_expression(std::string_view text);

}  // namespace nccell
