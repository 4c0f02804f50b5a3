#pragma once

// Exact noncommutative *-polynomials with Gaussian-rational coefficients.

#include "nccell/expr.hpp"
#include "nccell/gauss_rational.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nccell::sym {

struct Letter {
  std::uint32_t gen = 0;
  bool adjoint = false;
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

/// The empty word is the unit.
using Word = std::vector<Letter>;

/// Length first, then lexicographic on letters; letter order is generator
/// id, with the adjoint letter above its generator.
bool word_less(const Word& a, const Word& b);

struct WordLess {
  bool operator()(const Word& a, const Word& b) const { return word_less(a, b); }
};

Word adjoint_word(const Word& w);

/// Generator names; the id of a name is its position, which also fixes the
/// letter order used by rewriting.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> names);

  std::optional<std::uint32_t> find(std::string_view name) const;
  std::uint32_t id(std::string_view name) const;  // throws on unknown names
  const std::string& name(std::uint32_t id) const { return names_.at(id); }
  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  std::vector<std::string> names_;
};

std::string word_to_string(const Word& w, const Alphabet& alphabet);

class NCPoly {
 public:
  using Terms = std::map<Word, GaussRational, WordLess>;

  NCPoly() = default;
  static NCPoly constant(const GaussRational& c);
  static NCPoly monomial(Word w, const GaussRational& c = 1);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  GaussRational coefficient(const Word& w) const;

  /// Adds c*w, erasing the entry when it cancels.
  void add_term(const Word& w, const GaussRational& c);

  /// Largest word; precondition: nonzero.
  const Word& leading_word() const;

  NCPoly adjoint() const;

  NCPoly& operator+=(const NCPoly& o);
  NCPoly& operator-=(const NCPoly& o);
  friend NCPoly operator+(NCPoly a, const NCPoly& b) { return a += b; }
  friend NCPoly operator-(NCPoly a, const NCPoly& b) { return a -= b; }
  friend NCPoly operator*(const NCPoly& a, const NCPoly& b);
  friend NCPoly operator*(const GaussRational& c, const NCPoly& a);
  NCPoly operator-() const;
  friend bool operator==(const NCPoly&, const NCPoly&) = default;

  std::string to_string(const Alphabet& alphabet) const;

 private:
  Terms terms_;
};

/// Rectangular array of NCPoly, the carrier of block identities.
class PolyMatrix {
 public:
  PolyMatrix() : PolyMatrix(1, 1) {}
  PolyMatrix(std::size_t rows, std::size_t cols);
  explicit PolyMatrix(NCPoly scalar);
  static PolyMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  NCPoly& at(std::size_t i, std::size_t j) { return entries_.at(i * cols_ + j); }
  const NCPoly& at(std::size_t i, std::size_t j) const { return entries_.at(i * cols_ + j); }
  bool is_zero() const;

  PolyMatrix adjoint() const;
  friend PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b);
  friend PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b);
  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);
  friend bool operator==(const PolyMatrix&, const PolyMatrix&) = default;

  std::string to_string(const Alphabet& alphabet) const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<NCPoly> entries_;
};

/// Converts a block-free expression. Throws std::invalid_argument on names
/// outside the alphabet and on block nodes.
NCPoly to_ncpoly(const StarExpr& e, const Alphabet& alphabet);

/// Flattens blocks first; scalar multiples of the unit become 1x1.
PolyMatrix to_poly_matrix(const StarExpr& e, const Alphabet& alphabet);

}  // namespace nccell::sym
