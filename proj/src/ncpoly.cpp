#include "nccell/ncpoly.hpp"

#include <algorithm>
#include <stdexcept>

namespace nccell::sym {

bool word_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

Word adjoint_word(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (auto& letter : out) letter.adjoint = !letter.adjoint;
  return out;
}

Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
  for (std::size_t i = 0; i < names_.size(); ++i)
    for (std::size_t j = i + 1; j < names_.size(); ++j)
      if (names_[i] == names_[j]) throw std::invalid_argument("alphabet: duplicate generator " + names_[i]);
}

std::optional<std::uint32_t> Alphabet::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return static_cast<std::uint32_t>(i);
  return std::nullopt;
}

std::uint32_t Alphabet::id(std::string_view name) const {
  if (auto found = find(name)) return *found;
  throw std::invalid_argument("unknown generator " + std::string(name));
}

std::string word_to_string(const Word& w, const Alphabet& alphabet) {
  if (w.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += "*";
    const std::string& n = alphabet.name(w[i].gen);
    out += w[i].adjoint ? "adj(" + n + ")" : n;
  }
  return out;
}

NCPoly NCPoly::constant(const GaussRational& c) { return monomial({}, c); }

NCPoly NCPoly::monomial(Word w, const GaussRational& c) {
  NCPoly p;
  p.add_term(w, c);
  return p;
}

GaussRational NCPoly::coefficient(const Word& w) const {
  const auto it = terms_.find(w);
  return it == terms_.end() ? GaussRational() : it->second;
}

void NCPoly::add_term(const Word& w, const GaussRational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

const Word& NCPoly::leading_word() const {
  if (terms_.empty()) throw std::logic_error("leading_word of zero polynomial");
  return terms_.rbegin()->first;
}

NCPoly NCPoly::adjoint() const {
  NCPoly out;
  for (const auto& [w, c] : terms_) out.add_term(adjoint_word(w), c.conj());
  return out;
}

NCPoly& NCPoly::operator+=(const NCPoly& o) {
  for (const auto& [w, c] : o.terms_) add_term(w, c);
  return *this;
}

NCPoly& NCPoly::operator-=(const NCPoly& o) {
  for (const auto& [w, c] : o.terms_) add_term(w, -c);
  return *this;
}

NCPoly operator*(const NCPoly& a, const NCPoly& b) {
  NCPoly out;
  for (const auto& [wa, ca] : a.terms_)
    for (const auto& [wb, cb] : b.terms_) {
      Word w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      out.add_term(w, ca * cb);
    }
  return out;
}

NCPoly operator*(const GaussRational& c, const NCPoly& a) {
  NCPoly out;
  for (const auto& [w, ca] : a.terms_) out.add_term(w, c * ca);
  return out;
}

NCPoly NCPoly::operator-() const { return GaussRational(-1) * *this; }

std::string NCPoly::to_string(const Alphabet& alphabet) const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  // Print largest words first, the way rewriting sees them.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [w, c] = *it;
    std::string coef;
    bool negative = false;
    if (c.is_real()) {
      negative = sgn(c.re()) < 0;
      coef = mpq_class(abs(c.re())).get_str();
    } else {
      coef = c.to_string();
    }
    if (!first) out += negative ? " - " : " + ";
    else if (negative) out += "-";
    first = false;
    const bool unit_coef = coef == "1";
    if (w.empty()) {
      out += coef;
    } else {
      if (!unit_coef) out += coef + "*";
      out += word_to_string(w, alphabet);
    }
  }
  return out;
}

PolyMatrix::PolyMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {}

PolyMatrix::PolyMatrix(NCPoly scalar) : rows_(1), cols_(1), entries_{std::move(scalar)} {}

PolyMatrix PolyMatrix::identity(std::size_t n) {
  PolyMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = NCPoly::constant(1);
  return m;
}

bool PolyMatrix::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const NCPoly& p) { return p.is_zero(); });
}

PolyMatrix PolyMatrix::adjoint() const {
  PolyMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out.at(j, i) = at(i, j).adjoint();
  return out;
}

PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("PolyMatrix: shape mismatch in sum");
  PolyMatrix out = a;
  for (std::size_t i = 0; i < out.entries_.size(); ++i) out.entries_[i] += b.entries_[i];
  return out;
}

PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("PolyMatrix: shape mismatch in difference");
  PolyMatrix out = a;
  for (std::size_t i = 0; i < out.entries_.size(); ++i) out.entries_[i] -= b.entries_[i];
  return out;
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("PolyMatrix: shape mismatch in product");
  PolyMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t j = 0; j < b.cols_; ++j)
      for (std::size_t k = 0; k < a.cols_; ++k) out.at(i, j) += a.at(i, k) * b.at(k, j);
  return out;
}

std::string PolyMatrix::to_string(const Alphabet& alphabet) const {
  if (rows_ == 1 && cols_ == 1) return entries_.front().to_string(alphabet);
  std::string out = "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i) out += ", ";
    out += "[";
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) out += ", ";
      out += at(i, j).to_string(alphabet);
    }
    out += "]";
  }
  return out + "]";
}

NCPoly to_ncpoly(const StarExpr& e, const Alphabet& alphabet) {
  using K = StarExpr::Kind;
  switch (e.kind()) {
    case K::Generator:
      return NCPoly::monomial({Letter{alphabet.id(e.name()), false}});
    case K::Unit:
      return NCPoly::constant(1);
    case K::Scalar:
      return NCPoly::constant(e.value());
    case K::Sum:
      return to_ncpoly(e.lhs(), alphabet) + to_ncpoly(e.rhs(), alphabet);
    case K::Difference:
      return to_ncpoly(e.lhs(), alphabet) - to_ncpoly(e.rhs(), alphabet);
    case K::Product:
      return to_ncpoly(e.lhs(), alphabet) * to_ncpoly(e.rhs(), alphabet);
    case K::Negation:
      return -to_ncpoly(e.operand(), alphabet);
    case K::Adjoint:
      return to_ncpoly(e.operand(), alphabet).adjoint();
    case K::Block:
      throw std::invalid_argument("to_ncpoly: block expression; expand blocks first");
  }
  throw std::logic_error("to_ncpoly: unknown expression kind");
}

PolyMatrix to_poly_matrix(const StarExpr& e, const Alphabet& alphabet) {
  const ExprMatrix m = expand_blocks(e);
  PolyMatrix out(m.rows, m.cols);
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) out.at(i, j) = to_ncpoly(m.at(i, j), alphabet);
  return out;
}

}  // namespace nccell::sym
