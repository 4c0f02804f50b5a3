#pragma once

// Toeplitz operators with matrix Laurent-polynomial symbols plus finite-rank
// corrections in the top-left corner. Arithmetic is exact: a product is
// again symbol + corner, computed on a corner large enough to hold every
// Hankel term.

#include "nccell/linalg.hpp"
#include "nccell/rep.hpp"

#include <map>
#include <string>
#include <string_view>

namespace nccell::toep {

using linalg::CMat;
using linalg::Complex;
using linalg::Index;

class LaurentPoly {
 public:
  LaurentPoly() = default;
  explicit LaurentPoly(Index block) : block_(block) {}

  static LaurentPoly constant(const CMat& c);
  static LaurentPoly monomial(const CMat& c, int exponent);
  static LaurentPoly scalar_monomial(Complex c, int exponent, Index block = 1);
  /// (1 - P) + zP with P = diag(1, ..., 1, 0, ..., 0) of rank r in block s.
  static LaurentPoly bott(Index r, Index s);

  Index block() const { return block_; }
  const std::map<int, CMat>& coeffs() const { return coeffs_; }
  /// Zero block when the exponent is absent.
  CMat coeff(int exponent) const;
  void set(int exponent, const CMat& c);

  bool is_zero() const { return coeffs_.empty(); }
  int max_degree() const;  // 0 for the zero polynomial
  int min_degree() const;
  /// max(|max_degree|, |min_degree|)
  int band() const;

  CMat eval(Complex z) const;
  /// max over n evenly spaced circle points of ||f(z)||
  double sup_norm(int samples = 256) const;
  /// max over n circle points of ||f*f - 1|| and ||ff* - 1||
  double unitarity_defect(int samples = 256) const;

  LaurentPoly adjoint() const;
  std::string to_string() const;

  // 1x1 operands broadcast as scalar multiples of the identity
  friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator*(Complex c, const LaurentPoly& a);

 private:
  Index block_ = 1;
  std::map<int, CMat> coeffs_;  // exact zeros are dropped
};

/// Grammar: sum of products of numbers, imaginary literals (2i, i), z,
/// z^k, bott(r, s) and parenthesized sums.
LaurentPoly parse_symbol(std::string_view text);

class ToepOp {
 public:
  ToepOp() = default;
  ToepOp(LaurentPoly symbol, CMat correction);

  const LaurentPoly& symbol() const { return symbol_; }
  const CMat& correction() const { return correction_; }
  Index block() const { return symbol_.block(); }
  Index corner() const { return correction_.rows() / symbol_.block(); }

  /// Top-left n x n blocks of the operator.
  CMat dense(Index n) const;
  /// Rows [0, rows) and columns [0, cols), counted in blocks.
  CMat dense(Index rows, Index cols) const;
  /// Same operator with the corner padded to m blocks.
  ToepOp with_corner(Index m) const;
  /// Drops trailing zero rows and columns of the corner.
  ToepOp trimmed() const;

  bool in_ideal() const { return symbol_.is_zero(); }
  ToepOp adjoint() const;

  friend ToepOp operator+(const ToepOp& a, const ToepOp& b);
  friend ToepOp operator-(const ToepOp& a, const ToepOp& b);
  friend ToepOp operator*(const ToepOp& a, const ToepOp& b);
  friend ToepOp operator*(Complex c, const ToepOp& a);

 private:
  LaurentPoly symbol_;
  CMat correction_;
};

ToepOp toep(const LaurentPoly& symbol);
ToepOp identity_op(Index block);
ToepOp ideal_op(const CMat& correction, Index block);
inline ToepOp mul(const ToepOp& a, const ToepOp& b) { return a * b; }
inline const LaurentPoly& quotient_symbol(const ToepOp& x) { return x.symbol(); }
/// Norm of the symbol for pure Toeplitz operators; for a nonzero correction
/// the norm of a truncation large enough to contain it plus the symbol norm
/// bound, which is only an estimate.
double op_norm(const ToepOp& x);
/// Trace of the correction; throws if the symbol is nonzero.
Complex trace_ideal(const ToepOp& x);

struct IndexBoundary {
  ToepOp a, h1, k1, x1;
  reps::Rep rep;        // G2st images compressed to the common corner
  int cls = 0;          // round(Re(tr h1 - tr k1))
  double drift = 0;     // distance of the trace difference from cls
  double symbol_defect = 0;  // unitarity defect dropped from h1, k1
  Index corner = 0;
};

/// h1 = 1 - a*a, k1 = 1 - aa*, x1 = a sqrt(h1) for a = toep(u). Throws
/// std::invalid_argument when u is not unitary on the circle within 1e-8 or
/// when the drift exceeds 1e-6.
IndexBoundary index_boundary(const LaurentPoly& u);
/// Same, for an arbitrary lift a of a unitary symbol with ||a|| <= 1.
IndexBoundary index_boundary_of_lift(const ToepOp& a);

/// dim ker - dim coker from rectangular truncations at n and
/// n + max(band, 8) blocks; throws std::runtime_error when they disagree.
int fredholm_oracle(const LaurentPoly& u, Index n = 32);

}  // namespace nccell::toep
