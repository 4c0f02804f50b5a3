#pragma once

#include <gmpxx.h>

#include <complex>
#include <string>
#include <string_view>

namespace nccell {

/// Exact complex rational re + im*i.
class GaussRational {
 public:
  GaussRational() = default;
  GaussRational(long value) : re_(value) {}  // NOLINT(google-explicit-constructor)
  GaussRational(mpq_class re, mpq_class im = 0);

  /// Parses an unsigned decimal literal such as "3", "0.25" or "12.5e-1".
  static GaussRational from_decimal(std::string_view text, bool imaginary = false);

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_one() const { return re_ == 1 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  GaussRational conj() const { return {re_, -im_}; }
  GaussRational operator-() const { return {-re_, -im_}; }
  GaussRational& operator+=(const GaussRational& o);
  GaussRational& operator-=(const GaussRational& o);
  GaussRational& operator*=(const GaussRational& o);
  GaussRational& operator/=(const GaussRational& o);

  friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
  friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
  friend GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
  friend GaussRational operator/(GaussRational a, const GaussRational& b) { return a /= b; }
  friend bool operator==(const GaussRational& a, const GaussRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

  /// Fraction form, e.g. "1/2", "(1/2 - 3i)".
  std::string to_string() const;

 private:
  mpq_class re_ = 0;
  mpq_class im_ = 0;
};

/// Exact decimal for a nonnegative rational with a terminating expansion;
/// returns empty when the expansion does not terminate.
std::string exact_decimal(const mpq_class& value);

}  // namespace nccell
