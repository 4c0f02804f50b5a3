#include "nccell/gauss_rational.hpp"

#include <cctype>
#include <stdexcept>

namespace nccell {

GaussRational::GaussRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
  re_.canonicalize();
  im_.canonicalize();
}

GaussRational GaussRational::from_decimal(std::string_view text, bool imaginary) {
  mpz_class digits = 0;
  long scale = 0;
  bool seen_point = false;
  bool seen_digit = false;
  std::size_t i = 0;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits = digits * 10 + (c - '0');
      if (seen_point) ++scale;
      seen_digit = true;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!seen_digit) throw std::invalid_argument("malformed decimal literal '" + std::string(text) + "'");
  if (i < text.size()) {
    if (text[i] != 'e' && text[i] != 'E') {
      throw std::invalid_argument("malformed decimal literal '" + std::string(text) + "'");
    }
    const std::string exponent(text.substr(i + 1));
    std::size_t used = 0;
    long e = 0;
    try {
      e = std::stol(exponent, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != exponent.size()) {
      throw std::invalid_argument("malformed decimal exponent in '" + std::string(text) + "'");
    }
    scale -= e;
  }
  mpq_class value(digits);
  mpz_class ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
  if (scale > 0) value /= mpq_class(ten_pow);
  if (scale < 0) value *= mpq_class(ten_pow);
  value.canonicalize();
  return imaginary ? GaussRational(0, value) : GaussRational(value, 0);
}

GaussRational& GaussRational::operator+=(const GaussRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussRational& GaussRational::operator-=(const GaussRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussRational& GaussRational::operator*=(const GaussRational& o) {
  mpq_class re = re_ * o.re_ - im_ * o.im_;
  mpq_class im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

GaussRational& GaussRational::operator/=(const GaussRational& o) {
  if (o.is_zero()) throw std::domain_error("GaussRational: division by zero");
  const mpq_class norm = o.re_ * o.re_ + o.im_ * o.im_;
  return *this *= GaussRational(o.re_ / norm, -o.im_ / norm);
}

std::string GaussRational::to_string() const {
  if (is_real()) return re_.get_str();
  if (sgn(re_) == 0) return im_.get_str() + "i";
  const bool neg = sgn(im_) < 0;
  return "(" + re_.get_str() + (neg ? " - " : " + ") + mpq_class(abs(im_)).get_str() + "i)";
}

std::string exact_decimal(const mpq_class& value) {
  if (sgn(value) < 0) return {};
  mpz_class den = value.get_den();
  long twos = 0;
  long fives = 0;
  while (mpz_divisible_ui_p(den.get_mpz_t(), 2)) {
    den /= 2;
    ++twos;
  }
  while (mpz_divisible_ui_p(den.get_mpz_t(), 5)) {
    den /= 5;
    ++fives;
  }
  if (den != 1) return {};
  const long places = std::max(twos, fives);
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(places));
  const mpz_class scaled = value.get_num() * scale / value.get_den();
  std::string digits = scaled.get_str();
  if (places == 0) return digits;
  if (static_cast<long>(digits.size()) <= places) digits.insert(0, places - digits.size() + 1, '0');
  digits.insert(digits.size() - places, ".");
  return digits;
}

}  // namespace nccell
