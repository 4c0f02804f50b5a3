#include "nccell/toeplitz.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace nccell::toep {

namespace {

CMat broadcast(const CMat& c, Index block) {
  if (c.rows() == block) return c;
  if (c.rows() == 1) return c(0, 0) * linalg::identity(block);
  throw std::invalid_argument("Laurent polynomial block sizes differ");
}

Index common_block(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.block() == b.block()) return a.block();
  if (a.block() == 1) return b.block();
  if (b.block() == 1) return a.block();
  throw std::invalid_argument("Laurent polynomial block sizes differ: " + std::to_string(a.block()) + " vs " +
                              std::to_string(b.block()));
}

}  // namespace

LaurentPoly LaurentPoly::constant(const CMat& c) { return monomial(c, 0); }

LaurentPoly LaurentPoly::monomial(const CMat& c, int exponent) {
  if (c.rows() != c.cols() || c.rows() == 0) throw std::invalid_argument("coefficient must be square");
  LaurentPoly p(c.rows());
  p.set(exponent, c);
  return p;
}

LaurentPoly LaurentPoly::scalar_monomial(Complex c, int exponent, Index block) {
  return monomial(c * linalg::identity(block), exponent);
}

LaurentPoly LaurentPoly::bott(Index r, Index s) {
  if (s < 1 || r < 0 || r > s) throw std::invalid_argument("bott(r, s) needs 0 <= r <= s, s >= 1");
  CMat p = linalg::zeros(s, s);
  for (Index i = 0; i < r; ++i) p(i, i) = 1;
  LaurentPoly out(s);
  out.set(0, linalg::identity(s) - p);
  out.set(1, p);
  return out;
}

CMat LaurentPoly::coeff(int exponent) const {
  const auto it = coeffs_.find(exponent);
  return it == coeffs_.end() ? linalg::zeros(block_, block_) : it->second;
}

void LaurentPoly::set(int exponent, const CMat& c) {
  if (c.rows() != block_ || c.cols() != block_) throw std::invalid_argument("coefficient has the wrong block size");
  if (c.isZero(0)) {
    coeffs_.erase(exponent);
  } else {
    coeffs_[exponent] = c;
  }
}

int LaurentPoly::max_degree() const { return coeffs_.empty() ? 0 : coeffs_.rbegin()->first; }
int LaurentPoly::min_degree() const { return coeffs_.empty() ? 0 : coeffs_.begin()->first; }
int LaurentPoly::band() const { return std::max(std::abs(max_degree()), std::abs(min_degree())); }

CMat LaurentPoly::eval(Complex z) const {
  CMat out = linalg::zeros(block_, block_);
  for (const auto& [n, c] : coeffs_) out += std::pow(z, n) * c;
  return out;
}

namespace {

Complex circle_point(int j, int samples) {
  return std::polar(1.0, 2 * std::numbers::pi * j / samples);
}

}  // namespace

double LaurentPoly::sup_norm(int samples) const {
  double best = 0;
  for (int j = 0; j < samples; ++j) best = std::max(best, linalg::op_norm(eval(circle_point(j, samples))));
  return best;
}

double LaurentPoly::unitarity_defect(int samples) const {
  const CMat one = linalg::identity(block_);
  double worst = 0;
  for (int j = 0; j < samples; ++j) {
    const CMat v = eval(circle_point(j, samples));
    worst = std::max({worst, linalg::op_norm(v.adjoint() * v - one), linalg::op_norm(v * v.adjoint() - one)});
  }
  return worst;
}

LaurentPoly LaurentPoly::adjoint() const {
  LaurentPoly out(block_);
  for (const auto& [n, c] : coeffs_) out.set(-n, c.adjoint());
  return out;
}

std::string LaurentPoly::to_string() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [n, c] : coeffs_) {
    if (!first) os << " + ";
    first = false;
    if (block_ == 1) {
      os << "(" << c(0, 0).real() << (c(0, 0).imag() < 0 ? "" : "+") << c(0, 0).imag() << "i)";
    } else {
      os << "[" << block_ << "x" << block_ << "]";
    }
    if (n != 0) os << "*z^" << n;
  }
  return os.str();
}

LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
  const Index s = common_block(a, b);
  LaurentPoly out(s);
  for (const auto& [n, c] : a.coeffs_) out.coeffs_[n] = broadcast(c, s);
  for (const auto& [n, c] : b.coeffs_) {
    const auto it = out.coeffs_.find(n);
    out.set(n, (it == out.coeffs_.end() ? linalg::zeros(s, s) : it->second) + broadcast(c, s));
  }
  return out;
}

LaurentPoly operator*(Complex c, const LaurentPoly& a) {
  LaurentPoly out(a.block_);
  for (const auto& [n, m] : a.coeffs_) out.set(n, c * m);
  return out;
}

LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return a + Complex(-1) * b; }

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  const Index s = common_block(a, b);
  std::map<int, CMat> acc;
  for (const auto& [n, c] : a.coeffs_) {
    for (const auto& [m, d] : b.coeffs_) {
      const CMat term = broadcast(c, s) * broadcast(d, s);
      const auto [it, fresh] = acc.emplace(n + m, term);
      if (!fresh) it->second += term;
    }
  }
  LaurentPoly out(s);
  for (const auto& [n, c] : acc) out.set(n, c);
  return out;
}

// ---- symbol parser ----

namespace {

class SymbolParser {
 public:
  explicit SymbolParser(std::string_view text) : text_(text) {}

  LaurentPoly parse() {
    LaurentPoly p = expr();
    skip();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("symbol: " + what + " at column " + std::to_string(pos_ + 1));
  }
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  bool eat_word(std::string_view w) {
    skip();
    if (text_.substr(pos_, w.size()) != w) return false;
    const std::size_t end = pos_ + w.size();
    if (end < text_.size() && std::isalnum(static_cast<unsigned char>(text_[end]))) return false;
    pos_ = end;
    return true;
  }

  LaurentPoly expr() {
    LaurentPoly acc(1);
    bool negate = false;
    if (eat('-')) negate = true;
    else eat('+');
    acc = negate ? Complex(-1) * term() : term();
    for (;;) {
      if (eat('+')) acc = acc + term();
      else if (eat('-')) acc = acc - term();
      else return acc;
    }
  }

  LaurentPoly term() {
    LaurentPoly acc = factor();
    while (eat('*')) acc = acc * factor();
    return acc;
  }

  long integer() {
    skip();
    const std::size_t start = pos_;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    const std::string digits(text_.substr(start, pos_ - start));
    if (digits.empty() || digits == "-" || digits == "+") fail("expected an integer");
    return std::stol(digits);
  }

  LaurentPoly factor() {
    skip();
    if (eat('(')) {
      LaurentPoly inner = expr();
      if (!eat(')')) fail("expected ')'");
      return inner;
    }
    if (eat_word("bott")) {
      if (!eat('(')) fail("expected '(' after bott");
      const long r = integer();
      if (!eat(',')) fail("expected ','");
      const long s = integer();
      if (!eat(')')) fail("expected ')'");
      return LaurentPoly::bott(r, s);
    }
    if (eat_word("z")) {
      int e = 1;
      if (eat('^')) e = static_cast<int>(integer());
      return LaurentPoly::scalar_monomial(1.0, e);
    }
    if (eat_word("i")) return LaurentPoly::scalar_monomial(Complex(0, 1), 0);
    if (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) {
      std::size_t used = 0;
      double v = 0;
      try {
        v = std::stod(std::string(text_.substr(pos_)), &used);
      } catch (const std::exception&) {
        fail("bad number");
      }
      pos_ += used;
      if (pos_ < text_.size() && text_[pos_] == 'i') {
        ++pos_;
        return LaurentPoly::scalar_monomial(Complex(0, v), 0);
      }
      return LaurentPoly::scalar_monomial(v, 0);
    }
    if (pos_ >= text_.size()) fail("unexpected end of input");
    fail("unexpected '" + std::string(1, text_[pos_]) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

LaurentPoly parse_symbol(std::string_view text) { return SymbolParser(text).parse(); }

// ---- ToepOp ----

ToepOp::ToepOp(LaurentPoly symbol, CMat correction) : symbol_(std::move(symbol)), correction_(std::move(correction)) {
  const Index s = symbol_.block();
  if (correction_.size() == 0) correction_ = CMat(0, 0);
  if (correction_.rows() != correction_.cols() || correction_.rows() % s != 0) {
    throw std::invalid_argument("correction must be square with a whole number of blocks");
  }
}

CMat ToepOp::dense(Index n) const { return dense(n, n); }

CMat ToepOp::dense(Index rows, Index cols) const {
  const Index s = block();
  CMat out = linalg::zeros(rows * s, cols * s);
  for (const auto& [n, c] : symbol_.coeffs()) {
    // block (i, j) with i - j = n
    for (Index j = 0; j < cols; ++j) {
      const Index i = j + n;
      if (i < 0 || i >= rows) continue;
      out.block(i * s, j * s, s, s) = c;
    }
  }
  const Index m = corner();
  const Index r = std::min(rows, m) * s, c = std::min(cols, m) * s;
  out.topLeftCorner(r, c) += correction_.topLeftCorner(r, c);
  return out;
}

ToepOp ToepOp::with_corner(Index m) const {
  if (m < corner()) throw std::invalid_argument("with_corner cannot shrink the corner");
  const Index s = block();
  CMat c = linalg::zeros(m * s, m * s);
  c.topLeftCorner(correction_.rows(), correction_.cols()) = correction_;
  return ToepOp(symbol_, std::move(c));
}

ToepOp ToepOp::trimmed() const {
  const Index s = block();
  Index m = corner();
  while (m > 0) {
    const Index lo = (m - 1) * s;
    const Index full = m * s;
    if (!correction_.block(lo, 0, s, full).isZero(0) || !correction_.block(0, lo, full, s).isZero(0)) break;
    --m;
  }
  return ToepOp(symbol_, correction_.topLeftCorner(m * s, m * s));
}

ToepOp ToepOp::adjoint() const { return ToepOp(symbol_.adjoint(), correction_.adjoint()); }

namespace {

void require_same_block(const ToepOp& a, const ToepOp& b) {
  if (a.block() != b.block()) {
    throw std::invalid_argument("ToepOp block sizes differ: " + std::to_string(a.block()) + " vs " +
                                std::to_string(b.block()));
  }
}

}  // namespace

ToepOp operator+(const ToepOp& a, const ToepOp& b) {
  require_same_block(a, b);
  const Index m = std::max(a.corner(), b.corner());
  return ToepOp(a.symbol_ + b.symbol_, a.with_corner(m).correction_ + b.with_corner(m).correction_);
}

ToepOp operator*(Complex c, const ToepOp& a) { return ToepOp(c * a.symbol_, c * a.correction_); }

ToepOp operator-(const ToepOp& a, const ToepOp& b) { return a + Complex(-1) * b; }

ToepOp operator*(const ToepOp& a, const ToepOp& b) {
  require_same_block(a, b);
  const LaurentPoly& f = a.symbol_;
  const LaurentPoly& g = b.symbol_;
  // every Hankel and corner term of the product lives in the first m blocks
  const Index m = std::max(a.corner(), b.corner()) + std::max(0, f.max_degree()) + std::max(0, -g.min_degree());
  // and the inner sum over k stops before k = inner
  const Index inner = m + std::max(0, -f.min_degree()) + 1;
  const LaurentPoly fg = f * g;
  const CMat prod = a.dense(m, inner) * b.dense(inner, m);
  const ToepOp plain = toep(fg);
  return ToepOp(fg, prod - plain.dense(m)).trimmed();
}

ToepOp toep(const LaurentPoly& symbol) { return ToepOp(symbol, CMat(0, 0)); }

ToepOp identity_op(Index block) { return toep(LaurentPoly::constant(linalg::identity(block))); }

ToepOp ideal_op(const CMat& correction, Index block) { return ToepOp(LaurentPoly(block), correction); }

double op_norm(const ToepOp& x) {
  if (x.in_ideal()) return x.corner() == 0 ? 0.0 : linalg::op_norm(x.correction());
  if (x.corner() == 0) return x.symbol().sup_norm();
  // x*x = c + D with a constant scalar symbol c: the spectrum is {c} and
  // the spectrum of c + D on the corner
  const ToepOp y = x.adjoint() * x;
  const auto& co = y.symbol().coeffs();
  if (co.size() == 1 && co.begin()->first == 0) {
    const CMat& c0 = co.begin()->second;
    const Complex c = c0(0, 0);
    if ((c0 - c * linalg::identity(x.block())).norm() <= 1e-14 * std::abs(c)) {
      double top = c.real();
      if (y.corner() > 0) {
        const CMat d = y.dense(y.corner());
        top = std::max(top, linalg::herm_eig((d + d.adjoint()) * 0.5).values.maxCoeff());
      }
      return std::sqrt(std::max(top, 0.0));
    }
  }
  const Index n = 4 * (x.corner() + x.symbol().band()) + 16;
  return std::max(x.symbol().sup_norm(), linalg::op_norm(x.dense(n)));
}

Complex trace_ideal(const ToepOp& x) {
  if (!x.in_ideal()) throw std::invalid_argument("trace_ideal: operator has a nonzero symbol");
  return x.corner() == 0 ? Complex(0) : linalg::trace(x.correction());
}

// ---- index boundary ----

namespace {

constexpr double kUnitaryTol = 1e-8;

ToepOp drop_symbol(const ToepOp& x) { return ideal_op(x.correction(), x.block()); }

CMat hermitian(const CMat& m) { return (m + m.adjoint()) * 0.5; }

}  // namespace

IndexBoundary index_boundary_of_lift(const ToepOp& a) {
  const LaurentPoly& u = a.symbol();
  const double defect = u.unitarity_defect();
  if (!(defect <= kUnitaryTol)) {
    throw std::invalid_argument("index_boundary: symbol is not unitary on the circle (defect " +
                                std::to_string(defect) + ")");
  }
  const Index s = a.block();
  const ToepOp one = identity_op(s);
  IndexBoundary out;
  out.a = a;
  out.symbol_defect = defect;
  // 1 - u*u is zero up to the unitarity defect; only the corner survives
  const ToepOp h = drop_symbol(one - a.adjoint() * a);
  const ToepOp k = drop_symbol(one - a * a.adjoint());
  out.h1 = ideal_op(hermitian(h.correction()), s);
  out.k1 = ideal_op(hermitian(k.correction()), s);
  const CMat root = out.h1.corner() == 0 ? CMat(0, 0)
                                         : linalg::herm_funcalc(out.h1.correction(), linalg::SpectralFn::SqrtClamped);
  out.x1 = drop_symbol(a * ideal_op(root, s));
  out.corner = std::max({Index{1}, out.h1.corner(), out.k1.corner(), out.x1.corner()});
  const Index m = out.corner;
  out.rep = reps::make_rep("G2st", {{"h", out.h1.with_corner(m).correction()},
                                    {"k", out.k1.with_corner(m).correction()},
                                    {"x", out.x1.with_corner(m).correction()}});
  const double raw = (trace_ideal(out.h1) - trace_ideal(out.k1)).real();
  out.cls = static_cast<int>(std::lround(raw));
  out.drift = std::abs(raw - out.cls);
  if (out.drift > 1e-6) {
    throw std::runtime_error("index_boundary: trace difference " + std::to_string(raw) + " is not an integer");
  }
  return out;
}

IndexBoundary index_boundary(const LaurentPoly& u) { return index_boundary_of_lift(toep(u)); }

namespace {

Index nullity(const CMat& m) {
  if (m.cols() == 0) return 0;
  Eigen::JacobiSVD<CMat> svd(m);
  Index rank = 0;
  for (Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > 1e-8) ++rank;
  return m.cols() - rank;
}

Index kernel_dim(const LaurentPoly& f, Index n) {
  // columns [0, n) map into rows [0, n + maxdeg), so the truncation sees
  // every output of a vector supported in the first n blocks
  const Index rows = n + std::max(0, f.max_degree());
  return nullity(toep(f).dense(rows, n));
}

}  // namespace

int fredholm_oracle(const LaurentPoly& u, Index n) {
  const double defect = u.unitarity_defect();
  if (!(defect <= kUnitaryTol)) throw std::invalid_argument("fredholm_oracle: symbol is not unitary on the circle");
  const LaurentPoly v = u.adjoint();
  const Index n2 = n + std::max<Index>(u.band(), 8);
  const Index i1 = kernel_dim(u, n) - kernel_dim(v, n);
  const Index i2 = kernel_dim(u, n2) - kernel_dim(v, n2);
  if (i1 != i2) {
    throw std::runtime_error("fredholm_oracle: index not stabilized (" + std::to_string(i1) + " at " +
                             std::to_string(n) + ", " + std::to_string(i2) + " at " + std::to_string(n2) + ")");
  }
  return static_cast<int>(i1);
}

}  // namespace nccell::toep
