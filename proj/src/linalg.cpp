#include "nccell/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace nccell::linalg {
namespace {

enum Stream : std::uint64_t {
  kUnitaryStream = 0x756e69746172ULL,
  kProjectionStream = 0x70726f6aULL,
  kContractionStream = 0x636f6e74ULL,
};

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

CMat unitary_from(Index d, Rng& rng) {
  if (d == 0) return CMat(0, 0);
  const CMat g = random_ginibre(d, d, rng);
  Eigen::HouseholderQR<CMat> qr(g);
  CMat q = qr.householderQ();
  const CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix column phases so the distribution is Haar.
  for (Index j = 0; j < d; ++j) {
    const Complex rjj = r(j, j);
    const double mag = std::abs(rjj);
    if (mag > 0) q.col(j) *= rjj / mag;
  }
  return q;
}

CMat hermitian_part(const CMat& m) { return (m + m.adjoint()) * 0.5; }

}  // namespace

double op_norm(const CMat& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMat> svd(m);
  return svd.singularValues()(0);
}

double hermitian_defect(const CMat& m) {
  if (m.size() == 0) return 0.0;
  return op_norm(m - m.adjoint()) / std::max(1.0, op_norm(m));
}

HermEig herm_eig(const CMat& h) {
  if (h.rows() != h.cols()) throw std::invalid_argument("herm_eig: matrix is not square");
  require_finite(h, "herm_eig");
  if (hermitian_defect(h) > kHermitianTol) {
    throw std::domain_error("herm_eig: matrix is not self-adjoint (defect " +
                            std::to_string(hermitian_defect(h)) + ")");
  }
  if (h.rows() == 0) return {RVec(0), CMat(0, 0)};
  Eigen::SelfAdjointEigenSolver<CMat> solver(hermitian_part(h));
  if (solver.info() != Eigen::Success) throw std::runtime_error("herm_eig: solver did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

Complex apply_spectral(SpectralFn f, double t) {
  switch (f) {
    case SpectralFn::SqrtClamped:
      if (t < -kSqrtClampWindow) {
        throw std::domain_error("sqrt_clamped: eigenvalue " + std::to_string(t) +
                                " below clamping window");
      }
      return std::sqrt(std::max(t, 0.0));
    case SpectralFn::PosPart:
      return std::max(t, 0.0);
    case SpectralFn::Exp2PiI:
      return std::polar(1.0, 2.0 * std::numbers::pi * t);
    case SpectralFn::InvSqrtShifted:
      return 1.0 / std::sqrt(1.0 + std::max(t - 1.0, 0.0));
  }
  throw std::logic_error("apply_spectral: unknown function");
}

CMat herm_funcalc(const CMat& h, SpectralFn f) {
  const HermEig eig = herm_eig(h);
  Eigen::VectorXcd fvals(eig.values.size());
  for (Index i = 0; i < eig.values.size(); ++i) fvals(i) = apply_spectral(f, eig.values(i));
  CMat out = eig.vectors * fvals.asDiagonal() * eig.vectors.adjoint();
  if (f != SpectralFn::Exp2PiI) out = hermitian_part(out);
  return out;
}

CMat identity(Index d) { return CMat::Identity(d, d); }

CMat zeros(Index rows, Index cols) { return CMat::Zero(rows, cols); }

CMat matrix_unit(Index n, Index i, Index j) {
  if (i < 0 || j < 0 || i >= n || j >= n) throw std::out_of_range("matrix_unit: index out of range");
  CMat e = CMat::Zero(n, n);
  e(i, j) = 1.0;
  return e;
}

CMat kron(const CMat& a, const CMat& b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CMat direct_sum(const CMat& a, const CMat& b) {
  CMat out = CMat::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

Complex determinant(const CMat& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant: matrix is not square");
  if (m.rows() == 0) return 1.0;
  return m.partialPivLu().determinant();
}

Complex trace(const CMat& m) { return m.diagonal().sum(); }

void require_finite(const CMat& m, std::string_view what) {
  if (!m.allFinite()) throw std::domain_error(std::string(what) + ": non-finite matrix entry");
}

Rng::Rng(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), key_(splitmix(seed ^ splitmix(stream + 0x632be59bd9b4e019ULL))) {}

Rng Rng::split(std::uint64_t stream) const { return Rng(key_, stream); }

std::uint64_t Rng::next_u64() { return splitmix(key_ + 0x9e3779b97f4a7c15ULL * ++counter_); }

double Rng::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Rng::normal() {
  // Box-Muller; one draw per call keeps the counter arithmetic simple.
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Complex Rng::complex_normal() { return {normal() / std::numbers::sqrt2, normal() / std::numbers::sqrt2}; }

CMat random_ginibre(Index rows, Index cols, Rng& rng) {
  CMat g(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) g(i, j) = rng.complex_normal();
  return g;
}

CMat random_unitary(Index d, std::uint64_t seed) {
  if (d < 0) throw std::invalid_argument("random_unitary: negative dimension");
  Rng rng(seed, kUnitaryStream);
  return unitary_from(d, rng);
}

CMat random_projection(Index d, Index rank, std::uint64_t seed) {
  if (d < 0 || rank < 0 || rank > d) {
    throw std::invalid_argument("random_projection: rank " + std::to_string(rank) +
                                " out of range for dimension " + std::to_string(d));
  }
  if (rank == 0) return zeros(d, d);
  if (rank == d) return identity(d);
  Rng rng(seed, kProjectionStream);
  const CMat u = unitary_from(d, rng);
  const CMat v = u.leftCols(rank);
  return hermitian_part(v * v.adjoint());
}

CMat random_contraction(Index d, std::uint64_t seed, bool positive) {
  if (d < 1) throw std::invalid_argument("random_contraction: dimension must be at least 1");
  Rng rng(seed, kContractionStream + (positive ? 1 : 0));
  const CMat u = unitary_from(d, rng);
  RVec s(d);
  // Draw past the ends of [0, 1] and clamp, so exact 0 and 1 show up.
  for (Index i = 0; i < d; ++i) s(i) = std::clamp(rng.uniform(-0.25, 1.25), 0.0, 1.0);
  if (positive) return hermitian_part(u * s.cast<Complex>().asDiagonal() * u.adjoint());
  const CMat v = unitary_from(d, rng);
  return u * s.cast<Complex>().asDiagonal() * v.adjoint();
}

}  // namespace nccell::linalg
