#pragma once

// Dense complex matrix kernel: Hermitian functional calculus, operator norms,
// and seeded random factories for representation inputs.

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <string_view>

namespace nccell::linalg {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;
using Index = Eigen::Index;

enum class SpectralFn {
  SqrtClamped,     // t -> sqrt(max(t, 0)); eigenvalues below -1e-8 are rejected
  PosPart,         // t -> max(t, 0)
  Exp2PiI,         // t -> exp(2 pi i t)
  InvSqrtShifted,  // t -> (1 + max(t - 1, 0))^(-1/2)
};

/// Eigenvalues ascending; columns of `vectors` are the eigenvectors.
struct HermEig {
  RVec values;
  CMat vectors;
};

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kSqrtClampWindow = 1e-8;

double op_norm(const CMat& m);
/// ||m - m*|| relative to max(1, ||m||).
double hermitian_defect(const CMat& m);

HermEig herm_eig(const CMat& h);
Complex apply_spectral(SpectralFn f, double t);
CMat herm_funcalc(const CMat& h, SpectralFn f);

CMat identity(Index d);
CMat zeros(Index rows, Index cols);
/// Matrix unit e_{ij} in M_n, zero-based indices.
CMat matrix_unit(Index n, Index i, Index j);
CMat kron(const CMat& a, const CMat& b);
CMat direct_sum(const CMat& a, const CMat& b);
Complex determinant(const CMat& m);
Complex trace(const CMat& m);

/// Throws std::domain_error when an entry is NaN or infinite.
void require_finite(const CMat& m, std::string_view what);

/// Counter-based generator: the n-th draw is a pure function of
/// (seed, stream, n), so splitting never perturbs sibling streams.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  Rng split(std::uint64_t stream) const;
  std::uint64_t next_u64();
  double uniform();  // [0, 1)
  double uniform(double lo, double hi);
  double normal();
  Complex complex_normal();

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

CMat random_ginibre(Index rows, Index cols, Rng& rng);
CMat random_unitary(Index d, std::uint64_t seed);
CMat random_projection(Index d, Index rank, std::uint64_t seed);
CMat random_contraction(Index d, std::uint64_t seed, bool positive);

}  // namespace nccell::linalg
