#include "doctest.h"
#include "test_util.hpp"

#include <cmath>
#include <numbers>

using namespace nccell::linalg;
using testutil::dist;

namespace {

CMat diag(std::initializer_list<Complex> values) {
  CMat m = CMat::Zero(static_cast<Index>(values.size()), static_cast<Index>(values.size()));
  Index i = 0;
  for (const Complex& v : values) m(i, i) = v, ++i;
  return m;
}

CMat random_hermitian(Index d, std::uint64_t seed) {
  Rng rng(seed);
  const CMat g = random_ginibre(d, d, rng);
  return (g + g.adjoint()) * 0.5;
}

}  // namespace

TEST_CASE("functional calculus on diagonal matrices") {
  CHECK(dist(herm_funcalc(diag({0, 0.25, 1}), SpectralFn::SqrtClamped), diag({0, 0.5, 1})) < 1e-14);
  CHECK(dist(herm_funcalc(diag({-2, 0.5}), SpectralFn::PosPart), diag({0, 0.5})) < 1e-14);
  // InvSqrtShifted is 1 on [0, 1] and 1/sqrt(t) above
  CHECK(dist(herm_funcalc(diag({0.3, 4}), SpectralFn::InvSqrtShifted), diag({1, 0.5})) < 1e-14);

  const double t = 0.3;
  const Complex e = std::exp(Complex(0, 2 * std::numbers::pi * t));
  CHECK(dist(herm_funcalc(diag({t}), SpectralFn::Exp2PiI), diag({e})) < 1e-14);
}

TEST_CASE("sqrt_clamped tolerates tiny negative eigenvalues and rejects real ones") {
  CHECK(dist(herm_funcalc(diag({-5e-9, 1}), SpectralFn::SqrtClamped), diag({0, 1})) < 1e-14);
  CHECK_THROWS_AS(herm_funcalc(diag({-1e-3, 1}), SpectralFn::SqrtClamped), std::domain_error);
}

TEST_CASE("non-Hermitian input is rejected") {
  CMat m = CMat::Zero(2, 2);
  m(0, 1) = 1;
  CHECK_THROWS_AS(herm_funcalc(m, SpectralFn::PosPart), std::domain_error);
}

TEST_CASE("exp2pii of a projection is the identity") {
  for (Index r = 0; r <= 5; ++r) {
    const CMat p = random_projection(5, r, 100 + static_cast<std::uint64_t>(r));
    CHECK(dist(herm_funcalc(p, SpectralFn::Exp2PiI), identity(5)) < 1e-10);
  }
}

TEST_CASE("eigendecomposition reconstructs and is unitary") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const CMat h = random_hermitian(7, seed);
    const HermEig eig = herm_eig(h);
    const CMat back = eig.vectors * eig.values.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
    CHECK(dist(back, h) <= 1e-12 * std::max(1.0, op_norm(h)));
    CHECK(dist(eig.vectors.adjoint() * eig.vectors, identity(7)) <= 1e-12);
    for (Index i = 1; i < eig.values.size(); ++i) CHECK(eig.values(i - 1) <= eig.values(i));
  }
}

TEST_CASE("functional calculus commutes with unitary conjugation") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const CMat h = random_hermitian(6, seed);
    const CMat u = random_unitary(6, seed + 1000);
    for (SpectralFn f : {SpectralFn::PosPart, SpectralFn::Exp2PiI, SpectralFn::InvSqrtShifted}) {
      const CMat lhs = herm_funcalc(u * h * u.adjoint(), f);
      const CMat rhs = u * herm_funcalc(h, f) * u.adjoint();
      CHECK(dist(lhs, rhs) < 1e-9);
    }
    const CMat pos = h * h;
    CHECK(dist(herm_funcalc(u * pos * u.adjoint(), SpectralFn::SqrtClamped),
               u * herm_funcalc(pos, SpectralFn::SqrtClamped) * u.adjoint()) < 1e-9);
  }
}

TEST_CASE("exp2pii is unitary and sqrt squares back") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const CMat h = random_hermitian(5, seed) * 3.0;
    const CMat v = herm_funcalc(h, SpectralFn::Exp2PiI);
    CHECK(dist(v.adjoint() * v, identity(5)) < 1e-10);
    const CMat pos = h * h;
    const CMat s = herm_funcalc(pos, SpectralFn::SqrtClamped);
    CHECK(dist(s * s, pos) < 1e-9);
  }
}

TEST_CASE("op_norm") {
  CHECK(op_norm(zeros(3, 3)) == 0.0);
  CHECK(op_norm(random_unitary(6, 3)) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(op_norm(diag({3, Complex(0, -4)})) == doctest::Approx(4.0).epsilon(1e-10));
}

TEST_CASE("random_projection") {
  CHECK(dist(random_projection(4, 0, 1), zeros(4, 4)) == 0.0);
  CHECK(dist(random_projection(4, 4, 1), identity(4)) == 0.0);
  const CMat p = random_projection(6, 2, 7);
  CHECK(dist(p * p, p) <= 1e-12);
  CHECK(dist(p, p.adjoint()) <= 1e-12);
  CHECK(std::abs(trace(p) - Complex(2)) <= 1e-10);
  CHECK(dist(p, random_projection(6, 2, 7)) == 0.0);
  CHECK_THROWS_AS(random_projection(4, 5, 1), std::invalid_argument);
  CHECK_THROWS_AS(random_projection(4, -1, 1), std::invalid_argument);
}

TEST_CASE("random_contraction") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const CMat a = random_contraction(6, seed, false);
    CHECK(op_norm(a) <= 1 + 1e-12);
    const CMat l = random_contraction(6, seed, true);
    CHECK(dist(l, l.adjoint()) <= 1e-12);
    const RVec ev = herm_eig(l).values;
    CHECK(ev.minCoeff() >= -1e-12);
    CHECK(ev.maxCoeff() <= 1 + 1e-12);
    CHECK(dist(a, random_contraction(6, seed, false)) == 0.0);
  }
  const CMat z = random_contraction(1, 9, false);
  CHECK(std::abs(z(0, 0)) <= 1.0 + 1e-15);
}

TEST_CASE("rng streams are reproducible and independent") {
  Rng a(42), b(42);
  for (int i = 0; i < 10; ++i) CHECK(a.next_u64() == b.next_u64());
  Rng s1 = Rng(42).split(1), s2 = Rng(42).split(2);
  CHECK(s1.next_u64() != s2.next_u64());
  double sum = 0;
  Rng u(5);
  for (int i = 0; i < 4000; ++i) sum += u.uniform();
  CHECK(sum / 4000 == doctest::Approx(0.5).epsilon(0.05));
}

TEST_CASE("kron, direct_sum, matrix units") {
  const CMat e21 = matrix_unit(2, 1, 0);
  CHECK(e21(1, 0) == Complex(1));
  CHECK(e21.cwiseAbs().sum() == 1.0);
  const CMat h = random_hermitian(3, 1);
  // block convention: e11 (x) h puts h in the top-left block
  const CMat k = kron(matrix_unit(2, 0, 0), h);
  CHECK(k.rows() == 6);
  CHECK(dist(k.topLeftCorner(3, 3), h) == 0.0);
  const CMat ds = direct_sum(h, identity(2));
  CHECK(ds.rows() == 5);
  CHECK(std::abs(determinant(ds) - determinant(h)) < 1e-12);
}
