#include "doctest.h"
#include "test_util.hpp"

#include "nccell/boundary.hpp"
#include "nccell/genmap.hpp"

#include <cmath>

using namespace nccell;
using namespace nccell::bnd;
using linalg::identity;
using linalg::zeros;
using testutil::dist;
using toep::LaurentPoly;

namespace {

LaurentPoly z_pow(int w, Index s = 1) { return LaurentPoly::scalar_monomial(1.0, w, s); }

reps::Rep k_only(const CMat& p) {
  const Index d = p.rows();
  return reps::make_rep("qC", {{"h0", zeros(d, d)}, {"k0", p}, {"x0", zeros(d, d)}});
}

}  // namespace

TEST_CASE("cells") {
  CHECK(index_cell().sign == -1);
  CHECK(index_cell().parity == 1);
  CHECK(exponential_cell().parity == 0);
  CHECK(&cell_get("exp") == &exponential_cell());
  CHECK_THROWS(cell_get("nope"));
  // K-groups as in the cell definition: both shipped R and Q have Z in one degree
  CHECK(index_cell().q == "G2st");
  CHECK(exponential_cell().r == "qC");
}

TEST_CASE("toeplitz model laws") {
  const ToeplitzModel m;
  linalg::Rng rng(3, 3);
  for (int t = 0; t < 20; ++t) {
    LaurentPoly q(2);
    q.set(t % 3 - 1, linalg::random_ginibre(2, 2, rng));
    CHECK((m.quotient(m.lift(q)) - q).is_zero());
    CHECK(m.ideal_residual(m.lift(q)) > 0);
    CHECK(m.ideal_residual(toep::ideal_op(linalg::random_ginibre(4, 4, rng), 2)) == 0.0);
  }
}

TEST_CASE("cone grid model laws") {
  const ConeGridModel m{64};
  linalg::Rng rng(4, 4);
  const CMat q = linalg::random_ginibre(3, 3, rng);
  CHECK(dist(m.quotient(m.lift(q)), q) <= 1e-15);
  CHECK(m.ideal_residual(m.lift(q)) > 0);
  const cone::GridFun e = cone::sample(64, 3, [&](double t) -> CMat { return t * (1 - t) * q; }, true, true);
  CHECK(m.ideal_residual(e) <= 1e-9);
}

TEST_CASE("contraction lift") {
  const ToeplitzModel tm;
  const toep::ToepOp s = toep::toep(z_pow(1));
  const toep::ToepOp same = tm.contraction_lift(s);
  CHECK(dist(same.dense(8), s.dense(8)) == 0.0);

  linalg::Rng rng(9, 9);
  for (int t = 0; t < 20; ++t) {
    const toep::ToepOp b = s + toep::ideal_op(linalg::random_ginibre(3, 3, rng), 1);
    const toep::ToepOp a = tm.contraction_lift(b);
    CHECK(toep::op_norm(a) <= 1 + 1e-10);
    CHECK((tm.quotient(a) - tm.quotient(b)).is_zero());
    // the trace pairing survives the normalization
    CHECK(boundary_map_with_lift(index_cell(), tm, a).output_class == -1);
  }
  CHECK_THROWS_AS(tm.contraction_lift(toep::toep(LaurentPoly::scalar_monomial(2.0, 1))), std::invalid_argument);

  const ConeGridModel cm{64};
  const CMat u = linalg::random_unitary(3, 5);
  // b(t) = (2 - t) u has b(1) = u and norm 2 at t = 0
  const cone::GridFun b = cone::sample(64, 3, [&](double t) -> CMat { return (2 - t) * u; });
  const cone::GridFun a = cm.contraction_lift(b);
  for (const CMat& m : a.samples) CHECK(linalg::op_norm(m) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(dist(cm.quotient(a), u) <= 1e-9);
  // a contraction is left alone
  const cone::GridFun half = cone::sample(8, 2, [&](double t) -> CMat { return 0.5 * t * identity(2); });
  const cone::GridFun c = cone::sample(8, 2, [&](double t) -> CMat { return t * identity(2); });
  CHECK(dist(cm.contraction_lift(c).samples[3], c.samples[3]) <= 1e-15);
  CHECK_THROWS_AS(cm.contraction_lift(half), std::invalid_argument);
}

TEST_CASE("boundary map examples") {
  const ToeplitzModel tm;
  const BoundaryResult z = boundary_map(index_cell(), tm, z_pow(1));
  CHECK(z.output_class == -1);
  CHECK(z.input_class == 1);
  CHECK(z.output_class == toep::fredholm_oracle(z_pow(1)));
  CHECK(z.diag.relation_residual <= 1e-7);

  const ConeGridModel cm{512};
  CHECK(boundary_map(exponential_cell(), cm, reps::zero_rep("qC", 3)).output_class == 0);
  const BoundaryResult two = boundary_map(exponential_cell(), cm, k_only(linalg::random_projection(4, 2, 6)));
  CHECK(two.output_class == 2);
  CHECK(two.input_class == 2);
  CHECK(two.diag.relation_residual <= 1e-7);
  CHECK(two.diag.unitarity <= 1e-8);

  CHECK_THROWS_AS(boundary_map(index_cell(), cm, reps::zero_rep("qC", 1)), std::invalid_argument);
  CHECK_THROWS_AS(boundary_map(exponential_cell(), tm, z_pow(1)), std::invalid_argument);
  // a non-contractive lift is refused
  CHECK_THROWS_AS(boundary_map_with_lift(index_cell(), tm, toep::toep(z_pow(1)) + toep::ideal_op(identity(1), 1)),
                  std::invalid_argument);
}

TEST_CASE("class of Q reps") {
  const reps::Rep corner = reps::make_rep("G2st", {{"h", zeros(2, 2)}, {"k", linalg::matrix_unit(2, 0, 0)}, {"x", zeros(2, 2)}});
  CHECK(class_of_Q_rep(index_cell(), corner) == -1);
  CHECK(class_of_Q_rep(index_cell(), reps::zero_rep("G2st", 3)) == 0);
  const BoundaryResult b = boundary_map(index_cell(), ToeplitzModel{}, LaurentPoly::bott(2, 2));
  CHECK(class_of_Q_rep(index_cell(), b.output) == -2);
  CHECK(toep::fredholm_oracle(LaurentPoly::bott(2, 2)) == -2);

  const reps::Rep broken = reps::make_rep("G2st", {{"h", identity(1)}, {"k", zeros(1, 1)}, {"x", identity(1)}});
  CHECK_THROWS_AS(class_of_Q_rep(index_cell(), broken), std::invalid_argument);
  CHECK_THROWS_AS(class_of_Q_rep(exponential_cell(), corner), std::invalid_argument);
}

TEST_CASE("index cell on monomials and sign convention") {
  for (int w = -3; w <= 3; ++w) {
    const BoundaryResult r = boundary_map(index_cell(), ToeplitzModel{}, z_pow(w));
    CHECK(r.output_class == -w);
    CHECK(r.input_class == w);
    CHECK(r.output_class == index_cell().sign * r.input_class);
  }
}

TEST_CASE("exponential cell on factory reps") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Index d = 1 + static_cast<Index>(seed % 8);
    const reps::Rep q = reps::factory_rep("qC", d, seed);
    const BoundaryResult r = boundary_map(exponential_cell(), ConeGridModel{256}, q);
    CHECK(r.output_class == std::lround((linalg::trace(q.at("k0")) - linalg::trace(q.at("h0"))).real()));
    CHECK(r.output_class == r.input_class);
  }
}

TEST_CASE("trace pairing commutes with lambda") {
  // tr h - tr k on G2st matches tr h0 - tr k0 on the lambda pullback
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const reps::Rep g = reps::factory_rep("G2st", 4, seed);
    const reps::Rep q = reps::apply_genmap(reps::genmap_get("lambda"), g);
    const double lhs = (linalg::trace(g.at("h")) - linalg::trace(g.at("k"))).real();
    const double rhs = (linalg::trace(q.at("h0")) - linalg::trace(q.at("k0"))).real();
    CHECK(std::abs(lhs - rhs) <= 1e-10);
    CHECK(q.dim == 2 * g.dim);
  }
  // and on the index boundary output, whose class is not zero
  const BoundaryResult b = boundary_map(index_cell(), ToeplitzModel{}, z_pow(2));
  const reps::Rep g = std::get<reps::Rep>(b.output);
  const reps::Rep q = reps::apply_genmap(reps::genmap_get("lambda"), g);
  CHECK(std::lround((linalg::trace(q.at("h0")) - linalg::trace(q.at("k0"))).real()) == -2);
}

TEST_CASE("invariance suite") {
  for (const CellDiagram* cell : {&index_cell(), &exponential_cell()}) {
    CAPTURE(cell->name);
    const report::Report r = invariance_suite(*cell, {10, 1, 4, 128});
    CHECK(r.cases.size() == 50);
    CHECK(r.ok());
    for (const auto& c : r.cases) {
      CAPTURE(c.name);
      CAPTURE(c.detail);
      CHECK(c.status == report::Status::Pass);
    }
  }
}
