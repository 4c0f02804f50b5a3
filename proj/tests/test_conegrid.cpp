#include "doctest.h"
#include "test_util.hpp"

#include "nccell/conegrid.hpp"

#include <cmath>
#include <numbers>

using namespace nccell;
using namespace nccell::cone;
using linalg::identity;
using linalg::zeros;
using testutil::dist;

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

std::vector<Complex> circle_samples(int grid, double turns) {
  std::vector<Complex> out;
  for (int j = 0; j <= grid; ++j) out.push_back(std::polar(1.0, kTwoPi * turns * j / grid));
  return out;
}

reps::Rep k_only(const CMat& p) {
  const Index d = p.rows();
  return reps::make_rep("qC", {{"h0", zeros(d, d)}, {"k0", p}, {"x0", zeros(d, d)}});
}

}  // namespace

TEST_CASE("winding examples") {
  CHECK(winding(circle_samples(64, 1)).value == 1);
  CHECK(winding(std::vector<Complex>(10, Complex(1))).value == 0);
  CHECK(winding(circle_samples(64, -2)).value == -2);
  CHECK(winding(circle_samples(64, 3)).drift < 1e-12);

  CHECK_THROWS_AS(winding(circle_samples(4, 3)), PhaseStepError);
  CHECK_THROWS_AS(winding({Complex(1), Complex(0), Complex(1)}), std::invalid_argument);
  CHECK_THROWS_AS(winding({Complex(1), Complex(0, 1)}), std::invalid_argument);
  // scale does not matter, only the phase
  std::vector<Complex> scaled = circle_samples(64, 1);
  for (std::size_t j = 0; j < scaled.size(); ++j) scaled[j] *= 1.0 + 0.5 * std::sin(0.3 * static_cast<double>(j));
  scaled.back() = scaled.back() / std::abs(scaled.back()) * std::abs(scaled.front());
  CHECK(winding(scaled).value == 1);
}

TEST_CASE("grid functions") {
  const GridFun g = sample(8, 2, [](double t) -> CMat { return t * identity(2); }, true);
  CHECK(g.samples.size() == 9);
  CHECK(dist(g.samples[4], 0.5 * identity(2)) == 0.0);
  CHECK_THROWS_AS(sample(8, 2, [](double) -> CMat { return identity(2); }, true), std::invalid_argument);
  CHECK_THROWS_AS(sample(8, 2, [](double t) -> CMat { return t * identity(2); }, false, true), std::invalid_argument);
}

TEST_CASE("cone lift") {
  const ConeLift zero = cone_lift_qc(reps::zero_rep("qC", 3), 16);
  CHECK(zero.worst_residual() == 0.0);
  for (const CMat& m : zero.x.samples) CHECK(linalg::op_norm(m) == 0.0);

  const CMat p = linalg::random_projection(4, 2, 3);
  const ConeLift lp = cone_lift_qc(k_only(p), 8);
  for (int j = 0; j <= 8; ++j) {
    const reps::Rep r = lp.at(j);
    CMat block(8, 8);
    block << identity(4) - r.at("h"), r.at("x").adjoint(), r.at("x"), r.at("k");
    CHECK(dist(block, linalg::direct_sum(identity(4), lp.h.t(j) * p)) < 1e-15);
  }

  const reps::Rep q = reps::factory_rep("qC", 6, 4);
  const ConeLift l = cone_lift_qc(q, 512);
  CHECK(l.worst_residual() <= 1e-9);
  // evaluation at t = 1 is the input
  CHECK(dist(l.h.samples.back(), q.at("h0")) == 0.0);
  CHECK(dist(l.k.samples.back(), q.at("k0")) == 0.0);
  CHECK(dist(l.x.samples.back(), q.at("x0")) == 0.0);

  const reps::Rep bad = reps::make_rep("qC", {{"h0", identity(2)}, {"k0", identity(2)}, {"x0", zeros(2, 2)}});
  CHECK_THROWS_AS(cone_lift_qc(bad, 8), std::invalid_argument);
}

TEST_CASE("exponential boundary examples") {
  const ExpBoundary one = exp_boundary_u(k_only(identity(1)), 64);
  CHECK(one.cls == 1);
  for (int j = 0; j <= 64; ++j) {
    const double t = static_cast<double>(j) / 64;
    CHECK(std::abs(one.loop.u.samples[static_cast<std::size_t>(j)](0, 0) - std::polar(1.0, kTwoPi * t)) < 1e-12);
  }

  const ExpBoundary zero = exp_boundary_u(reps::zero_rep("qC", 4));
  CHECK(zero.cls == 0);
  for (const CMat& u : zero.loop.u.samples) CHECK(dist(u, identity(4)) < 1e-12);

  // det u(t) = exp(2 pi i 3t) by hand for k0 = p of rank 3
  const CMat p = linalg::random_projection(5, 3, 8);
  const ExpBoundary three = exp_boundary_u(k_only(p), 512);
  CHECK(three.cls == 3);
  const auto dets = det_samples(three.loop.u);
  for (std::size_t j = 0; j < dets.size(); ++j) {
    CHECK(std::abs(dets[j] - std::polar(1.0, kTwoPi * 3 * static_cast<double>(j) / 512)) < 1e-9);
  }
}

TEST_CASE("exponential class is the trace pairing") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    CAPTURE(seed);
    const Index d = 1 + static_cast<Index>(seed % 8);
    const reps::Rep q = reps::factory_rep("qC", d, seed);
    const ExpBoundary e = exp_boundary_u(q, 512);
    const double trace = (linalg::trace(q.at("k0")) - linalg::trace(q.at("h0"))).real();
    CHECK(e.cls == std::lround(trace));
    CHECK(e.loop.unitarity <= 1e-8);
    CHECK(e.loop.endpoint <= 1e-8);
    CHECK(e.wind.drift <= 1e-6);
    CHECK(e.lift_residual <= 1e-9);
    if (seed % 10 == 0) CHECK(exp_boundary_u(q, 1024).cls == e.cls);
  }
}

TEST_CASE("exponential class invariance") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const reps::Rep q = reps::factory_rep("qC", 5, seed);
    const int base = exp_boundary_u(q, 256).cls;
    const CMat u = linalg::random_unitary(5, seed + 77);
    CHECK(exp_boundary_u(reps::conjugate(q, u), 256).cls == base);
    CHECK(exp_boundary_u(reps::pad_zero(q, 2), 256).cls == base);
    CHECK(exp_boundary_u(q, 256, [](double t) { return t * t; }).cls == base);
  }
}

TEST_CASE("cone cell") {
  for (Index n = 1; n <= 6; ++n) {
    for (Index r = 0; r <= n; ++r) {
      const ConeCell c = cone_cell_check(linalg::random_projection(n, r, static_cast<std::uint64_t>(10 * n + r)));
      CHECK(c.class_in == r);
      CHECK(c.class_out == r);
    }
  }
  const ConeCell eye = cone_cell_check(identity(3));
  CHECK(eye.class_in == 3);
  CHECK(eye.class_out == 3);
  CHECK_THROWS_AS(cone_cell_check(0.5 * identity(2)), std::invalid_argument);
}
