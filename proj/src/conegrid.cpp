#include "nccell/conegrid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace nccell::cone {

void GridFun::check() const {
  if (grid < 1) throw std::invalid_argument("grid size must be positive");
  if (static_cast<int>(samples.size()) != grid + 1) throw std::invalid_argument("grid function has the wrong sample count");
  if (vanish_at_0 && linalg::op_norm(samples.front()) > 1e-10) throw std::invalid_argument("grid function does not vanish at 0");
  if (vanish_at_1 && linalg::op_norm(samples.back()) > 1e-10) throw std::invalid_argument("grid function does not vanish at 1");
}

GridFun sample(int grid, Index dim, const std::function<CMat(double)>& f, bool vanish_at_0, bool vanish_at_1) {
  GridFun g;
  g.grid = grid;
  g.dim = dim;
  g.vanish_at_0 = vanish_at_0;
  g.vanish_at_1 = vanish_at_1;
  g.samples.reserve(static_cast<std::size_t>(grid) + 1);
  for (int j = 0; j <= grid; ++j) g.samples.push_back(f(g.t(j)));
  g.check();
  return g;
}

reps::Rep ConeLift::at(int j) const {
  const auto i = static_cast<std::size_t>(j);
  return reps::make_rep("P", {{"h", h.samples.at(i)}, {"k", k.samples.at(i)}, {"x", x.samples.at(i)}});
}

double ConeLift::worst_residual() const {
  double worst = 0;
  for (int j = 0; j <= h.grid; ++j) worst = std::max(worst, reps::check_relations(at(j), 0).worst_residual());
  return worst;
}

ConeLift cone_lift_qc(const reps::Rep& qc, int grid, const std::function<double(double)>& reparam) {
  if (qc.presentation->name != "qC") throw std::invalid_argument("cone_lift_qc: expected a qC representation");
  const reps::RelationReport pre = reps::check_relations(qc, 1e-9);
  if (!pre.pass) {
    throw std::invalid_argument("cone_lift_qc: input fails " +
                                pre.residuals[static_cast<std::size_t>(pre.worst)].relation);
  }
  auto s = [&](double t) {
    if (!reparam || t == 0 || t == 1) return t;
    return reparam(t);
  };
  ConeLift lift;
  lift.h = sample(grid, qc.dim, [&](double t) -> CMat { return s(t) * qc.at("h0"); }, true);
  lift.k = sample(grid, qc.dim, [&](double t) -> CMat { return s(t) * qc.at("k0"); }, true);
  lift.x = sample(grid, qc.dim, [&](double t) -> CMat { return s(t) * qc.at("x0"); }, true);
  return lift;
}

Winding winding(const std::vector<Complex>& samples) {
  if (samples.size() < 2) throw std::invalid_argument("winding: need at least two samples");
  for (const Complex& z : samples)
    if (!(std::abs(z) > 0)) throw std::invalid_argument("winding: zero sample");
  const double gap = std::abs(samples.front() / std::abs(samples.front()) - samples.back() / std::abs(samples.back()));
  if (gap > 1e-6) throw std::invalid_argument("winding: loop is not closed (gap " + std::to_string(gap) + ")");
  Winding w;
  double total = 0;
  for (std::size_t j = 1; j < samples.size(); ++j) {
    const double step = std::arg(samples[j] / samples[j - 1]);
    w.max_step = std::max(w.max_step, std::abs(step));
    if (!(std::abs(step) < std::numbers::pi / 2)) {
      throw PhaseStepError("winding: phase step " + std::to_string(step) + " at sample " + std::to_string(j));
    }
    total += step;
  }
  w.raw = total / (2 * std::numbers::pi);
  w.value = static_cast<int>(std::lround(w.raw));
  w.drift = std::abs(w.raw - w.value);
  if (w.drift > 1e-6) throw std::runtime_error("winding: drift " + std::to_string(w.drift));
  return w;
}

UnitaryLoop unitary_loop(const ConeLift& lift) {
  const Index d = lift.h.dim;
  const CMat one = linalg::identity(d);
  UnitaryLoop loop;
  loop.u.grid = lift.h.grid;
  loop.u.dim = d;
  loop.u.samples.reserve(lift.h.samples.size());
  for (std::size_t j = 0; j < lift.h.samples.size(); ++j) {
    const CMat& h = lift.h.samples[j];
    const CMat& k = lift.k.samples[j];
    const CMat& x = lift.x.samples[j];
    CMat p(2 * d, 2 * d);
    p << one - h, x.adjoint(), x, k;
    const CMat v = linalg::herm_funcalc((p + p.adjoint()) * 0.5, linalg::SpectralFn::Exp2PiI);
    CMat u = -one + v.topLeftCorner(d, d) + v.topRightCorner(d, d) + v.bottomLeftCorner(d, d) +
             v.bottomRightCorner(d, d);
    loop.unitarity = std::max({loop.unitarity, linalg::op_norm(u.adjoint() * u - one), linalg::op_norm(u * u.adjoint() - one)});
    loop.u.samples.push_back(std::move(u));
  }
  loop.endpoint = std::max(linalg::op_norm(loop.u.samples.front() - one), linalg::op_norm(loop.u.samples.back() - one));
  return loop;
}

std::vector<Complex> det_samples(const GridFun& u) {
  std::vector<Complex> out;
  out.reserve(u.samples.size());
  for (const CMat& m : u.samples) out.push_back(m.size() == 0 ? Complex(1) : linalg::determinant(m));
  return out;
}

ExpBoundary exp_boundary_from_lift(const ConeLift& lift) {
  ExpBoundary out;
  out.grid = lift.h.grid;
  out.loop = unitary_loop(lift);
  if (out.loop.unitarity > 1e-6) {
    throw std::runtime_error("exp_boundary_u: u(t) is not unitary (residual " + std::to_string(out.loop.unitarity) + ")");
  }
  out.wind = winding(det_samples(out.loop.u));
  out.cls = out.wind.value;
  out.lift_residual = lift.worst_residual();
  return out;
}

ExpBoundary exp_boundary_u(const reps::Rep& qc, int grid, const std::function<double(double)>& reparam) {
  constexpr int kMaxGrid = 1 << 15;
  for (int g = grid;; g *= 2) {
    try {
      return exp_boundary_from_lift(cone_lift_qc(qc, g, reparam));
    } catch (const PhaseStepError&) {
      if (g >= kMaxGrid) throw;
    }
  }
}

ConeCell cone_cell_check(const CMat& p, int grid) {
  if (p.rows() != p.cols()) throw std::invalid_argument("cone_cell_check: not square");
  if (reps::projection_residual(p) > 1e-10) throw std::invalid_argument("cone_cell_check: not a projection");
  ConeCell out;
  out.class_in = static_cast<int>(std::lround(linalg::trace(p).real()));
  const CMat ph = (p + p.adjoint()) * 0.5;
  const GridFun loop = sample(grid, p.rows(), [&](double t) -> CMat {
    return linalg::herm_funcalc(t * ph, linalg::SpectralFn::Exp2PiI);
  });
  out.class_out = winding(det_samples(loop)).value;
  return out;
}

}  // namespace nccell::cone
