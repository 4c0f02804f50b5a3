#include "nccell/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nccell::bnd {

const char* model_name(ModelKind m) { return m == ModelKind::Toeplitz ? "toeplitz" : "cone-grid"; }
const char* pairing_name(Pairing p) { return p == Pairing::Trace ? "trace" : "winding"; }

const CellDiagram& index_cell() {
  static const CellDiagram cell{
      "index",
      "G2st",
      "D",
      "C0_01",
      1,
      ModelKind::Toeplitz,
      Pairing::Winding,
      Pairing::Trace,
      -1,
      "a = 1 + y: h -> 1 - a*a, k -> 1 - aa*, x -> a sqrt(1 - a*a)",
      "class = tr(h1) - tr(k1) = Fredholm index of the lift; the boundary of z^w is -w",
  };
  return cell;
}

const CellDiagram& exponential_cell() {
  static const CellDiagram cell{
      "exponential",
      "C0_01",
      "P",
      "qC",
      0,
      ModelKind::ConeGrid,
      Pairing::Trace,
      Pairing::Winding,
      1,
      "x -> u - 1, u = -1 + v11 + v12 + v21 + v22, v = exp(2 pi i P)",
      "class = winding of det u(t); the boundary of [P0] - [diag(1, 0)] is round(tr(k0 - h0))",
  };
  return cell;
}

const CellDiagram& cell_get(std::string_view name) {
  if (name == "index") return index_cell();
  if (name == "exponential" || name == "exp") return exponential_cell();
  throw std::invalid_argument("unknown cell " + std::string(name));
}

// ---- models ----

double ToeplitzModel::ideal_residual(const Element& e) const { return e.symbol().sup_norm(); }

ToeplitzModel::Element ToeplitzModel::contraction_lift(const Element& b) const {
  const double defect = b.symbol().unitarity_defect();
  if (!(defect <= 1e-8)) throw std::invalid_argument("contraction_lift: quotient is not unitary");
  const Index s = b.block();
  // b*b = 1 + D with D in the corner; 1 - u*u is dropped with the defect
  const toep::ToepOp bb = b.adjoint() * b;
  const Index m = bb.corner();
  if (m == 0) return b;
  const CMat one = linalg::identity(m * s);
  const CMat d = bb.correction();
  const CMat g = linalg::herm_funcalc((one + (d + d.adjoint()) * 0.5), linalg::SpectralFn::InvSqrtShifted) - one;
  return b + b * toep::ideal_op(g, s);
}

ConeGridModel::Element ConeGridModel::lift(const Quotient& q) const {
  return cone::sample(grid, q.rows(), [&](double t) -> CMat { return t * q; }, true);
}

ConeGridModel::Element ConeGridModel::contraction_lift(const Element& b) const {
  const CMat& top = b.samples.back();
  const CMat one = linalg::identity(top.rows());
  if (std::max(linalg::op_norm(top.adjoint() * top - one), linalg::op_norm(top * top.adjoint() - one)) > 1e-8) {
    throw std::invalid_argument("contraction_lift: value at 1 is not unitary");
  }
  cone::GridFun a = b;
  for (CMat& m : a.samples) {
    const CMat bb = m.adjoint() * m;
    m = m * linalg::herm_funcalc((bb + bb.adjoint()) * 0.5, linalg::SpectralFn::InvSqrtShifted);
  }
  return a;
}

// ---- grid reps ----

reps::Rep GridRep::at(int j) const {
  std::map<std::string, CMat> images_at;
  for (const auto& [g, f] : images) images_at.emplace(g, f.samples.at(static_cast<std::size_t>(j)));
  return reps::make_rep(presentation, std::move(images_at));
}

double GridRep::worst_residual() const {
  if (images.empty()) return 0;
  double worst = 0;
  const int grid = images.begin()->second.grid;
  for (int j = 0; j <= grid; ++j) worst = std::max(worst, reps::check_relations(at(j), 0).worst_residual());
  return worst;
}

// ---- classes ----

int symbol_winding(const toep::LaurentPoly& u) {
  for (int n = 256;; n *= 2) {
    std::vector<linalg::Complex> dets;
    for (int j = 0; j <= n; ++j) {
      dets.push_back(linalg::determinant(u.eval(std::polar(1.0, 2 * std::numbers::pi * j / n))));
    }
    try {
      return cone::winding(dets).value;
    } catch (const cone::PhaseStepError&) {
      if (n >= (1 << 15)) throw;
    }
  }
}

namespace {

int round_checked(double raw, double* drift_out) {
  const int value = static_cast<int>(std::lround(raw));
  const double drift = std::abs(raw - value);
  if (drift_out) *drift_out = drift;
  if (drift > 1e-6) throw std::runtime_error("class pairing drift " + std::to_string(drift) + " exceeds 1e-6");
  return value;
}

int trace_class(const reps::Rep& g, double* drift) {
  const reps::RelationReport rel = reps::check_relations(g, 1e-7);
  if (!rel.pass) {
    throw std::invalid_argument("class_of_Q_rep: rep fails " + rel.residuals[static_cast<std::size_t>(rel.worst)].relation);
  }
  return round_checked((linalg::trace(g.at("h")) - linalg::trace(g.at("k"))).real(), drift);
}

int winding_class(const GridRep& g, double* drift) {
  const auto it = g.images.find("x");
  if (it == g.images.end()) throw std::invalid_argument("class_of_Q_rep: grid rep has no x");
  const cone::GridFun& x = it->second;
  if (linalg::op_norm(x.samples.front()) > 1e-8 || linalg::op_norm(x.samples.back()) > 1e-8) {
    throw std::invalid_argument("class_of_Q_rep: grid rep does not vanish at the endpoints");
  }
  if (g.worst_residual() > 1e-7) throw std::invalid_argument("class_of_Q_rep: grid rep fails unitary(1 + x)");
  std::vector<linalg::Complex> dets;
  const CMat one = linalg::identity(x.dim);
  for (const CMat& m : x.samples) dets.push_back(x.dim == 0 ? linalg::Complex(1) : linalg::determinant(one + m));
  const cone::Winding w = cone::winding(dets);
  if (drift) *drift = w.drift;
  return w.value;
}

int class_with_drift(const CellDiagram& cell, const QRep& rep, double* drift) {
  if (cell.lambda == Pairing::Trace) {
    const auto* g = std::get_if<reps::Rep>(&rep);
    if (!g || g->presentation->name != cell.q) throw std::invalid_argument("class_of_Q_rep: expected a " + cell.q + " rep");
    return trace_class(*g, drift);
  }
  const auto* g = std::get_if<GridRep>(&rep);
  if (!g || g->presentation != cell.q) throw std::invalid_argument("class_of_Q_rep: expected a grid " + cell.q + " rep");
  return winding_class(*g, drift);
}

void require_model(const CellDiagram& cell, ModelKind m) {
  if (cell.model != m) {
    throw std::invalid_argument("cell " + cell.name + " runs on the " + model_name(cell.model) + " model, not " +
                                model_name(m));
  }
}

}  // namespace

int class_of_Q_rep(const CellDiagram& cell, const QRep& rep) { return class_with_drift(cell, rep, nullptr); }

// ---- boundary maps ----

BoundaryResult boundary_map_with_lift(const CellDiagram& cell, const ToeplitzModel& model, const toep::ToepOp& lift) {
  require_model(cell, ModelKind::Toeplitz);
  const double defect = model.quotient(lift).unitarity_defect();
  if (!(defect <= 1e-8)) {
    throw std::invalid_argument("boundary_map: symbol is not unitary on the circle (defect " + std::to_string(defect) + ")");
  }
  const double norm = toep::op_norm(lift);
  if (norm > 1 + 1e-9) {
    throw std::invalid_argument("boundary_map: lift has norm " + std::to_string(norm) + "; apply contraction_lift first");
  }
  BoundaryResult out;
  out.input_class = symbol_winding(model.quotient(lift));
  const toep::IndexBoundary ib = toep::index_boundary_of_lift(lift);
  out.diag.unitarity = ib.symbol_defect;
  out.diag.corner = ib.corner;
  out.diag.ideal_residual = std::max({model.ideal_residual(ib.h1), model.ideal_residual(ib.k1), model.ideal_residual(ib.x1)});
  out.diag.relation_residual = reps::check_relations(ib.rep, 0).worst_residual();
  out.output = ib.rep;
  out.output_class = class_with_drift(cell, out.output, &out.diag.drift);
  return out;
}

BoundaryResult boundary_map(const CellDiagram& cell, const ToeplitzModel& model, const toep::LaurentPoly& u) {
  require_model(cell, ModelKind::Toeplitz);
  return boundary_map_with_lift(cell, model, model.lift(u));
}

BoundaryResult boundary_map_with_lift(const CellDiagram& cell, const ConeGridModel& model, const cone::ConeLift& lift) {
  require_model(cell, ModelKind::ConeGrid);
  (void)model;
  BoundaryResult out;
  const CMat& h0 = lift.h.samples.back();
  const CMat& k0 = lift.k.samples.back();
  out.input_class = round_checked((linalg::trace(k0) - linalg::trace(h0)).real(), &out.diag.input_drift);
  const cone::ExpBoundary eb = cone::exp_boundary_from_lift(lift);
  out.diag.unitarity = eb.loop.unitarity;
  out.diag.grid = eb.grid;
  out.diag.ideal_residual = eb.loop.endpoint;
  GridRep g;
  g.presentation = cell.q;
  cone::GridFun x = eb.loop.u;
  const CMat one = linalg::identity(x.dim);
  for (CMat& m : x.samples) m -= one;
  x.vanish_at_0 = x.vanish_at_1 = true;
  g.images.emplace("x", std::move(x));
  out.diag.relation_residual = g.worst_residual();
  out.output = std::move(g);
  out.output_class = class_with_drift(cell, out.output, &out.diag.drift);
  return out;
}

BoundaryResult boundary_map(const CellDiagram& cell, const ConeGridModel& model, const reps::Rep& qc) {
  require_model(cell, ModelKind::ConeGrid);
  for (int g = model.grid;; g *= 2) {
    try {
      return boundary_map_with_lift(cell, model, cone::cone_lift_qc(qc, g));
    } catch (const cone::PhaseStepError&) {
      if (g >= (1 << 15)) throw;
    }
  }
}

// ---- invariance suite ----

namespace {

toep::LaurentPoly block_diag(const toep::LaurentPoly& u, Index extra) {
  const Index s = u.block();
  toep::LaurentPoly out(s + extra);
  for (int n = u.min_degree(); n <= u.max_degree(); ++n) {
    CMat c = linalg::zeros(s + extra, s + extra);
    c.topLeftCorner(s, s) = u.coeff(n);
    if (n == 0) c.bottomRightCorner(extra, extra) = linalg::identity(extra);
    out.set(n, c);
  }
  if (u.min_degree() > 0 || u.max_degree() < 0) {
    out = out + toep::LaurentPoly::constant(linalg::direct_sum(linalg::zeros(s, s), linalg::identity(extra)));
  }
  return out;
}

CMat random_hermitian(Index d, double norm, linalg::Rng& rng) {
  const CMat g = linalg::random_ginibre(d, d, rng);
  const CMat h = (g + g.adjoint()) * 0.5;
  const double n = linalg::op_norm(h);
  return n == 0 ? h : CMat(h * (norm / n));
}

report::Case equal_classes(std::string name, std::uint64_t seed, const std::function<std::vector<int>()>& body) {
  return report::run_case(std::move(name), seed, 0, [&](std::string& detail) {
    const std::vector<int> cls = body();
    detail = "classes";
    for (int c : cls) detail += " " + std::to_string(c);
    const auto [lo, hi] = std::minmax_element(cls.begin(), cls.end());
    return static_cast<double>(*hi - *lo);
  });
}

void index_trials(report::Report& rep, const SuiteOptions& opts) {
  const CellDiagram& cell = index_cell();
  const ToeplitzModel model;
  for (int t = 0; t < opts.trials; ++t) {
    const std::uint64_t seed = opts.seed + static_cast<std::uint64_t>(t);
    linalg::Rng rng(seed, 0x696e646578ULL);
    const Index s = 1 + static_cast<Index>(rng.next_u64() % 2);
    const int w = static_cast<int>(rng.next_u64() % 7) - 3;
    const double phase = rng.uniform(0, 2 * std::numbers::pi);
    toep::LaurentPoly u = toep::LaurentPoly::scalar_monomial(std::polar(1.0, phase), w, s);
    if (s == 2) {
      const Index r = static_cast<Index>(rng.next_u64() % 3);
      const CMat v = linalg::random_unitary(2, rng.next_u64());
      u = toep::LaurentPoly::constant(v.adjoint()) * toep::LaurentPoly::bott(r, 2) * toep::LaurentPoly::constant(v) * u;
    }
    const std::string prefix = "index/trial-" + std::to_string(t) + "/";
    const BoundaryResult base = boundary_map(cell, model, u);

    rep.cases.push_back(equal_classes(prefix + "sign", seed, [&] {
      return std::vector<int>{base.output_class, cell.sign * base.input_class};
    }));
    rep.cases.push_back(equal_classes(prefix + "homotopic", seed, [&] {
      const CMat v = linalg::random_unitary(s, seed ^ 0x5bd1e995ULL);
      const toep::LaurentPoly moved = std::polar(1.0, 0.7) * (toep::LaurentPoly::constant(v.adjoint()) * u *
                                                              toep::LaurentPoly::constant(v));
      return std::vector<int>{base.output_class, boundary_map(cell, model, moved).output_class};
    }));
    rep.cases.push_back(equal_classes(prefix + "lift-choice", seed, [&] {
      linalg::Rng prng(seed, 0x6c696674ULL);
      const Index m = 1 + static_cast<Index>(prng.next_u64() % 4);
      CMat e = linalg::random_ginibre(m * s, m * s, prng);
      e *= 0.3 * prng.uniform(0.2, 1.0) / linalg::op_norm(e);
      const toep::ToepOp b = model.lift(u) + toep::ideal_op(e, s);
      const toep::ToepOp a = model.contraction_lift(b);
      return std::vector<int>{base.output_class, boundary_map_with_lift(cell, model, a).output_class};
    }));
    rep.cases.push_back(equal_classes(prefix + "amplification", seed, [&] {
      return std::vector<int>{base.output_class, boundary_map(cell, model, block_diag(u, s)).output_class};
    }));
    rep.cases.push_back(equal_classes(prefix + "naturality", seed, [&] {
      // boundary of the embedded symbol against the embedded boundary
      const int embedded_then_boundary = boundary_map(cell, model, block_diag(u, 1)).output_class;
      const reps::Rep pushed = reps::pad_zero(std::get<reps::Rep>(base.output), 1);
      return std::vector<int>{embedded_then_boundary, class_of_Q_rep(cell, pushed)};
    }));
  }
}

cone::ConeLift conjugated_lift(const cone::ConeLift& lift, const CMat& h) {
  cone::ConeLift out = lift;
  for (int j = 0; j <= lift.h.grid; ++j) {
    const double t = lift.h.t(j);
    // W(0) = W(1) = 1, so the perturbation lies in the ideal
    const CMat w = linalg::herm_funcalc(std::sin(std::numbers::pi * t) * h / (2 * std::numbers::pi),
                                        linalg::SpectralFn::Exp2PiI);
    const auto i = static_cast<std::size_t>(j);
    out.h.samples[i] = w * lift.h.samples[i] * w.adjoint();
    out.k.samples[i] = w * lift.k.samples[i] * w.adjoint();
    out.x.samples[i] = w * lift.x.samples[i] * w.adjoint();
  }
  return out;
}

void exponential_trials(report::Report& rep, const SuiteOptions& opts) {
  const CellDiagram& cell = exponential_cell();
  const ConeGridModel model{opts.grid};
  for (int t = 0; t < opts.trials; ++t) {
    const std::uint64_t seed = opts.seed + static_cast<std::uint64_t>(t);
    linalg::Rng rng(seed, 0x657870ULL);
    const Index d = 1 + static_cast<Index>(rng.next_u64() % static_cast<std::uint64_t>(std::max<Index>(opts.dim, 1)));
    const reps::Rep q = reps::factory_rep("qC", d, seed);
    const std::string prefix = "exponential/trial-" + std::to_string(t) + "/";
    const BoundaryResult base = boundary_map(cell, model, q);

    rep.cases.push_back(equal_classes(prefix + "sign", seed, [&] {
      return std::vector<int>{base.output_class, cell.sign * base.input_class};
    }));
    rep.cases.push_back(equal_classes(prefix + "homotopic", seed, [&] {
      const CMat v = linalg::random_unitary(d, seed ^ 0x5bd1e995ULL);
      const int conj = boundary_map(cell, model, reps::conjugate(q, v)).output_class;
      const int reparam =
          boundary_map_with_lift(cell, model, cone::cone_lift_qc(q, opts.grid, [](double s) { return s * s; })).output_class;
      return std::vector<int>{base.output_class, conj, reparam};
    }));
    rep.cases.push_back(equal_classes(prefix + "lift-choice", seed, [&] {
      linalg::Rng prng(seed, 0x6c696674ULL);
      const CMat h = random_hermitian(d, 0.3 * prng.uniform(0.2, 1.0), prng);
      const cone::ConeLift other = conjugated_lift(cone::cone_lift_qc(q, opts.grid), h);
      return std::vector<int>{base.output_class, boundary_map_with_lift(cell, model, other).output_class};
    }));
    rep.cases.push_back(equal_classes(prefix + "amplification", seed, [&] {
      return std::vector<int>{base.output_class, boundary_map(cell, model, reps::pad_zero(q, d)).output_class};
    }));
    rep.cases.push_back(equal_classes(prefix + "naturality", seed, [&] {
      const int embedded_then_boundary = boundary_map(cell, model, reps::pad_zero(q, 1)).output_class;
      GridRep pushed = std::get<GridRep>(base.output);
      for (CMat& m : pushed.images.at("x").samples) m = linalg::direct_sum(m, linalg::zeros(1, 1));
      pushed.images.at("x").dim += 1;
      return std::vector<int>{embedded_then_boundary, class_of_Q_rep(cell, pushed)};
    }));
  }
}

}  // namespace

report::Report invariance_suite(const CellDiagram& cell, const SuiteOptions& opts) {
  report::Report rep;
  rep.suite = "invariance-" + cell.name;
  rep.convention["cell"] = cell.name;
  rep.convention["model"] = model_name(cell.model);
  rep.convention["sign"] = cell.convention;
  rep.convention["trials"] = opts.trials;
  rep.convention["seed"] = opts.seed;
  if (cell.model == ModelKind::ConeGrid) {
    rep.convention["grid"] = opts.grid;
    rep.convention["dim"] = opts.dim;
  }
  if (cell.model == ModelKind::Toeplitz) index_trials(rep, opts);
  else exponential_trials(rep, opts);
  return rep;
}

}  // namespace nccell::bnd
