#include "nccell/rep.hpp"

#include <algorithm>
#include <cmath>

namespace nccell::reps {

using linalg::Complex;
using linalg::SpectralFn;

const CMat& Rep::at(const std::string& generator) const {
  const auto it = images.find(generator);
  if (it == images.end()) throw std::invalid_argument("representation has no image for " + generator);
  return it->second;
}

Rep make_rep(std::shared_ptr<const pres::Presentation> p, std::map<std::string, CMat> images) {
  if (!p) throw std::invalid_argument("make_rep: no presentation");
  Rep rep;
  rep.presentation = std::move(p);
  rep.dim = -1;
  for (const auto& g : rep.presentation->generators) {
    const auto it = images.find(g);
    if (it == images.end()) throw std::invalid_argument("make_rep: missing image for generator " + g);
    const CMat& m = it->second;
    if (m.rows() != m.cols()) throw std::invalid_argument("make_rep: image of " + g + " is not square");
    if (rep.dim < 0) rep.dim = m.rows();
    if (m.rows() != rep.dim) throw std::invalid_argument("make_rep: images have different sizes");
    linalg::require_finite(m, "make_rep");
  }
  for (const auto& [name, m] : images) {
    const auto& gens = rep.presentation->generators;
    if (std::find(gens.begin(), gens.end(), name) == gens.end()) {
      throw std::invalid_argument("make_rep: " + name + " is not a generator of " + rep.presentation->name);
    }
  }
  if (rep.dim < 0) rep.dim = 0;
  rep.images = std::move(images);
  return rep;
}

Rep make_rep(std::string_view algebra, std::map<std::string, CMat> images) {
  return make_rep(pres::registry_shared(algebra), std::move(images));
}

Rep zero_rep(std::string_view algebra, Index d) {
  const auto p = pres::registry_shared(algebra);
  std::map<std::string, CMat> images;
  for (const auto& g : p->generators) images.emplace(g, linalg::zeros(d, d));
  return make_rep(p, std::move(images));
}

namespace {

CMat eval_flat(const StarExpr& e, const Rep& rep) {
  using K = StarExpr::Kind;
  const Index d = rep.dim;
  switch (e.kind()) {
    case K::Generator:
      return rep.at(e.name());
    case K::Unit:
      return linalg::identity(d);
    case K::Scalar:
      return e.value().to_complex() * linalg::identity(d);
    case K::Sum:
      return eval_flat(e.lhs(), rep) + eval_flat(e.rhs(), rep);
    case K::Difference:
      return eval_flat(e.lhs(), rep) - eval_flat(e.rhs(), rep);
    case K::Product:
      return eval_flat(e.lhs(), rep) * eval_flat(e.rhs(), rep);
    case K::Negation:
      return -eval_flat(e.operand(), rep);
    case K::Adjoint:
      return eval_flat(e.operand(), rep).adjoint();
    case K::Block:
      break;
  }
  throw std::logic_error("eval_flat: block expression");
}

}  // namespace

CMat evaluate(const StarExpr& e, const Rep& rep) {
  if (!contains_block(e)) return eval_flat(e, rep);
  const ExprMatrix m = expand_blocks(e);
  const Index d = rep.dim;
  CMat out(static_cast<Index>(m.rows) * d, static_cast<Index>(m.cols) * d);
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j)
      out.block(static_cast<Index>(i) * d, static_cast<Index>(j) * d, d, d) = eval_flat(m.at(i, j), rep);
  return out;
}

RelationReport check_relations(const Rep& rep, double tol) {
  RelationReport report;
  report.tol = tol;
  double worst = -1;
  for (const auto& r : rep.presentation->expanded) {
    double residual = 0;
    const CMat lhs = evaluate(r.lhs, rep);
    switch (r.kind) {
      case pres::RelKind::Eq: {
        const CMat rhs = evaluate(r.rhs, rep);
        if (lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols()) {
          throw ShapeError("relation " + r.to_string() + " evaluates to different shapes");
        }
        residual = linalg::op_norm(lhs - rhs);
        break;
      }
      case pres::RelKind::Range01: {
        if (lhs.rows() != lhs.cols()) throw ShapeError("range01 operand is not square");
        const CMat herm = (lhs + lhs.adjoint()) * 0.5;
        const linalg::RVec ev = linalg::herm_eig(herm).values;
        residual = std::max({0.0, linalg::op_norm(lhs - herm)});
        if (ev.size() > 0) residual = std::max({residual, -ev.minCoeff(), ev.maxCoeff() - 1.0});
        break;
      }
      case pres::RelKind::NormLe:
        residual = std::max(0.0, linalg::op_norm(lhs) - r.bound.get_d());
        break;
      default:
        throw std::logic_error("check_relations: unexpanded relation " + r.to_string());
    }
    report.residuals.push_back({r.to_string(), residual});
    if (residual > worst) {
      worst = residual;
      report.worst = static_cast<int>(report.residuals.size()) - 1;
    }
    if (!(residual <= tol)) report.pass = false;
  }
  return report;
}

double projection_residual(const CMat& p) {
  return std::max(linalg::op_norm(p * p - p), linalg::op_norm(p - p.adjoint()));
}

double positive_contraction_residual(const CMat& l) {
  const CMat herm = (l + l.adjoint()) * 0.5;
  double out = linalg::op_norm(l - herm);
  if (l.rows() == 0) return out;
  const linalg::RVec ev = linalg::herm_eig(herm).values;
  return std::max({out, -ev.minCoeff(), ev.maxCoeff() - 1.0});
}

CMat support_projection(const CMat& h) {
  const Index d = h.rows();
  if (d == 0) return h;
  const double norm = linalg::op_norm(h);
  if (norm == 0) return linalg::zeros(d, d);
  const linalg::HermEig eig = linalg::herm_eig((h + h.adjoint()) * 0.5);
  CMat r = linalg::zeros(d, d);
  for (Index i = 0; i < d; ++i) {
    if (eig.values(i) > 1e-8 * norm) r += eig.vectors.col(i) * eig.vectors.col(i).adjoint();
  }
  return (r + r.adjoint()) * 0.5;
}

namespace {

void require_projection(const CMat& p, const char* what) {
  if (p.rows() != p.cols()) throw std::invalid_argument(std::string(what) + ": not square");
  if (projection_residual(p) > 1e-10) throw std::invalid_argument(std::string(what) + ": not a projection");
}

CMat herm(const CMat& m) { return (m + m.adjoint()) * 0.5; }

}  // namespace

Rep qc_rep_from_projections(const CMat& p, const CMat& q) {
  require_projection(p, "qc_rep_from_projections p");
  require_projection(q, "qc_rep_from_projections q");
  if (p.rows() != q.rows()) throw std::invalid_argument("qc_rep_from_projections: size mismatch");
  const CMat c = linalg::identity(p.rows()) - p;
  return make_rep("qC", {{"h0", herm(p - p * q * p)}, {"k0", herm(c * q * c)}, {"x0", c * q * p}});
}

Rep p_rep_from_pair(const CMat& p, const CMat& l) {
  require_projection(p, "p_rep_from_pair p");
  if (l.rows() != p.rows() || l.cols() != p.cols()) throw std::invalid_argument("p_rep_from_pair: size mismatch");
  if (positive_contraction_residual(l) > 1e-10) {
    throw std::invalid_argument("p_rep_from_pair: l is not a positive contraction");
  }
  const CMat c = linalg::identity(p.rows()) - p;
  return make_rep("P", {{"h", herm(p - p * l * p)}, {"k", herm(c * l * c)}, {"x", c * l * p}});
}

Rep g2st_rep_from_contraction(const CMat& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("g2st_rep_from_contraction: not square");
  if (linalg::op_norm(a) > 1 + 1e-10) throw std::invalid_argument("g2st_rep_from_contraction: norm exceeds 1");
  const CMat one = linalg::identity(a.rows());
  const CMat h = herm(one - a.adjoint() * a);
  const CMat k = herm(one - a * a.adjoint());
  return make_rep("G2st", {{"h", h}, {"k", k}, {"x", a * linalg::herm_funcalc(h, SpectralFn::SqrtClamped)}});
}

Rep factory_rep(std::string_view algebra, Index d, std::uint64_t seed) {
  linalg::Rng rng(seed, 0x7265707300ULL);
  auto rank = [&] { return static_cast<Index>(rng.next_u64() % static_cast<std::uint64_t>(d + 1)); };
  const std::uint64_t s1 = rng.next_u64(), s2 = rng.next_u64();
  const CMat one = linalg::identity(d);
  if (algebra == "G2st") return g2st_rep_from_contraction(linalg::random_contraction(d, s1, false));
  if (algebra == "G2nc") {
    const Rep g = g2st_rep_from_contraction(linalg::random_contraction(d, s1, false));
    return make_rep("G2nc", {{"a", one - g.at("h")}, {"b", g.at("k")}, {"c", g.at("x")}});
  }
  if (algebra == "qC") {
    const Index rp = rank(), rq = rank();
    return qc_rep_from_projections(linalg::random_projection(d, rp, s1), linalg::random_projection(d, rq, s2));
  }
  if (algebra == "P") {
    const Index rp = rank();
    return p_rep_from_pair(linalg::random_projection(d, rp, s1), linalg::random_contraction(d, s2, true));
  }
  if (algebra == "CFreeC") {
    const Index rp = rank(), rq = rank();
    return make_rep("CFreeC", {{"p0", linalg::random_projection(d, rp, s1)}, {"q0", linalg::random_projection(d, rq, s2)}});
  }
  if (algebra == "CFreeC01") {
    const Index rp = rank();
    return make_rep("CFreeC01",
                    {{"p", linalg::random_projection(d, rp, s1)}, {"l", linalg::random_contraction(d, s2, true)}});
  }
  if (algebra == "C0_01") return make_rep("C0_01", {{"x", linalg::random_unitary(d, s1) - one}});
  if (algebra == "D") return make_rep("D", {{"y", linalg::random_contraction(d, s1, false) - one}});
  throw std::invalid_argument("factory_rep: no factory for " + std::string(algebra));
}

Rep conjugate(const Rep& rep, const CMat& u) {
  std::map<std::string, CMat> images;
  for (const auto& [g, m] : rep.images) images.emplace(g, u.adjoint() * m * u);
  return make_rep(rep.presentation, std::move(images));
}

Rep pad_zero(const Rep& rep, Index extra) {
  std::map<std::string, CMat> images;
  for (const auto& [g, m] : rep.images) images.emplace(g, linalg::direct_sum(m, linalg::zeros(extra, extra)));
  return make_rep(rep.presentation, std::move(images));
}

}  // namespace nccell::reps
