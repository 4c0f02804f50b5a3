#include "nccell/homotopy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace nccell::reps {

using linalg::SpectralFn;

namespace {

CMat blocks(const CMat& a, const CMat& b, const CMat& c, const CMat& d) {
  const Index n = a.rows();
  CMat out(2 * n, 2 * n);
  out << a, b, c, d;
  return out;
}

CMat sqrt_psd(const CMat& m) { return linalg::herm_funcalc((m + m.adjoint()) * 0.5, SpectralFn::SqrtClamped); }

void require_g2st(const Rep& rep) {
  if (rep.presentation->name != "G2st") throw std::invalid_argument("expected a G2st representation");
}

}  // namespace

Rep id_plus_eta(const Rep& g) {
  require_g2st(g);
  const CMat& h = g.at("h");
  const CMat& k = g.at("k");
  const CMat& x = g.at("x");
  return make_rep(g.presentation, {{"h", linalg::direct_sum(h, k)},
                                   {"k", linalg::direct_sum(k, h)},
                                   {"x", linalg::direct_sum(x, x.adjoint())}});
}

Rep null_homotopy_segment1(const Rep& g, double alpha) {
  require_g2st(g);
  if (!(alpha >= 0 && alpha <= 1)) throw std::out_of_range("null homotopy: alpha outside [0, 1]");
  const double beta = std::sqrt(1 - alpha * alpha);
  const CMat& h = g.at("h");
  const CMat& k = g.at("k");
  const CMat& x = g.at("x");
  const CMat X = blocks(alpha * x, -beta * sqrt_psd(x * x.adjoint()), beta * sqrt_psd(x.adjoint() * x),
                        alpha * x.adjoint());
  return make_rep(g.presentation, {{"h", linalg::direct_sum(h, k)}, {"k", linalg::direct_sum(k, h)}, {"x", X}});
}

Rep null_homotopy_segment2(const Rep& g, double gamma) {
  require_g2st(g);
  if (!(gamma >= 0 && gamma <= 1)) throw std::out_of_range("null homotopy: gamma outside [0, 1]");
  const CMat gh = gamma * g.at("h");
  const CMat gk = gamma * g.at("k");
  const CMat zero = linalg::zeros(gh.rows(), gh.cols());
  const CMat X = blocks(zero, -sqrt_psd(gk - gk * gk), sqrt_psd(gh - gh * gh), zero);
  return make_rep(g.presentation, {{"h", linalg::direct_sum(gh, gk)}, {"k", linalg::direct_sum(gk, gh)}, {"x", X}});
}

Rep null_homotopy_at(const Rep& g, double s) {
  if (!(s >= 0 && s <= 2)) throw std::out_of_range("null homotopy: s outside [0, 2]");
  if (s == 0) return id_plus_eta(g);
  if (s <= 1) return null_homotopy_segment1(g, 1 - s);
  return null_homotopy_segment2(g, 2 - s);
}

CMat partial_isometry_path(double t) {
  if (!(t >= 0 && t <= 1)) throw std::out_of_range("partial isometry path: t outside [0, 1]");
  // exact endpoints, so t = 0 and t = 1 reproduce the matrix units
  const double s = t == 1 ? 1.0 : std::sin(std::numbers::pi * t / 2);
  const double c = t == 1 ? 0.0 : std::cos(std::numbers::pi * t / 2);
  CMat w = linalg::zeros(2, 2);
  w(0, 0) = s;
  w(1, 0) = c;
  return w;
}

namespace {

Rep tensor_path(const Rep& rep, const std::string& h, const std::string& k, const std::string& x, double t) {
  const CMat w = partial_isometry_path(t);
  return make_rep(rep.presentation, {{h, linalg::kron(w.adjoint() * w, rep.at(h))},
                                     {k, linalg::kron(w * w.adjoint(), rep.at(k))},
                                     {x, linalg::kron(w, rep.at(x))}});
}

}  // namespace

Rep lambda_rho_homotopy_at(const Rep& g, double t) {
  require_g2st(g);
  return tensor_path(g, "h", "k", "x", t);
}

Rep lambda_rho_homotopy_qc_at(const Rep& q, double t) {
  if (q.presentation->name != "qC") throw std::invalid_argument("expected a qC representation");
  return tensor_path(q, "h0", "k0", "x0", t);
}

Extension reconstruct_extension(const Rep& rep) {
  if (rep.presentation->name != "P") throw std::invalid_argument("expected a P representation");
  const RelationReport pre = check_relations(rep, 1e-9);
  if (!pre.pass) {
    throw std::invalid_argument("reconstruct_extension: input fails " +
                                pre.residuals[static_cast<std::size_t>(pre.worst)].relation);
  }
  const CMat& h = rep.at("h");
  const CMat& k = rep.at("k");
  const CMat& x = rep.at("x");
  Extension e;
  e.r = support_projection(h);
  const CMat l = e.r - h + x + x.adjoint() + k;
  e.lhat = (l + l.adjoint()) * 0.5;
  e.spectrum_excess = rep.dim == 0 ? 0.0 : positive_contraction_residual(e.lhat);
  if (e.spectrum_excess > 1e-7) {
    throw std::invalid_argument("reconstruct_extension: lhat spectrum leaves [0, 1] by " +
                                std::to_string(e.spectrum_excess));
  }
  // theta formulas on (r, lhat), without the 1e-10 input gate of
  // p_rep_from_pair: r and lhat are only as good as the input rep
  const CMat c = linalg::identity(rep.dim) - e.r;
  const CMat h2 = e.r - e.r * e.lhat * e.r;
  const CMat k2 = c * e.lhat * c;
  const CMat x2 = c * e.lhat * e.r;
  e.roundtrip = std::max({linalg::op_norm(h2 - h), linalg::op_norm(k2 - k), linalg::op_norm(x2 - x)});
  return e;
}

}  // namespace nccell::reps
