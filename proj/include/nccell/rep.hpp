#pragma once

// Matrix representations of presentations, with relation residuals and
// seeded factories.

#include "nccell/linalg.hpp"
#include "nccell/presentation.hpp"

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace nccell::reps {

using linalg::CMat;
using linalg::Index;

struct Rep {
  std::shared_ptr<const pres::Presentation> presentation;
  Index dim = 0;
  std::map<std::string, CMat> images;

  const CMat& at(const std::string& generator) const;
};

/// Checks that every generator has a square image of one common size.
Rep make_rep(std::shared_ptr<const pres::Presentation> p, std::map<std::string, CMat> images);
Rep make_rep(std::string_view algebra, std::map<std::string, CMat> images);
Rep zero_rep(std::string_view algebra, Index d);

/// The unit evaluates to the identity; blocks are assembled. Throws
/// ShapeError on inconsistent shapes.
CMat evaluate(const StarExpr& e, const Rep& rep);

struct RelationResidual {
  std::string relation;
  double residual = 0;
};

struct RelationReport {
  std::vector<RelationResidual> residuals;  // one per expanded relation
  double tol = 0;
  bool pass = true;
  int worst = -1;  // index into residuals, -1 when there are none

  double worst_residual() const { return worst < 0 ? 0.0 : residuals[static_cast<std::size_t>(worst)].residual; }
};

/// eq(E, F): ||E - F||. range01(E): max(0, -lambda_min, lambda_max - 1) of
/// the Hermitian part, or the Hermitian defect if that is larger.
/// normle(E, c): max(0, ||E|| - c).
RelationReport check_relations(const Rep& rep, double tol);

/// ||p^2 - p|| and ||p - p*||, whichever is larger.
double projection_residual(const CMat& p);
/// Defect from being a positive contraction.
double positive_contraction_residual(const CMat& l);
/// Support projection: spectral projection onto eigenvalues above
/// 1e-8 * ||h||.
CMat support_projection(const CMat& h);

// Factories. Each throws std::invalid_argument when its inputs fail the
// stated precondition at 1e-10.
Rep qc_rep_from_projections(const CMat& p, const CMat& q);
Rep p_rep_from_pair(const CMat& p, const CMat& l);
Rep g2st_rep_from_contraction(const CMat& a);

/// Seeded factory input for any shipped algebra, dimension d.
Rep factory_rep(std::string_view algebra, Index d, std::uint64_t seed);

/// Unitary conjugation u* rep u, and rep (+) 0_extra.
Rep conjugate(const Rep& rep, const CMat& u);
Rep pad_zero(const Rep& rep, Index extra);

}  // namespace nccell::reps
