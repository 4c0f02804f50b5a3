#pragma once

// Generator-image homomorphisms between presentations. A map from S to
// M_k(T) sends each generator of S to a k x k block expression over the
// generators of T; pulling back a representation of T of dimension d gives
// a representation of S of dimension k*d.

#include "nccell/rep.hpp"

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace nccell::reps {

struct GenMap {
  std::string name;
  std::shared_ptr<const pres::Presentation> source;
  std::shared_ptr<const pres::Presentation> target;
  std::size_t block = 1;
  std::map<std::string, StarExpr> images;
};

/// rho, lambda, eta, theta, theta0, eta1, eta_P, unit_to_nc, nc_to_unit,
/// id_e11, rho_lambda, id_e11_qC, rho_lambda_qC.
const GenMap& genmap_get(std::string_view name);
std::vector<std::string> genmap_names();

/// Builds and checks shapes and generator scopes.
GenMap make_genmap(std::string name, std::string_view source, std::string_view target, std::size_t block,
                   const std::map<std::string, std::string>& images);

/// Pullback of a target representation. Throws std::invalid_argument if the
/// input fails the target relations at pre_tol.
Rep apply_genmap(const GenMap& m, const Rep& target_rep, double pre_tol = 1e-8);

struct GenMapCertificate {
  struct Entry {
    std::string relation;
    bool symbolic = false;  // proved by rewriting modulo the target rules
    double residual = 0;    // worst numeric residual when not symbolic
  };
  std::vector<Entry> entries;
  bool holds = true;
};

/// Symbolic proof for each expanded source relation where the target rules
/// reduce it to zero; otherwise the worst residual over `trials` seeded
/// factory representations of the target, compared with `tol`.
GenMapCertificate certify_genmap(const GenMap& m, int trials = 10, Index d = 4, double tol = 1e-8);

}  // namespace nccell::reps
