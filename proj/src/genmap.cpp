#include "nccell/genmap.hpp"

#include "nccell/identity.hpp"

#include <mutex>
#include <set>

namespace nccell::reps {

GenMap make_genmap(std::string name, std::string_view source, std::string_view target, std::size_t block,
                   const std::map<std::string, std::string>& images) {
  GenMap m;
  m.name = std::move(name);
  m.source = pres::registry_shared(source);
  m.target = pres::registry_shared(target);
  m.block = block;
  const std::set<std::string> target_gens(m.target->generators.begin(), m.target->generators.end());
  for (const auto& g : m.source->generators) {
    const auto it = images.find(g);
    if (it == images.end()) throw std::invalid_argument(m.name + ": no image for " + g);
    StarExpr e = parse_expression(it->second);
    std::set<std::string> used;
    collect_generators(e, used);
    for (const auto& u : used)
      if (!target_gens.count(u)) throw std::invalid_argument(m.name + ": " + u + " is not a generator of " + m.target->name);
    const ExprMatrix shape = expand_blocks(e);
    const bool ok = block == 1 ? (shape.rows == 1 && shape.cols == 1) : (shape.rows == block && shape.cols == block);
    if (!ok) throw ShapeError(m.name + ": image of " + g + " is not " + std::to_string(block) + "x" + std::to_string(block));
    m.images.emplace(g, std::move(e));
  }
  if (images.size() != m.source->generators.size()) throw std::invalid_argument(m.name + ": extra images");
  return m;
}

namespace {

struct MapSpec {
  const char* name;
  const char* source;
  const char* target;
  std::size_t block;
  std::map<std::string, std::string> images;
};

const std::vector<MapSpec>& specs() {
  static const std::vector<MapSpec> kSpecs = {
      {"rho", "G2st", "qC", 1, {{"h", "h0"}, {"k", "k0"}, {"x", "x0"}}},
      {"lambda", "qC", "G2st", 2, {{"h0", "[[h, 0], [0, 0]]"}, {"k0", "[[0, 0], [0, k]]"}, {"x0", "[[0, 0], [x, 0]]"}}},
      {"eta", "G2st", "G2st", 1, {{"h", "k"}, {"k", "h"}, {"x", "adj(x)"}}},
      {"theta", "P", "CFreeC01", 1, {{"h", "p - p*l*p"}, {"k", "(1 - p)*l*(1 - p)"}, {"x", "(1 - p)*l*p"}}},
      {"theta0", "qC", "CFreeC", 1,
       {{"h0", "p0 - p0*q0*p0"}, {"k0", "(1 - p0)*q0*(1 - p0)"}, {"x0", "(1 - p0)*q0*p0"}}},
      {"eta1", "CFreeC01", "CFreeC", 1, {{"p", "p0"}, {"l", "q0"}}},
      {"eta_P", "P", "qC", 1, {{"h", "h0"}, {"k", "k0"}, {"x", "x0"}}},
      {"unit_to_nc", "G2st", "G2nc", 1, {{"h", "1 - a"}, {"k", "b"}, {"x", "c"}}},
      {"nc_to_unit", "G2nc", "G2st", 1, {{"a", "1 - h"}, {"b", "k"}, {"c", "x"}}},
      {"id_e11", "G2st", "G2st", 2, {{"h", "[[h, 0], [0, 0]]"}, {"k", "[[k, 0], [0, 0]]"}, {"x", "[[x, 0], [0, 0]]"}}},
      {"rho_lambda", "G2st", "G2st", 2, {{"h", "[[h, 0], [0, 0]]"}, {"k", "[[0, 0], [0, k]]"}, {"x", "[[0, 0], [x, 0]]"}}},
      {"id_e11_qC", "qC", "qC", 2, {{"h0", "[[h0, 0], [0, 0]]"}, {"k0", "[[k0, 0], [0, 0]]"}, {"x0", "[[x0, 0], [0, 0]]"}}},
      {"rho_lambda_qC", "qC", "qC", 2,
       {{"h0", "[[h0, 0], [0, 0]]"}, {"k0", "[[0, 0], [0, k0]]"}, {"x0", "[[0, 0], [x0, 0]]"}}},
  };
  return kSpecs;
}

}  // namespace

const GenMap& genmap_get(std::string_view name) {
  static std::mutex mu;
  static std::map<std::string, GenMap, std::less<>> cache;
  std::lock_guard<std::mutex> lock(mu);
  if (const auto it = cache.find(name); it != cache.end()) return it->second;
  for (const auto& s : specs()) {
    if (s.name != name) continue;
    return cache.emplace(s.name, make_genmap(s.name, s.source, s.target, s.block, s.images)).first->second;
  }
  throw std::invalid_argument("unknown map " + std::string(name));
}

std::vector<std::string> genmap_names() {
  std::vector<std::string> out;
  for (const auto& s : specs()) out.emplace_back(s.name);
  return out;
}

Rep apply_genmap(const GenMap& m, const Rep& target_rep, double pre_tol) {
  if (target_rep.presentation->name != m.target->name) {
    throw std::invalid_argument(m.name + ": expects a representation of " + m.target->name + ", got " +
                                target_rep.presentation->name);
  }
  const RelationReport pre = check_relations(target_rep, pre_tol);
  if (!pre.pass) {
    throw std::invalid_argument(m.name + ": input fails " + pre.residuals[static_cast<std::size_t>(pre.worst)].relation +
                                " (residual " + std::to_string(pre.worst_residual()) + ")");
  }
  std::map<std::string, CMat> images;
  for (const auto& [g, e] : m.images) images.emplace(g, evaluate(e, target_rep));
  return make_rep(m.source, std::move(images));
}

GenMapCertificate certify_genmap(const GenMap& m, int trials, Index d, double tol) {
  GenMapCertificate cert;
  const sym::RewriteSystem& rules = ident::rules_get(m.target->name);
  std::vector<Rep> samples;
  for (int t = 0; t < trials; ++t) {
    samples.push_back(apply_genmap(m, factory_rep(m.target->name, d, static_cast<std::uint64_t>(t)), 1e-8));
  }
  for (std::size_t i = 0; i < m.source->expanded.size(); ++i) {
    const pres::Relation& r = m.source->expanded[i];
    GenMapCertificate::Entry entry;
    entry.relation = r.to_string();
    if (r.kind == pres::RelKind::Eq) {
      const StarExpr diff = StarExpr::difference(substitute(r.lhs, m.images), substitute(r.rhs, m.images));
      entry.symbolic = sym::normal_form(sym::to_poly_matrix(diff, rules.alphabet()), rules).is_zero();
    }
    if (!entry.symbolic) {
      for (const Rep& s : samples) {
        entry.residual = std::max(entry.residual, check_relations(s, tol).residuals[i].residual);
      }
      if (!(entry.residual <= tol)) cert.holds = false;
    }
    cert.entries.push_back(std::move(entry));
  }
  return cert;
}

}  // namespace nccell::reps
