#include "nccell/suites.hpp"

#include "nccell/boundary.hpp"
#include "nccell/embedded.hpp"
#include "nccell/genmap.hpp"
#include "nccell/homotopy.hpp"
#include "nccell/identity.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <map>

namespace nccell::suites {

using report::Case;
using report::Report;
using report::run_case;
using reps::Rep;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double tol_or(const Options& o, double fallback) { return o.tol.value_or(fallback); }

std::uint64_t trial_seed(const Options& o, int t) { return o.seed + static_cast<std::uint64_t>(t); }

std::string trial_name(int t) { return "trial-" + std::to_string(t); }

double rep_distance(const Rep& a, const Rep& b) {
  double worst = 0;
  for (const auto& [g, m] : a.images) worst = std::max(worst, linalg::op_norm(m - b.at(g)));
  return worst;
}

void base_convention(Report& r, const Options& o) {
  r.convention["seed"] = o.seed;
  r.convention["trials"] = o.trials;
  r.convention["dim"] = o.dim;
}

Report ideal_identities(const Options& o) {
  Report r;
  r.suite = "ideal-identities";
  r.convention["method"] = "normal form modulo the CFreeC01 rewrite rules; exact rational arithmetic";
  const auto file = ident::parse_identity_file(*embedded_source("identities/ideal.idt"));
  for (const auto& c : file.cases) {
    r.cases.push_back(run_case(c.label, o.seed, 0, [&](std::string& detail) {
      const ident::IdentityResult res = ident::check_identity(c);
      if (!res.holds) detail = "remainder " + res.difference;
      return res.holds ? 0.0 : 1.0;
    }));
  }
  return r;
}

Report homotopy_null(const Options& o) {
  Report r;
  r.suite = "homotopy-null";
  base_convention(r, o);
  const double path_tol = tol_or(o, 1e-7 * std::sqrt(static_cast<double>(o.dim)));
  r.convention["grid"] = "101 points on s in [0, 2]";
  r.convention["path_tol"] = path_tol;
  for (int t = 0; t < o.trials; ++t) {
    const std::uint64_t seed = trial_seed(o, t);
    const Rep g = reps::factory_rep("G2st", o.dim, seed);
    const std::string p = trial_name(t) + "/";
    r.cases.push_back(run_case(p + "path", seed, path_tol, [&] {
      double worst = 0;
      for (int i = 0; i <= 100; ++i) {
        worst = std::max(worst, reps::check_relations(reps::null_homotopy_at(g, 2.0 * i / 100), 0).worst_residual());
      }
      return worst;
    }));
    r.cases.push_back(run_case(p + "junction", seed, 1e-8, [&] {
      return rep_distance(reps::null_homotopy_segment1(g, 0), reps::null_homotopy_segment2(g, 1));
    }));
    r.cases.push_back(run_case(p + "start", seed, 1e-10, [&] {
      return rep_distance(reps::null_homotopy_at(g, 0), reps::id_plus_eta(g));
    }));
    r.cases.push_back(run_case(p + "end", seed, 1e-12, [&] {
      double worst = 0;
      for (const auto& [name, m] : reps::null_homotopy_at(g, 2).images) worst = std::max(worst, linalg::op_norm(m));
      return worst;
    }));
  }
  return r;
}

Report homotopy_lambda_rho(const Options& o) {
  Report r;
  r.suite = "homotopy-lambda-rho";
  base_convention(r, o);
  const double path_tol = tol_or(o, 1e-8);
  r.convention["grid"] = "101 points on t in [0, 1]";
  r.convention["path_tol"] = path_tol;
  struct Side {
    const char* algebra;
    const char* start_map;
    const char* end_map;
    std::function<Rep(const Rep&, double)> path;
  };
  const Side sides[] = {
      {"G2st", "rho_lambda", "id_e11", reps::lambda_rho_homotopy_at},
      {"qC", "rho_lambda_qC", "id_e11_qC", reps::lambda_rho_homotopy_qc_at},
  };
  for (int t = 0; t < o.trials; ++t) {
    const std::uint64_t seed = trial_seed(o, t);
    for (const Side& side : sides) {
      const Rep g = reps::factory_rep(side.algebra, o.dim, seed);
      const std::string p = trial_name(t) + "/" + side.algebra + "/";
      r.cases.push_back(run_case(p + "path", seed, path_tol, [&] {
        double worst = 0;
        for (int i = 0; i <= 100; ++i) worst = std::max(worst, reps::check_relations(side.path(g, i / 100.0), 0).worst_residual());
        return worst;
      }));
      r.cases.push_back(run_case(p + "start", seed, 1e-10, [&] {
        return rep_distance(side.path(g, 0), reps::apply_genmap(reps::genmap_get(side.start_map), g));
      }));
      r.cases.push_back(run_case(p + "end", seed, 1e-10, [&] {
        return rep_distance(side.path(g, 1), reps::apply_genmap(reps::genmap_get(side.end_map), g));
      }));
    }
  }
  return r;
}

Report unitization_iso(const Options& o) {
  Report r;
  r.suite = "unitization-iso";
  base_convention(r, o);
  const double tol = tol_or(o, 1e-12);
  for (const char* name : {"unit_to_nc", "nc_to_unit"}) {
    r.cases.push_back(run_case(std::string("certify/") + name, o.seed, 0, [&](std::string& detail) {
      const auto cert = reps::certify_genmap(reps::genmap_get(name), 5, 3);
      int symbolic = 0;
      for (const auto& e : cert.entries) symbolic += e.symbolic ? 1 : 0;
      detail = std::to_string(symbolic) + "/" + std::to_string(cert.entries.size()) + " relations symbolic";
      double worst = 0;
      for (const auto& e : cert.entries) worst = std::max(worst, e.symbolic ? 0.0 : e.residual);
      return cert.holds ? worst : kInf;
    }));
  }
  const reps::GenMap& to_nc = reps::genmap_get("unit_to_nc");
  const reps::GenMap& to_unit = reps::genmap_get("nc_to_unit");
  for (int t = 0; t < o.trials; ++t) {
    const std::uint64_t seed = trial_seed(o, t);
    r.cases.push_back(run_case(trial_name(t) + "/roundtrip-nc", seed, tol, [&] {
      const Rep nc = reps::factory_rep("G2nc", o.dim, seed);
      return rep_distance(reps::apply_genmap(to_unit, reps::apply_genmap(to_nc, nc)), nc);
    }));
    r.cases.push_back(run_case(trial_name(t) + "/roundtrip-st", seed, tol, [&] {
      const Rep st = reps::factory_rep("G2st", o.dim, seed);
      return rep_distance(reps::apply_genmap(to_nc, reps::apply_genmap(to_unit, st)), st);
    }));
  }
  return r;
}

Report index_cell(const Options& o) {
  Report r;
  r.suite = "index-cell";
  const double tol = tol_or(o, 1e-9);
  r.convention["sign"] = bnd::index_cell().convention;
  r.convention["drift_tol"] = tol;
  std::vector<std::pair<std::string, toep::LaurentPoly>> inputs;
  for (int w = -3; w <= 3; ++w) {
    inputs.emplace_back(w == 1 ? "z" : "z^" + std::to_string(w), toep::LaurentPoly::scalar_monomial(1.0, w));
  }
  for (int rk = 1; rk <= 2; ++rk) {
    inputs.emplace_back("bott(" + std::to_string(rk) + ",2)", toep::LaurentPoly::bott(rk, 2));
  }
  const bnd::ToeplitzModel model;
  for (const auto& [name, u] : inputs) {
    r.cases.push_back(run_case(name, o.seed, tol, [&](std::string& detail) {
      const bnd::BoundaryResult b = bnd::boundary_map(bnd::index_cell(), model, u);
      const int oracle = toep::fredholm_oracle(u);
      const int expected = bnd::index_cell().sign * bnd::symbol_winding(u);
      detail = "class " + std::to_string(b.output_class) + ", oracle " + std::to_string(oracle) + ", corner " +
               std::to_string(b.diag.corner);
      if (b.output_class != oracle || b.output_class != expected || b.diag.relation_residual > 1e-7) return kInf;
      return b.diag.drift;
    }));
  }
  return r;
}

Report exp_cell(const Options& o) {
  Report r;
  r.suite = "exp-cell";
  base_convention(r, o);
  const double tol = tol_or(o, 1e-8);
  r.convention["sign"] = bnd::exponential_cell().convention;
  r.convention["grid"] = o.grid;
  r.convention["unitarity_tol"] = tol;
  r.convention["drift_tol"] = 1e-6;
  for (int t = 0; t < o.trials; ++t) {
    const std::uint64_t seed = trial_seed(o, t);
    const linalg::Index d = 1 + static_cast<linalg::Index>(seed % static_cast<std::uint64_t>(std::max<linalg::Index>(o.dim, 1)));
    r.cases.push_back(run_case(trial_name(t), seed, tol, [&](std::string& detail) {
      const Rep q = reps::factory_rep("qC", d, seed);
      const cone::ExpBoundary e = cone::exp_boundary_u(q, o.grid);
      const cone::ExpBoundary e2 = cone::exp_boundary_u(q, 2 * e.grid);
      const double trace = (linalg::trace(q.at("k0")) - linalg::trace(q.at("h0"))).real();
      detail = "d " + std::to_string(d) + ", class " + std::to_string(e.cls) + ", trace " + std::to_string(std::lround(trace)) +
               ", doubled " + std::to_string(e2.cls) + ", grid " + std::to_string(e.grid);
      if (e.cls != std::lround(trace) || e2.cls != e.cls || e.wind.drift > 1e-6) return kInf;
      return std::max(e.loop.unitarity, e.loop.endpoint);
    }));
  }
  return r;
}

Report cone_cell(const Options& o) {
  Report r;
  r.suite = "cone-cell";
  r.convention["loop"] = "exp(2 pi i t p) on a 256-point grid";
  r.convention["seed"] = o.seed;
  for (linalg::Index n = 1; n <= 6; ++n) {
    for (linalg::Index rk = 0; rk <= n; ++rk) {
      const std::uint64_t seed = o.seed + static_cast<std::uint64_t>(10 * n + rk);
      r.cases.push_back(run_case("n" + std::to_string(n) + "-r" + std::to_string(rk), seed, 0, [&](std::string& detail) {
        const cone::ConeCell c = cone::cone_cell_check(linalg::random_projection(n, rk, seed));
        detail = "in " + std::to_string(c.class_in) + ", out " + std::to_string(c.class_out);
        return static_cast<double>(std::abs(c.class_in - rk) + std::abs(c.class_out - rk));
      }));
    }
  }
  return r;
}

Report exactness_reconstruction(const Options& o) {
  Report r;
  r.suite = "exactness-reconstruction";
  base_convention(r, o);
  const double tol = tol_or(o, 1e-7);
  r.convention["tol"] = tol;
  for (int t = 0; t < o.trials; ++t) {
    const std::uint64_t seed = trial_seed(o, t);
    const linalg::Index d = 1 + static_cast<linalg::Index>(seed % static_cast<std::uint64_t>(std::max<linalg::Index>(o.dim, 1)));
    r.cases.push_back(run_case(trial_name(t), seed, tol, [&](std::string& detail) {
      const reps::Extension e = reps::reconstruct_extension(reps::factory_rep("P", d, seed));
      detail = "d " + std::to_string(d);
      return std::max(e.spectrum_excess, e.roundtrip);
    }));
  }
  return r;
}

Report stability(const Options& o) {
  Report r;
  r.suite = "stability";
  base_convention(r, o);
  r.convention["grid"] = o.grid;
  const bnd::SuiteOptions so{o.trials, o.seed, o.dim, o.grid};
  for (const bnd::CellDiagram* cell : {&bnd::index_cell(), &bnd::exponential_cell()}) {
    const Report inner = bnd::invariance_suite(*cell, so);
    r.cases.insert(r.cases.end(), inner.cases.begin(), inner.cases.end());
  }
  return r;
}

using SuiteFn = Report (*)(const Options&);

const std::vector<std::pair<std::string, SuiteFn>>& table() {
  static const std::vector<std::pair<std::string, SuiteFn>> t = {
      {"ideal-identities", ideal_identities},
      {"homotopy-null", homotopy_null},
      {"homotopy-lambda-rho", homotopy_lambda_rho},
      {"unitization-iso", unitization_iso},
      {"index-cell", index_cell},
      {"exp-cell", exp_cell},
      {"cone-cell", cone_cell},
      {"exactness-reconstruction", exactness_reconstruction},
      {"stability", stability},
  };
  return t;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [n, f] : table()) out.push_back(n);
    return out;
  }();
  return names;
}

Report run_suite(std::string_view name, const Options& opts) {
  if (name == "all") {
    Report all;
    all.suite = "all";
    base_convention(all, opts);
    all.convention["grid"] = opts.grid;
    for (const auto& [n, f] : table()) all.absorb(f(opts));
    return all;
  }
  for (const auto& [n, f] : table())
    if (n == name) return f(opts);
  throw std::invalid_argument("unknown suite " + std::string(name));
}

}  // namespace nccell::suites
