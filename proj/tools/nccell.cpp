// nccell: parse presentations, prove identities, run verification suites
// and compute boundary classes.

#include "CLI11.hpp"
#include "json.hpp"

#include "nccell/boundary.hpp"
#include "nccell/embedded.hpp"
#include "nccell/identity.hpp"
#include "nccell/presentation.hpp"
#include "nccell/suites.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

using namespace nccell;

namespace {

constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_source(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (in) {
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  // shipped files are also compiled in
  if (const auto text = embedded_source(path)) return std::string(*text);
  throw UsageError("cannot read " + path);
}

int emit(const report::Report& r, const std::string& json_path) {
  if (json_path.empty()) {
    std::cout << r.to_text();
  } else if (json_path == "-") {
    std::cout << r.to_json().dump(2) << "\n";
  } else {
    std::ofstream out(json_path);
    if (!out) throw UsageError("cannot write " + json_path);
    out << r.to_json().dump(2) << "\n";
    std::cout << r.to_text();
  }
  return r.ok() ? 0 : 1;
}

int cmd_parse(const std::string& file, bool json) {
  std::string text;
  try {
    text = read_source(file);
  } catch (const UsageError&) {
    // a registry name works too
    try {
      text = print_presentation(pres::registry_get(file));
    } catch (const std::invalid_argument&) {
      throw UsageError("cannot read " + file + " and it is not a registered algebra");
    }
  }
  try {
    const pres::Presentation p = pres::parse_presentation(text);
    if (json) {
      nlohmann::ordered_json j;
      j["name"] = p.name;
      j["unital"] = p.unital;
      j["generators"] = p.generators;
      auto rels = nlohmann::ordered_json::array();
      for (const auto& r : p.expanded) rels.push_back(r.to_string());
      j["expanded"] = rels;
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << print_presentation(p);
    }
    return 0;
  } catch (const ParseError& e) {
    std::cerr << file << ":" << e.line() << ":" << e.column() << ": " << e.what() << "\n";
  } catch (const pres::PresentationError& e) {
    for (const auto& d : e.diagnostics()) std::cerr << file << ": " << d.path << ": " << d.message << "\n";
  }
  return 1;
}

int cmd_prove(const std::string& file, const std::string& json_path) {
  const std::string text = read_source(file);
  report::Report r;
  r.suite = "prove";
  r.convention["file"] = file;
  r.convention["method"] = "normal form modulo the named rewrite rules; exact rational arithmetic";
  try {
    for (const auto& c : ident::parse_identity_file(text).cases) {
      r.cases.push_back(report::run_case(c.label, 0, 0, [&](std::string& detail) {
        const ident::IdentityResult res = ident::check_identity(c);
        detail = res.holds ? "modulo " + c.rules : "remainder " + res.difference;
        return res.holds ? 0.0 : 1.0;
      }));
    }
  } catch (const ParseError& e) {
    std::cerr << file << ":" << e.line() << ":" << e.column() << ": " << e.what() << "\n";
    return 1;
  }
  return emit(r, json_path);
}

report::Report boundary_index(const std::string& symbol) {
  toep::LaurentPoly u;
  try {
    u = toep::parse_symbol(symbol);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const bnd::CellDiagram& cell = bnd::index_cell();
  report::Report r;
  r.suite = "boundary-index";
  r.convention["cell"] = cell.name;
  r.convention["sign"] = cell.convention;
  r.convention["symbol"] = symbol;
  std::optional<bnd::BoundaryResult> res;
  r.cases.push_back(report::run_case("class", 0, 1e-9, [&](std::string& detail) {
    res = bnd::boundary_map(cell, bnd::ToeplitzModel{}, u);
    const int oracle = toep::fredholm_oracle(u);
    detail = "class " + std::to_string(res->output_class) + ", oracle " + std::to_string(oracle);
    return res->output_class == oracle ? res->diag.drift : std::numeric_limits<double>::infinity();
  }));
  if (res) {
    r.convention["corner"] = res->diag.corner;
    r.result = {{"input_class", res->input_class},
                {"class", res->output_class},
                {"relation_residual", res->diag.relation_residual}};
  }
  return r;
}

report::Report boundary_exp(const suites::Options& o) {
  const bnd::CellDiagram& cell = bnd::exponential_cell();
  report::Report r;
  r.suite = "boundary-exp";
  r.convention["cell"] = cell.name;
  r.convention["sign"] = cell.convention;
  r.convention["dim"] = o.dim;
  r.convention["seed"] = o.seed;
  std::optional<bnd::BoundaryResult> res;
  r.cases.push_back(report::run_case("class", o.seed, o.tol.value_or(1e-8), [&](std::string& detail) {
    const reps::Rep q = reps::factory_rep("qC", o.dim, o.seed);
    res = bnd::boundary_map(cell, bnd::ConeGridModel{o.grid}, q);
    detail = "class " + std::to_string(res->output_class) + ", trace " + std::to_string(res->input_class);
    if (res->output_class != res->input_class) return std::numeric_limits<double>::infinity();
    return res->diag.unitarity;
  }));
  if (res) {
    r.convention["grid"] = res->diag.grid;
    r.result = {{"input_class", res->input_class}, {"class", res->output_class}};
  }
  return r;
}

report::Report boundary_cone(const suites::Options& o, linalg::Index rank) {
  report::Report r;
  r.suite = "boundary-cone";
  r.convention["dim"] = o.dim;
  r.convention["rank"] = rank;
  r.convention["seed"] = o.seed;
  if (rank < 0 || rank > o.dim) throw UsageError("--rank must lie in [0, --dim]");
  std::optional<cone::ConeCell> res;
  r.cases.push_back(report::run_case("class", o.seed, 0, [&](std::string& detail) {
    res = cone::cone_cell_check(linalg::random_projection(o.dim, rank, o.seed));
    detail = "in " + std::to_string(res->class_in) + ", out " + std::to_string(res->class_out);
    return static_cast<double>(std::abs(res->class_in - res->class_out));
  }));
  if (res) r.result = {{"class_in", res->class_in}, {"class_out", res->class_out}};
  return r;
}

void add_suite_flags(CLI::App* app, suites::Options& o, std::optional<double>& tol) {
  app->add_option("--trials", o.trials, "trials per suite")->check(CLI::PositiveNumber);
  app->add_option("--dim", o.dim, "matrix dimension")->check(CLI::PositiveNumber);
  app->add_option("--tol", tol, "tolerance override");
  app->add_option("--grid", o.grid, "grid size")->check(CLI::PositiveNumber);
  app->add_option("--seed", o.seed, "random seed");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nccell: noncommutative cells and K-theory boundary maps"};
  app.require_subcommand(1);

  std::string file;
  bool parse_json = false;
  auto* parse = app.add_subcommand("parse", "parse and validate a presentation, print its canonical form");
  parse->add_option("FILE", file, "a .ncp file or a registered algebra name")->required();
  parse->add_flag("--json", parse_json, "print generators and expanded relations as JSON");

  std::string json_path;
  auto* prove = app.add_subcommand("prove", "prove the identities of an identity file symbolically");
  prove->add_option("FILE", file, "an .idt file")->required();
  prove->add_option("--json", json_path, "write the JSON report to PATH ('-' for stdout)");

  suites::Options opts;
  std::optional<double> tol;
  std::string suite;
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  std::vector<std::string> choices = suites::suite_names();
  choices.push_back("all");
  verify->add_option("SUITE", suite, "suite name")->required()->check(CLI::IsMember(choices));
  add_suite_flags(verify, opts, tol);
  verify->add_option("--json", json_path, "write the JSON report to PATH ('-' for stdout)");

  auto* boundary = app.add_subcommand("boundary", "compute a boundary class");
  boundary->require_subcommand(1);
  std::string symbol;
  auto* b_index = boundary->add_subcommand("index", "index map of a unitary Laurent symbol");
  b_index->add_option("--symbol", symbol, "e.g. z, z^-2, bott(1,2)")->required();
  b_index->add_option("--json", json_path, "write the JSON report to PATH ('-' for stdout)");
  auto* b_exp = boundary->add_subcommand("exp", "exponential map of a seeded qC representation");
  add_suite_flags(b_exp, opts, tol);
  b_exp->add_option("--json", json_path, "write the JSON report to PATH ('-' for stdout)");
  linalg::Index rank = 1;
  auto* b_cone = boundary->add_subcommand("cone", "cone cell check for a seeded projection");
  add_suite_flags(b_cone, opts, tol);
  b_cone->add_option("--rank", rank, "rank of the projection");
  b_cone->add_option("--json", json_path, "write the JSON report to PATH ('-' for stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }
  opts.tol = tol;

  try {
    if (*parse) return cmd_parse(file, parse_json);
    if (*prove) return cmd_prove(file, json_path);
    if (*verify) return emit(suites::run_suite(suite, opts), json_path);
    if (*b_index) return emit(boundary_index(symbol), json_path);
    if (*b_exp) return emit(boundary_exp(opts), json_path);
    if (*b_cone) return emit(boundary_cone(opts, rank), json_path);
  } catch (const UsageError& e) {
    std::cerr << "nccell: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "nccell: " << e.what() << "\n";
    return 1;
  }
  return kExitUsage;
}
