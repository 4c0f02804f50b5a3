// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include "nccell/boundary.hpp"
#include "nccell/embedded.hpp"
#include "nccell/identity.hpp"
#include "nccell/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

using namespace nccell;

namespace {

int failures = 0;

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void verdict(int id, const std::string& title, bool ok, const std::string& detail) {
  std::printf("%s %d %s: %s\n", ok ? "PASS" : "FAIL", id, title.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

// Runs body, catching exceptions as failures.
void criterion(int id, const std::string& title, const std::function<bool(std::string&)>& body) {
  std::string detail;
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  verdict(id, title, ok, detail);
}

std::string first_failure(const report::Report& r) {
  for (const auto& c : r.cases) {
    if (c.status == report::Status::Fail) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.3e", c.residual);
      return "; first failure " + c.name + " residual " + buf + " " + c.detail;
    }
  }
  return "";
}

std::string summary(const report::Report& r) {
  return std::to_string(r.count(report::Status::Pass)) + "/" + std::to_string(r.cases.size()) + " cases pass" +
         first_failure(r);
}

double worst_residual(const report::Report& r, const std::string& suffix) {
  double worst = 0;
  for (const auto& c : r.cases)
    if (c.name.size() >= suffix.size() && c.name.compare(c.name.size() - suffix.size(), suffix.size(), suffix) == 0)
      worst = std::max(worst, c.residual);
  return worst;
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

}  // namespace

int main() {
  criterion(1, "symbolic exactness", [](std::string& detail) {
    const auto start = std::chrono::steady_clock::now();
    int total = 0, holds = 0;
    std::string bad;
    const std::vector<std::string> exactness_labels = {"block-conjugation", "theta0-square", "theta0-adjoint", "theta0-hk"};
    for (const char* file : {"identities/ideal.idt", "identities/exactness.idt"}) {
      for (const auto& c : ident::parse_identity_file(*embedded_source(file)).cases) {
        const bool wanted = std::string(file) == "identities/ideal.idt" ||
                            std::find(exactness_labels.begin(), exactness_labels.end(), c.label) != exactness_labels.end();
        if (!wanted) continue;
        ++total;
        const auto res = ident::check_identity(c);
        if (res.holds) ++holds;
        else bad += " " + c.label;
      }
    }
    const double secs = seconds_since(start);
    detail = std::to_string(holds) + "/" + std::to_string(total) + " identities reduce to 0 in " + sci(secs) + " s";
    if (!bad.empty()) detail += "; nonzero:" + bad;
    // 9 from ideal.idt, 4 from exactness.idt
    return total == 13 && holds == total && secs < 5.0;
  });

  criterion(2, "null homotopy", [](std::string& detail) {
    const auto start = std::chrono::steady_clock::now();
    const report::Report r = suites::run_suite("homotopy-null", {20, 6, std::nullopt, 512, 0});
    const double secs = seconds_since(start);
    detail = summary(r) + "; path " + sci(worst_residual(r, "/path")) + " <= " + sci(1e-7 * std::sqrt(6.0)) +
             ", junction " + sci(worst_residual(r, "/junction")) + ", start " + sci(worst_residual(r, "/start")) +
             ", end " + sci(worst_residual(r, "/end")) + "; " + sci(secs) + " s";
    return r.ok() && r.cases.size() == 80 && secs < 60.0;
  });

  criterion(3, "lambda/rho homotopy", [](std::string& detail) {
    const report::Report r = suites::run_suite("homotopy-lambda-rho", {20, 6, std::nullopt, 512, 0});
    detail = summary(r) + "; path " + sci(worst_residual(r, "/path")) + " <= 1e-8, endpoints " +
             sci(std::max(worst_residual(r, "/start"), worst_residual(r, "/end"))) + " <= 1e-10";
    return r.ok() && r.cases.size() == 120;
  });

  criterion(4, "index cell", [](std::string& detail) {
    const auto start = std::chrono::steady_clock::now();
    const bnd::ToeplitzModel model;
    bool ok = true;
    double drift = 0;
    std::string classes;
    auto run = [&](const toep::LaurentPoly& u, int expected, const std::string& name) {
      const bnd::BoundaryResult b = bnd::boundary_map(bnd::index_cell(), model, u);
      const int oracle = toep::fredholm_oracle(u);
      drift = std::max(drift, b.diag.drift);
      classes += " " + name + "->" + std::to_string(b.output_class);
      ok = ok && b.output_class == expected && oracle == expected;
    };
    for (int w = -3; w <= 3; ++w) run(toep::LaurentPoly::scalar_monomial(1.0, w), -w, "z^" + std::to_string(w));
    for (int r = 1; r <= 2; ++r) run(toep::LaurentPoly::bott(r, 2), -r, "bott(" + std::to_string(r) + ",2)");
    const double secs = seconds_since(start);
    detail = "classes" + classes + "; oracle agrees: " + (ok ? "yes" : "no") + "; drift " + sci(drift) + " <= 1e-9; " +
             sci(secs) + " s";
    return ok && drift <= 1e-9 && secs < 10.0;
  });

  criterion(5, "exponential cell", [](std::string& detail) {
    const report::Report r = suites::run_suite("exp-cell", {100, 8, std::nullopt, 512, 0});
    detail = summary(r) + "; worst unitarity/endpoint " + sci(worst_residual(r, "")) + " <= 1e-8";
    return r.ok() && r.cases.size() == 100;
  });

  criterion(6, "cone cell", [](std::string& detail) {
    const report::Report r = suites::run_suite("cone-cell", {});
    detail = summary(r) + " (all r <= n <= 6)";
    return r.ok() && r.cases.size() == 27;
  });

  criterion(7, "invariance", [](std::string& detail) {
    bool ok = true;
    for (const bnd::CellDiagram* cell : {&bnd::index_cell(), &bnd::exponential_cell()}) {
      const report::Report r = bnd::invariance_suite(*cell, {50, 0, 6, 512});
      detail += cell->name + " " + summary(r) + "; ";
      ok = ok && r.ok() && r.cases.size() == 250;
    }
    return ok;
  });

  criterion(8, "exactness reconstruction", [](std::string& detail) {
    const report::Report r = suites::run_suite("exactness-reconstruction", {100, 8, std::nullopt, 512, 0});
    detail = summary(r) + "; worst spectrum excess / round trip " + sci(worst_residual(r, "")) + " <= 1e-7";
    return r.ok() && r.cases.size() == 100;
  });

  criterion(9, "determinism", [](std::string& detail) {
    int same = 0;
    std::string diff;
    const suites::Options o{3, 4, std::nullopt, 128, 7};
    for (const auto& name : suites::suite_names()) {
      const std::string a = suites::run_suite(name, o).to_json(false).dump();
      const std::string b = suites::run_suite(name, o).to_json(false).dump();
      if (a == b) ++same;
      else diff += " " + name;
    }
    detail = std::to_string(same) + "/" + std::to_string(suites::suite_names().size()) +
             " suites give identical JSON on a repeat run";
    if (!diff.empty()) detail += "; differing:" + diff;
    return diff.empty();
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
