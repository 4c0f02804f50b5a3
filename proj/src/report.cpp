#include "nccell/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace nccell::report {

const char* status_name(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Skip: return "skip";
  }
  return "?";
}

int Report::count(Status s) const {
  int n = 0;
  for (const auto& c : cases)
    if (c.status == s) ++n;
  return n;
}

nlohmann::ordered_json Report::to_json(bool timing) const {
  nlohmann::ordered_json out;
  out["suite"] = suite;
  out["convention"] = convention;
  auto arr = nlohmann::ordered_json::array();
  for (const auto& c : cases) {
    nlohmann::ordered_json j;
    j["name"] = c.name;
    j["status"] = status_name(c.status);
    // nan and inf have no JSON spelling
    if (std::isfinite(c.residual)) j["residual"] = c.residual;
    else j["residual"] = nullptr;
    j["tol"] = c.tol;
    j["seed"] = c.seed;
    if (timing) j["elapsed_ms"] = c.elapsed_ms;
    if (!c.detail.empty()) j["detail"] = c.detail;
    arr.push_back(std::move(j));
  }
  if (!result.is_null()) out["result"] = result;
  out["cases"] = std::move(arr);
  out["summary"] = {{"pass", count(Status::Pass)}, {"fail", count(Status::Fail)}};
  if (count(Status::Skip) > 0) out["summary"]["skip"] = count(Status::Skip);
  return out;
}

std::string Report::to_text() const {
  std::ostringstream os;
  os << "suite " << suite << "\n";
  for (const auto& [k, v] : convention.items()) os << "  " << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
  for (const auto& [k, v] : result.items()) os << "  " << k << " = " << v.dump() << "\n";
  for (const auto& c : cases) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3e <= %.1e", c.residual, c.tol);
    os << (c.status == Status::Pass ? "PASS " : c.status == Status::Fail ? "FAIL " : "SKIP ") << c.name << "  " << buf
       << "  seed " << c.seed;
    if (!c.detail.empty()) os << "  " << c.detail;
    os << "\n";
  }
  os << count(Status::Pass) << " passed, " << count(Status::Fail) << " failed";
  if (count(Status::Skip) > 0) os << ", " << count(Status::Skip) << " skipped";
  os << "\n";
  return os.str();
}

void Report::absorb(const Report& other) {
  for (Case c : other.cases) {
    c.name = other.suite + "/" + c.name;
    cases.push_back(std::move(c));
  }
}

Case run_case(std::string name, std::uint64_t seed, double tol,
              const std::function<double(std::string& detail)>& residual) {
  Case c;
  c.name = std::move(name);
  c.seed = seed;
  c.tol = tol;
  const auto start = std::chrono::steady_clock::now();
  try {
    c.residual = residual(c.detail);
    c.status = c.residual <= tol ? Status::Pass : Status::Fail;
  } catch (const std::exception& e) {
    c.residual = std::numeric_limits<double>::infinity();
    c.status = Status::Fail;
    c.detail = e.what();
  }
  c.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return c;
}

Case run_case(std::string name, std::uint64_t seed, double tol, const std::function<double()>& residual) {
  return run_case(std::move(name), seed, tol, [&](std::string&) { return residual(); });
}

}  // namespace nccell::report
