#pragma once

// Verification reports: one line per case, JSON and text renderings.

#include "json.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace nccell::report {

enum class Status { Pass, Fail, Skip };
const char* status_name(Status s);

struct Case {
  std::string name;
  Status status = Status::Pass;
  double residual = 0;
  double tol = 0;
  std::uint64_t seed = 0;
  double elapsed_ms = 0;
  std::string detail;
};

struct Report {
  std::string suite;
  nlohmann::ordered_json convention = nlohmann::ordered_json::object();
  std::vector<Case> cases;
  nlohmann::ordered_json result;  // optional computed values, e.g. a class

  int count(Status s) const;
  bool ok() const { return count(Status::Fail) == 0; }
  /// Timing fields are left out when `timing` is false, so two runs with
  /// the same seed compare equal.
  nlohmann::ordered_json to_json(bool timing = true) const;
  std::string to_text() const;
  /// Appends the other report's cases, prefixed with its suite name.
  void absorb(const Report& other);
};

/// Runs `residual`, timing it; pass iff the value is <= tol. An exception
/// becomes a failing case whose detail is the message.
Case run_case(std::string name, std::uint64_t seed, double tol, const std::function<double()>& residual);
/// Variant whose body also fills in a detail string.
Case run_case(std::string name, std::uint64_t seed, double tol,
              const std::function<double(std::string& detail)>& residual);

}  // namespace nccell::report
