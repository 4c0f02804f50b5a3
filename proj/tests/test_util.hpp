#pragma once

#include "nccell/linalg.hpp"

#include <fstream>
#include <sstream>
#include <string>

namespace testutil {

inline std::string read_source(const std::string& relative) {
  std::ifstream in(std::string(NCCELL_SOURCE_DIR) + "/" + relative);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline double dist(const nccell::linalg::CMat& a, const nccell::linalg::CMat& b) {
  return nccell::linalg::op_norm(a - b);
}

}  // namespace testutil
