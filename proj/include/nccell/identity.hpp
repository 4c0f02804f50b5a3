#pragma once

// Identity files: one identity per line,
//
//   [label:] lhs == rhs modulo <rules>
//   let name = expr
//
// where <rules> names a registry presentation whose eq relations are
// oriented into a rewrite system, or "free" for no relations.

#include "nccell/expr.hpp"
#include "nccell/rewrite.hpp"

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace nccell::ident {

struct IdentityCase {
  std::string label;  // "line N" when the source gives none
  int line = 0;
  StarExpr lhs;  // let-bindings inlined
  StarExpr rhs;
  std::string rules;
};

struct IdentityFile {
  std::vector<std::pair<std::string, StarExpr>> lets;
  std::vector<IdentityCase> cases;
};

/// Throws ParseError (with the source line) on malformed lines and on
/// redefined or cyclic bindings.
IdentityFile parse_identity_file(std::string_view text);

/// Generator order used for a rules name; it fixes which side of each
/// relation becomes the rewrite target.
std::vector<std::string> letter_order(std::string_view rules);

/// The rewrite system for a registry presentation. Throws
/// std::invalid_argument for unknown names.
const sym::RewriteSystem& rules_get(std::string_view rules);

struct IdentityResult {
  std::string label;
  bool holds = false;
  std::string difference;  // reduced lhs - rhs, "0" when the identity holds
  sym::Alphabet alphabet;
  sym::PolyMatrix lhs;     // before reduction
  sym::PolyMatrix rhs;
};

IdentityResult check_identity(const IdentityCase& c);
std::vector<IdentityResult> check_identity_file(std::string_view text);

}  // namespace nccell::ident
