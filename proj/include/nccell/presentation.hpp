#pragma once

// Universal C*-algebra presentations: the DSL, validation, relation
// expansion, canonical printing and the registry of shipped algebras.
//
//   presentation <ident> (unital|nonunital) {
//     gen a, b;            let P = <expr>;            rel <constraint>;
//   }
//
// Constraints: proj(E) selfadj(E) eq(E, F) range01(E) normle(E, c) zero(E)
// unitary(E). proj, selfadj, unitary and zero expand to eq relations;
// range01 and normle are spectral and stay as they are.

#include "nccell/expr.hpp"

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace nccell::pres {

enum class RelKind { Proj, SelfAdj, Eq, Range01, NormLe, Zero, Unitary };

std::string_view rel_keyword(RelKind kind);

struct Relation {
  RelKind kind = RelKind::Eq;
  StarExpr lhs;
  StarExpr rhs;          // Eq only
  mpq_class bound = 0;   // NormLe only

  /// e.g. "eq(adj(h), h)" or "normle(1 + y, 1)".
  std::string to_string() const;
  friend bool operator==(const Relation&, const Relation&) = default;
};

struct Metadata {
  bool projective = false;
  bool semiprojective = false;
  std::string citation;
  friend bool operator==(const Metadata&, const Metadata&) = default;
};

struct Presentation {
  std::string name;
  bool unital = false;
  std::vector<std::string> generators;
  std::vector<std::pair<std::string, StarExpr>> lets;
  std::vector<Relation> relations;  // as written
  std::vector<Relation> expanded;   // Eq (block-free, adjoint-normalized), Range01, NormLe
  Metadata meta;

  /// Everything except metadata.
  bool same_algebra(const Presentation& other) const;
  friend bool operator==(const Presentation&, const Presentation&) = default;
};

struct Diagnostic {
  std::string path;  // e.g. "rel[1]/lhs/entry(0,1)"
  std::string message;
  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

class PresentationError : public std::runtime_error {
 public:
  explicit PresentationError(std::vector<Diagnostic> diagnostics);
  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

/// Syntax only; throws ParseError with line and column.
Presentation parse_presentation_unchecked(std::string_view text);

/// Empty iff the presentation is well formed.
std::vector<Diagnostic> validate_presentation(const Presentation& p);

/// Validates and fills `expanded`; throws PresentationError on diagnostics.
Presentation finalize_presentation(Presentation p);

/// parse + validate + expand.
Presentation parse_presentation(std::string_view text);

/// Canonical source text; parsing it gives back an equal presentation.
std::string print_presentation(const Presentation& p);

/// Let-bindings inlined, block-free entries kept as blocks.
StarExpr inline_lets(const StarExpr& e, const Presentation& p);

/// Built-in algebras: G2nc, G2st, qC, P, C0_01, D, CFreeC, CFreeC01 and
/// ConeMn(n). Throws std::invalid_argument on unknown names.
Presentation registry_get(std::string_view name);
std::shared_ptr<const Presentation> registry_shared(std::string_view name);
std::vector<std::string> registry_names();

/// Shipped file for a registry name, e.g. "presentations/g2st.ncp".
std::string registry_file(std::string_view name);
std::string cone_source(int n);

}  // namespace nccell::pres
