#pragma once

// Oriented rewriting in the free *-algebra. Rules must strictly decrease the
// (length, lexicographic) word order, so every reduction terminates.

#include "nccell/ncpoly.hpp"

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

namespace nccell::sym {

struct Rule {
  Word lhs;
  NCPoly rhs;
};

class OrderViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class RewriteSystem {
 public:
  RewriteSystem() = default;
  /// Throws OrderViolation when some rule's right side has a word that is
  /// not strictly below its left side.
  RewriteSystem(Alphabet alphabet, std::vector<Rule> rules);

  /// Orients each relation f = 0 at its leading word. Relations and their
  /// adjoints are taken shortest first and reduced by the rules already
  /// oriented; those that reduce to zero add nothing.
  static RewriteSystem from_relations(Alphabet alphabet, const std::vector<NCPoly>& zeros);

  const Alphabet& alphabet() const { return alphabet_; }
  const std::vector<Rule>& rules() const { return rules_; }

  std::string to_string() const;

 private:
  Alphabet alphabet_;
  std::vector<Rule> rules_;
};

/// Reduces every term, leftmost match first. The result is fixed by every rule.
NCPoly normal_form(const NCPoly& x, const RewriteSystem& rules);
PolyMatrix normal_form(const PolyMatrix& x, const RewriteSystem& rules);

struct IdentityProof {
  bool holds = false;
  PolyMatrix difference;  // reduced lhs - rhs; zero iff holds
};

IdentityProof prove_identity(const NCPoly& lhs, const NCPoly& rhs, const RewriteSystem& rules);
IdentityProof prove_identity(const PolyMatrix& lhs, const PolyMatrix& rhs, const RewriteSystem& rules);

/// Applies a generator map to a polynomial over the source alphabet. All
/// images must be square of one common size k; the unit maps to the k x k
/// identity. Throws std::invalid_argument on a missing image or a shape
/// mismatch.
PolyMatrix substitute_genmap(const NCPoly& target, const std::map<std::uint32_t, PolyMatrix>& images);

}  // namespace nccell::sym
