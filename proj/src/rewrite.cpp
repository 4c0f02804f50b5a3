#include "nccell/rewrite.hpp"

#include <algorithm>

namespace nccell::sym {
namespace {

bool matches_at(const Word& w, std::size_t pos, const Word& pattern) {
  if (pos + pattern.size() > w.size()) return false;
  return std::equal(pattern.begin(), pattern.end(), w.begin() + static_cast<std::ptrdiff_t>(pos));
}

}  // namespace

RewriteSystem::RewriteSystem(Alphabet alphabet, std::vector<Rule> rules)
    : alphabet_(std::move(alphabet)), rules_(std::move(rules)) {
  for (const Rule& r : rules_) {
    if (r.lhs.empty()) throw OrderViolation("rewrite rule with empty left side");
    for (const Letter& l : r.lhs) {
      if (l.gen >= alphabet_.size()) throw std::invalid_argument("rewrite rule uses a letter outside the alphabet");
    }
    for (const auto& [w, c] : r.rhs.terms()) {
      if (!word_less(w, r.lhs)) {
        throw OrderViolation("rule " + word_to_string(r.lhs, alphabet_) + " -> " +
                             r.rhs.to_string(alphabet_) + " does not decrease the word order");
      }
    }
  }
}

RewriteSystem RewriteSystem::from_relations(Alphabet alphabet, const std::vector<NCPoly>& zeros) {
  // Short relations first, each reduced by the rules found so far, so an
  // adjoint like adj(h)*adj(x) is oriented only after adj(h) -> h exists.
  std::vector<NCPoly> candidates;
  for (const NCPoly& f : zeros)
    if (!f.is_zero()) candidates.push_back(f);
  for (const NCPoly& f : zeros)
    if (!f.is_zero()) candidates.push_back(f.adjoint());
  std::stable_sort(candidates.begin(), candidates.end(), [](const NCPoly& a, const NCPoly& b) {
    return word_less(a.leading_word(), b.leading_word());
  });

  RewriteSystem system(alphabet, {});
  for (const NCPoly& raw : candidates) {
    const NCPoly f = normal_form(raw, system);
    if (f.is_zero()) continue;
    const Word lead = f.leading_word();
    if (lead.empty()) throw std::invalid_argument("relation reduces to a nonzero constant");
    const GaussRational c = f.coefficient(lead);
    NCPoly rest = f;
    rest.add_term(lead, -c);
    system.rules_.push_back({lead, (GaussRational(-1) / c) * rest});
  }
  return RewriteSystem(std::move(alphabet), std::move(system.rules_));
}

std::string RewriteSystem::to_string() const {
  std::string out;
  for (const Rule& r : rules_) {
    out += word_to_string(r.lhs, alphabet_) + " -> " + r.rhs.to_string(alphabet_) + "\n";
  }
  return out;
}

NCPoly normal_form(const NCPoly& x, const RewriteSystem& rules) {
  NCPoly::Terms todo = x.terms();
  NCPoly result;
  while (!todo.empty()) {
    auto last = std::prev(todo.end());
    const Word w = last->first;
    const GaussRational c = last->second;
    todo.erase(last);

    const Rule* hit = nullptr;
    std::size_t hit_pos = 0;
    for (std::size_t pos = 0; pos < w.size() && !hit; ++pos) {
      for (const Rule& r : rules.rules()) {
        if (matches_at(w, pos, r.lhs)) {
          hit = &r;
          hit_pos = pos;
          break;
        }
      }
    }
    if (!hit) {
      result.add_term(w, c);
      continue;
    }
    // Every replacement word is below w, so popping the maximum keeps
    // finished terms final.
    const Word prefix(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(hit_pos));
    const Word suffix(w.begin() + static_cast<std::ptrdiff_t>(hit_pos + hit->lhs.size()), w.end());
    for (const auto& [rw, rc] : hit->rhs.terms()) {
      Word nw = prefix;
      nw.insert(nw.end(), rw.begin(), rw.end());
      nw.insert(nw.end(), suffix.begin(), suffix.end());
      const GaussRational nc = c * rc;
      auto [it, inserted] = todo.try_emplace(nw, nc);
      if (!inserted) {
        it->second += nc;
        if (it->second.is_zero()) todo.erase(it);
      }
    }
  }
  return result;
}

PolyMatrix normal_form(const PolyMatrix& x, const RewriteSystem& rules) {
  PolyMatrix out(x.rows(), x.cols());
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j) out.at(i, j) = normal_form(x.at(i, j), rules);
  return out;
}

IdentityProof prove_identity(const NCPoly& lhs, const NCPoly& rhs, const RewriteSystem& rules) {
  PolyMatrix diff(normal_form(lhs - rhs, rules));
  const bool holds = diff.is_zero();
  return {holds, std::move(diff)};
}

IdentityProof prove_identity(const PolyMatrix& lhs, const PolyMatrix& rhs, const RewriteSystem& rules) {
  PolyMatrix diff = normal_form(lhs - rhs, rules);
  const bool holds = diff.is_zero();
  return {holds, std::move(diff)};
}

PolyMatrix substitute_genmap(const NCPoly& target, const std::map<std::uint32_t, PolyMatrix>& images) {
  std::size_t k = 0;
  for (const auto& [gen, img] : images) {
    if (img.rows() != img.cols()) throw std::invalid_argument("substitute_genmap: non-square image");
    if (k == 0) k = img.rows();
    if (img.rows() != k) throw std::invalid_argument("substitute_genmap: images have different block sizes");
  }
  if (k == 0) k = 1;
  std::map<std::uint32_t, PolyMatrix> adjoints;
  PolyMatrix out(k, k);
  for (const auto& [w, c] : target.terms()) {
    PolyMatrix term = PolyMatrix::identity(k);
    for (const Letter& l : w) {
      const auto it = images.find(l.gen);
      if (it == images.end()) {
        throw std::invalid_argument("substitute_genmap: no image for generator id " + std::to_string(l.gen));
      }
      if (l.adjoint) {
        auto adj = adjoints.find(l.gen);
        if (adj == adjoints.end()) adj = adjoints.emplace(l.gen, it->second.adjoint()).first;
        term = term * adj->second;
      } else {
        term = term * it->second;
      }
    }
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) out.at(i, j) += c * term.at(i, j);
  }
  return out;
}

}  // namespace nccell::sym
