// dg/projectivity.hpp - Marcus projectivity and crossing-arc detection
#pragma once

#include <variant>
#include <vector>

#include "dg/tree.hpp"

namespace dg {

// One witness for the Marcus formulation: the term at `subordinate` is
// subordinate to the term at `superior`, `witness` lies strictly
// between them in the linear order, and the term there is not
// subordinate to `superior`.  All three are 0-based anchor positions.
struct MarcusTriple {
  int subordinate = 0;
  int superior = 0;
  int witness = 0;
  friend bool operator==(const MarcusTriple&, const MarcusTriple&) = default;
  friend auto operator<=>(const MarcusTriple&, const MarcusTriple&) = default;
};

// A pair of arcs that cannot be drawn without crossing: `covering`
// spans a nucleus that is not subordinate to its regent, and `entering`
// is the connexion that attaches that nucleus (the root connexion when
// the covered nucleus is the sentence head; root connexions never act
// as the covering arc since the virtual root has no position).
struct CrossingArcs {
  Connexion covering;
  Connexion entering;
  friend bool operator==(const CrossingArcs&, const CrossingArcs&) = default;
};

using ProjectivityViolation = std::variant<MarcusTriple, CrossingArcs>;

// True iff for every subordinate pair (a_i, a_j) every term strictly
// between them is also subordinate to a_j.  Subordination is
// reflexive-transitive; multi-token nuclei compare by their anchor.
bool is_projective(const DependencyTree& tree);

// All violating (i, j, k) triples, sorted by (i, j, k).
std::vector<ProjectivityViolation> marcus_violations(const DependencyTree& tree);

// All crossing arc pairs.  Empty exactly when marcus_violations is
// empty; the two formulations are equivalent over valid trees.
std::vector<ProjectivityViolation> crossing_arcs(const DependencyTree& tree);

}  // namespace dg
