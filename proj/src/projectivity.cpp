#include "dg/projectivity.hpp"

#include <algorithm>
#include <set>
#include <utility>

namespace dg {

namespace {

struct Anchored {
  NucleusId id;
  int anchor;
};

std::vector<Anchored> anchored_nuclei(const DependencyTree& tree) {
  std::vector<Anchored> nodes;
  nodes.reserve(tree.nuclei().size());
  for (const Nucleus& nucleus : tree.nuclei()) nodes.push_back({nucleus.id, nucleus.anchor()});
  std::sort(nodes.begin(), nodes.end(),
            [](const Anchored& a, const Anchored& b) { return a.anchor < b.anchor; });
  return nodes;
}

}  // namespace

bool is_projective(const DependencyTree& tree) {
  // Equivalent to marcus_violations(tree).empty(): an arc whose span
  // contains a term outside its regent's subtree is exactly what both
  // formulations detect.
  const std::vector<Anchored> nodes = anchored_nuclei(tree);
  for (const Connexion& arc : tree.connexions()) {
    if (arc.regent == kRoot) continue;
    const int a = tree.nucleus(arc.regent).anchor();
    const int b = tree.nucleus(arc.dependent).anchor();
    const int lo = std::min(a, b), hi = std::max(a, b);
    for (const Anchored& node : nodes) {
      if (node.anchor <= lo) continue;
      if (node.anchor >= hi) break;
      if (!tree.in_subtree(node.id, arc.regent)) return false;
    }
  }
  return true;
}

std::vector<ProjectivityViolation> marcus_violations(const DependencyTree& tree) {
  const std::vector<Anchored> nodes = anchored_nuclei(tree);
  std::vector<MarcusTriple> triples;
  for (const Anchored& superior : nodes) {
    for (const Anchored& subordinate : nodes) {
      if (subordinate.id == superior.id) continue;
      if (!tree.in_subtree(subordinate.id, superior.id)) continue;
      const int lo = std::min(subordinate.anchor, superior.anchor);
      const int hi = std::max(subordinate.anchor, superior.anchor);
      for (const Anchored& witness : nodes) {
        if (witness.anchor <= lo) continue;
        if (witness.anchor >= hi) break;
        if (!tree.in_subtree(witness.id, superior.id)) {
          triples.push_back({subordinate.anchor, superior.anchor, witness.anchor});
        }
      }
    }
  }
  std::sort(triples.begin(), triples.end());
  std::vector<ProjectivityViolation> violations;
  violations.reserve(triples.size());
  for (const MarcusTriple& triple : triples) violations.emplace_back(triple);
  return violations;
}

std::vector<ProjectivityViolation> crossing_arcs(const DependencyTree& tree) {
  const std::vector<Anchored> nodes = anchored_nuclei(tree);
  std::vector<ProjectivityViolation> violations;
  // A connexion is identified by its dependent (each nucleus has
  // exactly one incoming arc), so an unordered arc pair is a pair of
  // dependent ids.
  std::set<std::pair<NucleusId, NucleusId>> seen;
  for (const Connexion& arc : tree.connexions()) {
    if (arc.regent == kRoot) continue;
    const int a = tree.nucleus(arc.regent).anchor();
    const int b = tree.nucleus(arc.dependent).anchor();
    const int lo = std::min(a, b), hi = std::max(a, b);
    for (const Anchored& covered : nodes) {
      if (covered.anchor <= lo) continue;
      if (covered.anchor >= hi) break;
      if (tree.in_subtree(covered.id, arc.regent)) continue;
      const Connexion& entering = tree.incoming(covered.id);
      const auto key = std::minmax(arc.dependent, entering.dependent);
      if (seen.insert({key.first, key.second}).second) {
        violations.emplace_back(CrossingArcs{arc, entering});
      }
    }
  }
  return violations;
}

}  // namespace dg
