#include "dg/coordination.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <utility>

namespace dg {

namespace {

// Coordinator words: conjunctions and the punctuation pivots used for
// asyndetic coordination.
bool is_coordinator_word(const Nucleus& nucleus) {
  if (nucleus.has_tag("CC") || nucleus.has_tag("PUNCT")) return true;
  return nucleus.base_form == "and" || nucleus.base_form == "or" ||
         nucleus.base_form == "but" || nucleus.base_form == ",";
}

bool heads_plain_dependent(const DependencyTree& tree, NucleusId id,
                           const FunctionInventory& inventory) {
  for (NucleusId child : tree.dependents(id)) {
    if (!inventory.is_coordination(tree.incoming(child).function)) return true;
  }
  return false;
}

int depth_of(const DependencyTree& tree, NucleusId id) {
  int depth = 0;
  for (NucleusId node = id; node != tree.root(); node = tree.regent_of(node)) ++depth;
  return depth;
}

}  // namespace

std::vector<CoordinationChain> detect_chains(const DependencyTree& tree,
                                             const FunctionInventory& inventory) {
  // Union the endpoints of every cc arc into maximal components.
  std::map<NucleusId, NucleusId> parent;
  const auto find = [&parent](NucleusId id) {
    NucleusId root = id;
    while (parent[root] != root) root = parent[root];
    while (parent[id] != root) id = std::exchange(parent[id], root);
    return root;
  };
  for (const Connexion& arc : tree.connexions()) {
    if (arc.regent == kRoot || !inventory.is_coordination(arc.function)) continue;
    parent.try_emplace(arc.regent, arc.regent);
    parent.try_emplace(arc.dependent, arc.dependent);
    parent[find(arc.regent)] = find(arc.dependent);
  }

  std::map<NucleusId, std::vector<NucleusId>> components;
  for (const auto& [id, _] : parent) components[find(id)].push_back(id);

  std::vector<CoordinationChain> chains;
  for (auto& [_, members] : components) {
    std::sort(members.begin(), members.end(), [&tree](NucleusId a, NucleusId b) {
      return tree.nucleus(a).anchor() < tree.nucleus(b).anchor();
    });
    CoordinationChain chain;
    for (NucleusId member : members) {
      if (!inventory.is_coordination(tree.incoming(member).function)) {
        if (chain.top != kRoot) {
          throw MalformedChain(member, "chain attaches to the tree at two points");
        }
        chain.top = member;
      }
    }
    if (chain.top == kRoot) {
      throw MalformedChain(members.front(), "chain has no attachment to the tree");
    }
    for (NucleusId member : members) {
      const Nucleus& nucleus = tree.nucleus(member);
      const bool coordinator = is_coordinator_word(nucleus);
      if (coordinator) chain.coordinators.push_back(member);
      // Dependent-bearing coordinators stand in for gapped clauses and
      // count as conjuncts in their own right.
      if (!coordinator || heads_plain_dependent(tree, member, inventory)) {
        chain.conjuncts.push_back(member);
      }
    }
    if (chain.conjuncts.empty()) {
      throw MalformedChain(chain.top, "chain has no conjuncts");
    }
    if (is_coordinator_word(tree.nucleus(chain.top))) {
      chain.anchor = tree.regent_of(chain.top);
    } else {
      chain.anchor = chain.top;
    }
    chain.function = tree.incoming(chain.top).function;
    chains.push_back(std::move(chain));
  }
  std::sort(chains.begin(), chains.end(),
            [&tree](const CoordinationChain& a, const CoordinationChain& b) {
              return tree.nucleus(a.conjuncts.front()).anchor() <
                     tree.nucleus(b.conjuncts.front()).anchor();
            });
  return chains;
}

GappedTree apply_gapping(const DependencyTree& tree, const FunctionInventory& inventory) {
  GappedTree result{tree, {}};
  for (const Nucleus& nucleus : tree.nuclei()) {
    if (!is_coordinator_word(nucleus)) continue;
    if (!heads_plain_dependent(tree, nucleus.id, inventory)) continue;  // simple coordination
    const Connexion& up = tree.incoming(nucleus.id);
    if (up.regent == kRoot || !inventory.is_coordination(up.function)) {
      throw NoAntecedent(nucleus.id);
    }
    const NucleusId antecedent = up.regent;
    if (!heads_plain_dependent(tree, antecedent, inventory)) {
      throw NoAntecedent(nucleus.id);
    }
    result.frames.push_back(
        {nucleus.id, antecedent, tree.nucleus(antecedent).attributes});
  }
  return result;
}

ExpansionResult expand_combinations(const DependencyTree& tree,
                                    const FunctionInventory& inventory, std::size_t cap) {
  ExpansionResult result;
  const std::vector<CoordinationChain> chains = detect_chains(tree, inventory);
  if (chains.empty()) {
    result.trees.push_back(tree);
    return result;
  }
  const GappedTree gapped = apply_gapping(tree, inventory);
  std::map<NucleusId, NucleusId> inherits;  // gapped conjunct -> clause head
  for (const GapFrame& frame : gapped.frames) {
    inherits[frame.coordinator] = frame.inherited_from;
  }

  // Chains inside another chain's conjunct make the product
  // order-sensitive; the expansion is still emitted, but flagged.
  for (const CoordinationChain& outer : chains) {
    for (const CoordinationChain& inner : chains) {
      if (&inner == &outer) continue;
      for (NucleusId member : outer.conjuncts) {
        if (inner.top != member && tree.in_subtree(inner.top, member)) {
          result.nested_chains = true;
        }
      }
    }
  }

  std::size_t combinations = 1;
  for (const CoordinationChain& chain : chains) {
    combinations *= chain.conjuncts.size();
    if (combinations > cap) throw CombinatorialBound(combinations, cap);
  }

  // Outermost chains first, so an outer choice can drop an inner chain
  // wholesale before the inner surgery runs.
  std::vector<std::size_t> order(chains.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return depth_of(tree, chains[a].top) < depth_of(tree, chains[b].top);
  });

  std::vector<std::size_t> pick(chains.size(), 0);
  for (;;) {
    std::set<NucleusId> kept;
    for (const Nucleus& nucleus : tree.nuclei()) kept.insert(nucleus.id);
    std::map<NucleusId, Connexion> rewritten;
    std::map<NucleusId, NucleusId> inherited_head;  // kept conjunct -> source

    for (std::size_t index : order) {
      const CoordinationChain& chain = chains[index];
      if (!kept.count(chain.top)) continue;  // dropped by an outer choice
      const NucleusId chosen = chain.conjuncts[pick[index]];

      std::set<NucleusId> members(chain.conjuncts.begin(), chain.conjuncts.end());
      members.insert(chain.coordinators.begin(), chain.coordinators.end());
      members.insert(chain.top);

      std::set<NucleusId> drop;
      for (NucleusId member : members) {
        const auto ids = tree.subtree(member);
        drop.insert(ids.begin(), ids.end());
      }
      std::set<NucleusId> keep_back;
      if (chosen == chain.top) {
        const auto ids = tree.subtree(chain.top);
        keep_back.insert(ids.begin(), ids.end());
        for (NucleusId member : members) {
          if (member == chain.top) continue;
          for (NucleusId id : tree.subtree(member)) keep_back.erase(id);
        }
      } else {
        const auto ids = tree.subtree(chosen);
        keep_back.insert(ids.begin(), ids.end());
        // An outer chain may already have re-attached this chain's top.
        Connexion top_incoming = tree.incoming(chain.top);
        if (const auto it = rewritten.find(chain.top); it != rewritten.end()) {
          top_incoming = it->second;
        }
        rewritten[chosen] = {top_incoming.regent, chosen, top_incoming.function};
      }
      std::set<NucleusId> next;
      for (NucleusId id : kept) {
        if (!drop.count(id) || keep_back.count(id)) next.insert(id);
      }
      kept.swap(next);
      if (const auto it = inherits.find(chosen); it != inherits.end() && chosen != chain.top) {
        inherited_head[chosen] = it->second;
      }
    }

    // Reassemble: kept nuclei in linear order, one base-form token
    // each; the gapped conjunct takes over its antecedent's lexical
    // identity in situ.
    std::vector<NucleusId> linear(kept.begin(), kept.end());
    std::sort(linear.begin(), linear.end(), [&tree](NucleusId a, NucleusId b) {
      return tree.nucleus(a).anchor() < tree.nucleus(b).anchor();
    });
    TreeData data;
    for (std::size_t rank = 0; rank < linear.size(); ++rank) {
      Nucleus nucleus = tree.nucleus(linear[rank]);
      if (const auto it = inherited_head.find(nucleus.id); it != inherited_head.end()) {
        const Nucleus& source = tree.nucleus(it->second);
        nucleus.base_form = source.base_form;
        nucleus.morph_tags = source.morph_tags;
        nucleus.attributes = source.attributes;
        nucleus.attributes["inherited-from"] = std::to_string(source.id);
      }
      nucleus.segments = {{nucleus.base_form, static_cast<int>(rank), std::nullopt}};
      data.sentence.push_back(nucleus.base_form);
      data.nuclei.push_back(std::move(nucleus));
      const auto rewrite = rewritten.find(linear[rank]);
      data.connexions.push_back(rewrite != rewritten.end()
                                    ? rewrite->second
                                    : tree.incoming(linear[rank]));
    }
    result.trees.push_back(build_tree(std::move(data), &inventory));

    std::size_t wheel = 0;
    for (; wheel < chains.size(); ++wheel) {
      if (++pick[wheel] < chains[wheel].conjuncts.size()) break;
      pick[wheel] = 0;
    }
    if (wheel == chains.size()) break;
  }
  return result;
}

}  // namespace dg
