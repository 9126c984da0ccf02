// dg/coordination.hpp - cc chains, gapping frames, and combination expansion
#pragma once

#include <map>
#include <string>
#include <vector>

#include "dg/tree.hpp"

namespace dg {

// A maximal group of nuclei connected by cc arcs.  The cc arc marks
// functional equivalence, not dependency: conjuncts all bear the
// function the chain carries toward its attachment point.
struct CoordinationChain {
  NucleusId anchor = kRoot;  // attachment point in the main tree
  std::string function;      // shared function of the conjuncts
  std::vector<NucleusId> conjuncts;  // linear order
  std::vector<NucleusId> coordinators;
  // The member whose incoming arc is not cc.  For pivot-style chains
  // this is the coordinator; in gapping it is the first conjunct.
  NucleusId top = kRoot;
};

class MalformedChain : public Error {
public:
  explicit MalformedChain(NucleusId id, const std::string& why)
      : Error("malformed coordination chain at nucleus " + std::to_string(id) + ": " + why),
        id_(id) {}
  NucleusId id() const noexcept { return id_; }

private:
  NucleusId id_;
};

// A dependent-bearing coordinator with no cc link to a clause head.
class NoAntecedent : public Error {
public:
  explicit NoAntecedent(NucleusId coordinator)
      : Error("coordinator " + std::to_string(coordinator) +
              " heads dependents but inherits from no verbal nucleus"),
        coordinator_(coordinator) {}
  NucleusId coordinator() const noexcept { return coordinator_; }

private:
  NucleusId coordinator_;
};

class CombinatorialBound : public Error {
public:
  CombinatorialBound(std::size_t combinations, std::size_t cap)
      : Error("coordination expansion would produce " + std::to_string(combinations) +
              " trees (cap " + std::to_string(cap) + ")") {}
};

std::vector<CoordinationChain> detect_chains(
    const DependencyTree& tree,
    const FunctionInventory& inventory = FunctionInventory::classic());

// The coordinator of a gapped clause stands in for the missing verbal
// nucleus; no empty node is introduced.  The frame records what it
// inherited, copied at inheritance time.
struct GapFrame {
  NucleusId coordinator = 0;
  NucleusId inherited_from = 0;
  std::map<std::string, std::string> inherited_attributes;
};

struct GappedTree {
  DependencyTree tree;
  std::vector<GapFrame> frames;
};

// Attaches a GapFrame to every coordinator that heads non-cc
// dependents.  Throws NoAntecedent when such a coordinator has no cc
// link to a nucleus that itself heads dependents.
GappedTree apply_gapping(const DependencyTree& tree,
                         const FunctionInventory& inventory = FunctionInventory::classic());

struct ExpansionResult {
  std::vector<DependencyTree> trees;
  bool nested_chains = false;  // a chain sat inside another chain's conjunct
};

// The cartesian product over chains of one-conjunct choices.  Each
// output is a simple tree: no cc arcs remain, gapped clauses are headed
// by a copy of the inherited nucleus, and expanded sentences keep base
// forms (no re-inflection).  Throws CombinatorialBound above `cap`.
ExpansionResult expand_combinations(
    const DependencyTree& tree,
    const FunctionInventory& inventory = FunctionInventory::classic(),
    std::size_t cap = 1024);

}  // namespace dg
