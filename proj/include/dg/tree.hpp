// dg/tree.hpp - nuclei, connexions, dependency trees and the structural axioms
#pragma once

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "dg/errors.hpp"
#include "dg/functions.hpp"

namespace dg {

using NucleusId = int;

// Virtual root.  It has no linear position; the top nucleus of a
// sentence is attached to it with the "main" function so that every
// nucleus has exactly one regent.
inline constexpr NucleusId kRoot = 0;

// Character range within one orthographic token, used when a token is
// split into several words (contractions).
struct SubSpan {
  int begin = 0;
  int end = 0;
  friend bool operator==(const SubSpan&, const SubSpan&) = default;
};

struct WordSegment {
  std::string surface;
  int position = 0;  // 0-based token index in the sentence
  std::optional<SubSpan> sub_span;
  friend bool operator==(const WordSegment&, const WordSegment&) = default;
};

// The syntactic primitive: one or more, possibly discontiguous, words
// or parts of words sharing a syntactic and semantic centre.
struct Nucleus {
  NucleusId id = 0;
  std::vector<WordSegment> segments;  // kept in linear order
  std::string base_form;
  std::vector<std::string> morph_tags;
  std::map<std::string, std::string> attributes;

  // Linear anchor: the position of the first segment.
  int anchor() const;
  bool has_tag(std::string_view tag) const;
  friend bool operator==(const Nucleus&, const Nucleus&) = default;
};

// Directed labeled arc from a superior term (regent) to an inferior
// term (dependent).  regent == kRoot marks the top connexion.
struct Connexion {
  NucleusId regent = kRoot;
  NucleusId dependent = 0;
  std::string function;
  friend bool operator==(const Connexion&, const Connexion&) = default;
};

// Raw, unvalidated structure.  build_tree turns it into a
// DependencyTree; validate_axioms diagnoses it in place.
struct TreeData {
  std::vector<std::string> sentence;
  std::vector<Nucleus> nuclei;
  std::vector<Connexion> connexions;
};

enum class ViolationKind {
  MultipleHeads,   // nucleus is the dependent of more than one connexion
  IsolatedNode,    // nucleus has no regent at all
  Cycle,           // directed cycle (includes mutual and self dependency)
  NoRoot,          // no connexion from the virtual root
  MultipleRoots,   // more than one connexion from the virtual root
  SegmentOverlap,  // token position claimed twice
  // Structural preconditions checked by build_tree (not axioms):
  DanglingReference,  // connexion endpoint is not a declared nucleus
  DuplicateId,
  BadNucleus,       // empty segment list or non-positive id
  InvalidFunction,  // label outside the configured inventory
  MisplacedMain,    // "main" off the root, or a root connexion not "main"
};

struct AxiomViolation {
  ViolationKind kind;
  std::vector<NucleusId> ids;  // offending nuclei, sorted
  int position = -1;           // token position, for SegmentOverlap
  friend bool operator==(const AxiomViolation&, const AxiomViolation&) = default;
};

using ViolationReport = std::vector<AxiomViolation>;

std::string to_string(ViolationKind kind);
std::string describe(const AxiomViolation& violation);

// Raised by build_tree when the input breaks a precondition or an axiom.
class TreeError : public Error {
public:
  explicit TreeError(ViolationReport report);
  const ViolationReport& report() const noexcept { return report_; }

private:
  ViolationReport report_;
};

class DependencyTree;

// Structural prechecks: unique positive ids, non-empty segment lists,
// resolvable connexion endpoints, function labels from the inventory
// (skipped when inventory is null), "main" placement.
ViolationReport check_structure(const TreeData& data,
                                const FunctionInventory* inventory);

// The six axioms: exactly one regent each, acyclicity, a unique top
// nucleus, no isolated nodes, no multiple or mutual dependencies, and
// token coverage by at most one nucleus.  Connexion endpoints must
// already resolve.  Empty report iff all six hold; projectivity is
// deliberately not among them.
ViolationReport validate_axioms(const TreeData& data);
ViolationReport validate_axioms(const DependencyTree& tree);

// Validates and freezes a tree.  Throws TreeError (carrying the full
// report) if any precheck or axiom fails.  When inventory is null,
// function labels are not checked against an inventory; "main"
// placement is always enforced.
DependencyTree build_tree(TreeData data,
                          const FunctionInventory* inventory =
                              &FunctionInventory::classic());

// An immutable, axiom-checked dependency tree.  Safe to share across
// concurrent readers.
class DependencyTree {
public:
  const std::vector<std::string>& sentence() const { return data_.sentence; }
  const std::vector<Nucleus>& nuclei() const { return data_.nuclei; }
  const std::vector<Connexion>& connexions() const { return data_.connexions; }
  const TreeData& data() const { return data_; }

  bool has_nucleus(NucleusId id) const;
  const Nucleus& nucleus(NucleusId id) const;  // throws UnknownId
  NucleusId root() const { return root_; }

  // The unique connexion whose dependent is id (the root connexion for
  // the top nucleus).  Throws UnknownId.
  const Connexion& incoming(NucleusId id) const;
  NucleusId regent_of(NucleusId id) const { return incoming(id).regent; }

  // Dependents in linear (anchor) order.
  std::vector<NucleusId> dependents(NucleusId id) const;

  // The id set of the full subtree under id, id included; sorted.
  std::vector<NucleusId> subtree(NucleusId id) const;
  bool in_subtree(NucleusId node, NucleusId ancestor) const;

  // All nuclei sorted by anchor.
  std::vector<NucleusId> linear_order() const;

private:
  friend DependencyTree build_tree(TreeData, const FunctionInventory*);
  DependencyTree() = default;

  std::size_t index_of(NucleusId id) const;  // throws UnknownId

  TreeData data_;
  NucleusId root_ = kRoot;
  std::unordered_map<NucleusId, std::size_t> index_;
  std::unordered_map<NucleusId, std::size_t> incoming_;  // dependent -> connexion
  std::vector<std::vector<NucleusId>> children_;         // by nucleus index, anchor order
};

}  // namespace dg
