// dg/segmentation.hpp - token-to-nucleus segmentation and projective linearization
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "dg/tree.hpp"

namespace dg {

// Segmentation consumes caller-tagged tokens; there is no built-in
// tagger or lexicon.
struct TaggedToken {
  std::string surface;
  std::string tag;
};

enum class RuleKind {
  Contraction,       // expand one token into several words
  VerbChain,         // auxiliaries join the next main verb, gaps allowed
  PrepNoun,          // a preposition joins the next noun, gaps allowed
  LexicalException,  // a fixed surface sequence forms one nucleus
};

struct SegmentationRule {
  RuleKind kind;
  // Contraction: pattern = {surface}; a pattern starting with an
  //   apostrophe or "n't" matches as a token suffix, the remainder of
  //   the token becoming the first expanded word.
  // VerbChain / PrepNoun: pattern = {dependent-ish tag, centre tag},
  //   e.g. {AUX, V} or {PREP, N}.
  // LexicalException: pattern = the exact surface sequence.
  std::vector<std::string> pattern;
  std::vector<std::string> replacement;  // contraction expansion words
};

struct RuleSet {
  std::vector<SegmentationRule> rules;
};

// Line-oriented rule file:
//   contraction <surface> -> <w1> <w2> ...
//   chain <AUXTAG>* <VTAG>
//   prepnoun <PREPTAG> <NTAG>
//   lexical <w1> <w2> ...
//   # comment
RuleSet parse_rules(std::istream& in);
RuleSet load_rules(const std::string& path);

// Two segmentation rules claimed the same (expanded) word.
class RuleConflict : public Error {
public:
  explicit RuleConflict(int position)
      : Error("segmentation rules conflict at token " + std::to_string(position)),
        position_(position) {}
  int position() const noexcept { return position_; }

private:
  int position_;
};

// One word of a contraction expansion, with its character range in the
// original token.
struct ExpandedWord {
  std::string word;
  SubSpan span;
  friend bool operator==(const ExpandedWord&, const ExpandedWord&) = default;
};

// "won't" -> will, not.  Non-contractions come back as the singleton
// sequence covering the whole token.  Idempotent on its own output.
std::vector<ExpandedWord> expand_contraction(const std::string& token, const RuleSet& rules);

// Partitions the (contraction-expanded) tokens into nuclei.  Nucleus
// ids are assigned 1..n in linear order; segment positions refer to the
// original token indices, with sub-spans marking split tokens.
// Throws RuleConflict when two rules claim the same word.
std::vector<Nucleus> segment(const std::vector<TaggedToken>& tokens, const RuleSet& rules);

// An admissible word order for a structural tree: every subtree
// occupies a contiguous block.
struct Linearization {
  std::vector<NucleusId> order;
  friend bool operator==(const Linearization&, const Linearization&) = default;
};

// Optional language-specific filter: dependents attached with
// `function` must precede (or follow) their head.
struct PrecedenceConstraint {
  std::string function;
  bool before_head = true;
};

struct LinearizationResult {
  std::vector<Linearization> orders;
  bool cap_exceeded = false;
};

// All projective orders of the tree, deterministic order, truncated at
// cap.  Without constraints the count is the product over nuclei of
// (dependents + 1)!.
LinearizationResult enumerate_projective_linearizations(
    const DependencyTree& tree, std::size_t cap,
    const std::vector<PrecedenceConstraint>& constraints = {});

}  // namespace dg
