// dg/gaifman.hpp - Gaifman dependency systems and their CFG counterpart
//
// A rule X(Y1 .. Yl * Yl+1 .. Yn) licenses a word of category X to
// govern dependents of categories Y1..Yn in exactly this order, the
// head standing at '*'.  Such systems generate projective trees only
// and are weakly equivalent to context-free grammars; to_cfg performs
// the constructive half, enumerate_language the bounded-length check.
//
// Grammar file format (line oriented, '#' comments):
//   cat  <SYM>
//   rule <X>(<Y> ... * <Z> ...)
//   word <surface>:<CAT>
//   root <CAT>
#pragma once

#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "dg/tree.hpp"

namespace dg {

struct GaifmanRule {
  std::string head;
  std::vector<std::string> left;   // dependents before the head
  std::vector<std::string> right;  // dependents after the head
  friend bool operator==(const GaifmanRule&, const GaifmanRule&) = default;
};

struct GaifmanGrammar {
  std::set<std::string> categories;
  std::vector<GaifmanRule> rules;  // declaration order, duplicates removed
  std::map<std::string, std::set<std::string>> lexicon;  // surface -> categories
  std::set<std::string> root_categories;

  std::vector<const GaifmanRule*> rules_for(const std::string& category) const;
  const std::set<std::string>& categories_of(const std::string& terminal) const;
};

class GrammarSyntaxError : public Error {
public:
  GrammarSyntaxError(int line, const std::string& message)
      : Error("grammar line " + std::to_string(line) + ": " + message), line_(line) {}
  int line() const noexcept { return line_; }

private:
  int line_;
};

class UndeclaredCategory : public Error {
public:
  UndeclaredCategory(int line, const std::string& symbol)
      : Error("grammar line " + std::to_string(line) + ": undeclared category '" + symbol + "'"),
        symbol_(symbol) {}
  const std::string& symbol() const noexcept { return symbol_; }

private:
  std::string symbol_;
};

class UnknownTerminal : public Error {
public:
  explicit UnknownTerminal(const std::string& token)
      : Error("token '" + token + "' is not in the lexicon"), token_(token) {}
  const std::string& token() const noexcept { return token_; }

private:
  std::string token_;
};

class BoundExceeded : public Error {
public:
  BoundExceeded(int requested, int bound)
      : Error("enumeration length " + std::to_string(requested) + " exceeds bound " +
              std::to_string(bound)) {}
};

GaifmanGrammar parse_grammar(std::istream& in);
GaifmanGrammar parse_grammar(const std::string& text);
GaifmanGrammar load_grammar(const std::string& path);

// True iff some projective analysis matches the rules exactly, with
// the top node's category among root_categories.  Chart-based,
// polynomial in sentence length.  Throws UnknownTerminal.
bool recognize(const GaifmanGrammar& grammar, const std::vector<std::string>& sentence);

struct ParseResult {
  std::vector<DependencyTree> trees;
  bool cap_exceeded = false;
};

// All distinct analyses, deterministic order: leftmost head first,
// then shorter left dependent spans, then rule declaration order.
// Arcs carry synthesized labels dep:l<i> / dep:r<i>, since Gaifman
// rules encode order, not function.
ParseResult parse_all(const GaifmanGrammar& grammar, const std::vector<std::string>& sentence,
                      std::size_t cap);

struct CfgProduction {
  std::string lhs;
  std::vector<std::string> rhs;
  friend bool operator==(const CfgProduction&, const CfgProduction&) = default;
};

struct Cfg {
  std::set<std::string> nonterminals;
  std::set<std::string> terminals;
  std::vector<CfgProduction> productions;
  std::string start;
};

// The standard construction: one nonterminal per category, one head
// preterminal per category, a production per rule with the head
// terminal at the '*' position.  Accepts exactly the strings recognize
// accepts.
Cfg to_cfg(const GaifmanGrammar& grammar);

inline constexpr int kDefaultLengthBound = 10;

// The exact set of accepted strings (space-joined) of length <=
// max_len.  Throws BoundExceeded when max_len > bound.
std::set<std::string> enumerate_language(const GaifmanGrammar& grammar, int max_len,
                                         int bound = kDefaultLengthBound);
std::set<std::string> enumerate_language(const Cfg& cfg, int max_len,
                                         int bound = kDefaultLengthBound);

}  // namespace dg
