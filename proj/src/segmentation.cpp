#include "dg/segmentation.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <numeric>
#include <sstream>

namespace dg {

namespace {

std::string lowercased(std::string text) {
  std::transform(text.begin(), text.end(), text.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return text;
}

bool is_suffix_pattern(const std::string& pattern) {
  return !pattern.empty() && (pattern.front() == '\'' || pattern.rfind("n't", 0) == 0);
}

}  // namespace

RuleSet parse_rules(std::istream& in) {
  RuleSet set;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string keyword;
    if (!(fields >> keyword)) continue;
    const auto fail = [&lineno](const char* what) {
      throw Error("rules line " + std::to_string(lineno) + ": " + what);
    };
    if (keyword == "contraction") {
      std::string surface, arrow, word;
      if (!(fields >> surface >> arrow) || arrow != "->") fail("expected '<surface> -> <words>'");
      SegmentationRule rule{RuleKind::Contraction, {surface}, {}};
      while (fields >> word) rule.replacement.push_back(word);
      if (rule.replacement.empty()) fail("contraction expansion must be non-empty");
      set.rules.push_back(std::move(rule));
    } else if (keyword == "chain") {
      std::string aux, verb, extra;
      if (!(fields >> aux >> verb) || (fields >> extra)) fail("expected 'chain <AUX>* <V>'");
      if (aux.empty() || aux.back() != '*') fail("chain dependent tag must end with '*'");
      aux.pop_back();
      set.rules.push_back({RuleKind::VerbChain, {aux, verb}, {}});
    } else if (keyword == "prepnoun") {
      std::string prep, noun, extra;
      if (!(fields >> prep >> noun) || (fields >> extra)) fail("expected 'prepnoun <PREP> <N>'");
      set.rules.push_back({RuleKind::PrepNoun, {prep, noun}, {}});
    } else if (keyword == "lexical") {
      SegmentationRule rule{RuleKind::LexicalException, {}, {}};
      std::string word;
      while (fields >> word) rule.pattern.push_back(word);
      if (rule.pattern.empty()) fail("lexical sequence must be non-empty");
      set.rules.push_back(std::move(rule));
    } else {
      fail("unknown rule keyword");
    }
  }
  return set;
}

RuleSet load_rules(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open rules file " + path);
  return parse_rules(in);
}

std::vector<ExpandedWord> expand_contraction(const std::string& token, const RuleSet& rules) {
  const int length = static_cast<int>(token.size());
  // Exact-surface rules take precedence over suffix rules, so the
  // irregular "won't" wins over the generic "n't".
  for (const SegmentationRule& rule : rules.rules) {
    if (rule.kind != RuleKind::Contraction || is_suffix_pattern(rule.pattern.front())) continue;
    if (rule.pattern.front() != token) continue;
    std::vector<ExpandedWord> expansion;
    // The spans partition the token evenly; they record provenance,
    // not an alignment.
    const int parts = static_cast<int>(rule.replacement.size());
    for (int i = 0; i < parts; ++i) {
      expansion.push_back({rule.replacement[i],
                           {length * i / parts, length * (i + 1) / parts}});
    }
    return expansion;
  }
  for (const SegmentationRule& rule : rules.rules) {
    if (rule.kind != RuleKind::Contraction || !is_suffix_pattern(rule.pattern.front())) continue;
    const std::string& suffix = rule.pattern.front();
    const int stem = length - static_cast<int>(suffix.size());
    if (stem <= 0 || token.compare(stem, suffix.size(), suffix) != 0) continue;
    std::vector<ExpandedWord> expansion{{token.substr(0, stem), {0, stem}}};
    const int parts = static_cast<int>(rule.replacement.size());
    for (int i = 0; i < parts; ++i) {
      expansion.push_back({rule.replacement[i],
                           {stem + (length - stem) * i / parts,
                            stem + (length - stem) * (i + 1) / parts}});
    }
    return expansion;
  }
  return {{token, {0, length}}};
}

namespace {

struct Word {
  std::string surface;
  std::string tag;
  int position;
  std::optional<SubSpan> sub_span;
  int group = -1;  // claim made by a grouping rule
};

// Claims `word` for `group`; a second claim is a rule conflict.
void claim(std::vector<Word>& words, std::size_t word_index, int group) {
  Word& word = words[word_index];
  if (word.group >= 0 && word.group != group) throw RuleConflict(word.position);
  word.group = group;
}

}  // namespace

std::vector<Nucleus> segment(const std::vector<TaggedToken>& tokens, const RuleSet& rules) {
  std::vector<Word> words;
  for (std::size_t position = 0; position < tokens.size(); ++position) {
    const TaggedToken& token = tokens[position];
    const auto expansion = expand_contraction(token.surface, rules);
    for (const ExpandedWord& expanded : expansion) {
      Word word{expanded.word, token.tag, static_cast<int>(position), std::nullopt};
      if (expansion.size() > 1) word.sub_span = expanded.span;
      words.push_back(std::move(word));
    }
  }

  int next_group = 0;
  std::vector<int> group_centre;  // word index of the semantic centre

  for (const SegmentationRule& rule : rules.rules) {
    if (rule.kind == RuleKind::LexicalException) {
      const std::size_t n = rule.pattern.size();
      for (std::size_t start = 0; start + n <= words.size(); ++start) {
        bool match = true;
        for (std::size_t k = 0; k < n && match; ++k) {
          match = words[start + k].surface == rule.pattern[k];
        }
        if (!match) continue;
        const int group = next_group++;
        group_centre.push_back(static_cast<int>(start));
        for (std::size_t k = 0; k < n; ++k) claim(words, start + k, group);
        start += n - 1;
      }
    } else if (rule.kind == RuleKind::VerbChain) {
      // Auxiliaries wait for the next main verb; an intervening
      // subject does not break the chain.
      std::vector<std::size_t> pending;
      for (std::size_t i = 0; i < words.size(); ++i) {
        if (words[i].tag == rule.pattern[0] && words[i].group < 0) {
          pending.push_back(i);
        } else if (words[i].tag == rule.pattern[1]) {
          if (pending.empty()) continue;  // a bare verb stays unclaimed
          const int group = next_group++;
          group_centre.push_back(static_cast<int>(i));
          for (std::size_t aux : pending) claim(words, aux, group);
          claim(words, i, group);
          pending.clear();
        }
      }
    } else if (rule.kind == RuleKind::PrepNoun) {
      for (std::size_t i = 0; i < words.size(); ++i) {
        if (words[i].tag != rule.pattern[0] || words[i].group >= 0) continue;
        for (std::size_t j = i + 1; j < words.size(); ++j) {
          if (words[j].tag != rule.pattern[1] || words[j].group >= 0) continue;
          const int group = next_group++;
          group_centre.push_back(static_cast<int>(j));
          claim(words, i, group);
          claim(words, j, group);
          break;
        }
      }
    }
  }

  for (std::size_t i = 0; i < words.size(); ++i) {
    if (words[i].group < 0) {
      words[i].group = next_group++;
      group_centre.push_back(static_cast<int>(i));
    }
  }

  // Nuclei in linear order of their first word.
  std::vector<std::vector<std::size_t>> members(next_group);
  for (std::size_t i = 0; i < words.size(); ++i) members[words[i].group].push_back(i);
  std::vector<int> group_order(next_group);
  std::iota(group_order.begin(), group_order.end(), 0);
  std::sort(group_order.begin(), group_order.end(),
            [&members](int a, int b) { return members[a].front() < members[b].front(); });

  std::vector<Nucleus> nuclei;
  NucleusId next_id = 1;
  for (int group : group_order) {
    Nucleus nucleus;
    nucleus.id = next_id++;
    for (std::size_t index : members[group]) {
      const Word& word = words[index];
      nucleus.segments.push_back({word.surface, word.position, word.sub_span});
      nucleus.morph_tags.push_back(word.tag);
    }
    nucleus.base_form = lowercased(words[group_centre[group]].surface);
    nuclei.push_back(std::move(nucleus));
  }
  return nuclei;
}

namespace {

using Orders = std::vector<std::vector<NucleusId>>;

// All projective orders of the subtree under `node`: the node and its
// child blocks arranged in every admissible permutation, each block
// expanded recursively.  Generation stops once `limit` orders exist.
Orders subtree_orders(const DependencyTree& tree, NucleusId node,
                      const std::vector<PrecedenceConstraint>& constraints,
                      std::size_t limit) {
  const std::vector<NucleusId> children = tree.dependents(node);
  const std::size_t items = children.size() + 1;

  std::vector<Orders> child_orders;
  child_orders.reserve(children.size());
  for (NucleusId child : children) {
    child_orders.push_back(subtree_orders(tree, child, constraints, limit));
  }

  std::vector<int> item(items);  // 0 = the head, k = child k-1
  std::iota(item.begin(), item.end(), 0);

  Orders result;
  do {
    int head_slot = 0;
    while (item[head_slot] != 0) ++head_slot;
    bool admissible = true;
    for (std::size_t slot = 0; slot < items && admissible; ++slot) {
      if (item[slot] == 0) continue;
      const NucleusId child = children[item[slot] - 1];
      const std::string& function = tree.incoming(child).function;
      for (const PrecedenceConstraint& constraint : constraints) {
        if (constraint.function != function) continue;
        if (constraint.before_head != (static_cast<int>(slot) < head_slot)) {
          admissible = false;
          break;
        }
      }
    }
    if (!admissible) continue;

    // Cartesian product of the chosen child orders, odometer style.
    std::vector<std::size_t> pick(children.size(), 0);
    for (;;) {
      std::vector<NucleusId> order;
      for (std::size_t slot = 0; slot < items; ++slot) {
        if (item[slot] == 0) {
          order.push_back(node);
        } else {
          const Orders& block = child_orders[item[slot] - 1];
          const auto& chosen = block[pick[item[slot] - 1]];
          order.insert(order.end(), chosen.begin(), chosen.end());
        }
      }
      result.push_back(std::move(order));
      if (result.size() >= limit) return result;

      std::size_t wheel = 0;
      for (; wheel < pick.size(); ++wheel) {
        if (++pick[wheel] < child_orders[wheel].size()) break;
        pick[wheel] = 0;
      }
      if (wheel == pick.size()) break;
    }
  } while (std::next_permutation(item.begin(), item.end()));
  return result;
}

}  // namespace

LinearizationResult enumerate_projective_linearizations(
    const DependencyTree& tree, std::size_t cap,
    const std::vector<PrecedenceConstraint>& constraints) {
  LinearizationResult result;
  Orders orders = subtree_orders(tree, tree.root(), constraints, cap + 1);
  if (orders.size() > cap) {
    orders.resize(cap);
    result.cap_exceeded = true;
  }
  result.orders.reserve(orders.size());
  for (auto& order : orders) result.orders.push_back({std::move(order)});
  return result;
}

}  // namespace dg
