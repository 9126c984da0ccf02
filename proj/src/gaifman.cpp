#include "dg/gaifman.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace dg {

std::vector<const GaifmanRule*> GaifmanGrammar::rules_for(const std::string& category) const {
  std::vector<const GaifmanRule*> matching;
  for (const GaifmanRule& rule : rules) {
    if (rule.head == category) matching.push_back(&rule);
  }
  return matching;
}

const std::set<std::string>& GaifmanGrammar::categories_of(const std::string& terminal) const {
  const auto it = lexicon.find(terminal);
  if (it == lexicon.end()) throw UnknownTerminal(terminal);
  return it->second;
}

GaifmanGrammar parse_grammar(std::istream& in) {
  GaifmanGrammar grammar;
  struct PendingRule {
    GaifmanRule rule;
    int line;
  };
  std::vector<PendingRule> pending_rules;
  std::vector<std::tuple<std::string, std::string, int>> pending_words;
  std::vector<std::pair<std::string, int>> pending_roots;

  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string keyword;
    if (!(fields >> keyword)) continue;
    if (keyword == "cat") {
      std::string symbol, extra;
      if (!(fields >> symbol) || (fields >> extra)) {
        throw GrammarSyntaxError(lineno, "expected 'cat <SYM>'");
      }
      grammar.categories.insert(symbol);
    } else if (keyword == "rule") {
      std::string rest;
      std::getline(fields, rest);
      const auto open = rest.find('(');
      const auto close = rest.rfind(')');
      if (open == std::string::npos || close == std::string::npos || close < open ||
          rest.find_first_not_of(" \t\r", close + 1) != std::string::npos) {
        throw GrammarSyntaxError(lineno, "expected 'rule <X>(<Y> ... * <Z> ...)'");
      }
      GaifmanRule rule;
      {
        std::istringstream head(rest.substr(0, open));
        std::string extra;
        if (!(head >> rule.head) || (head >> extra)) {
          throw GrammarSyntaxError(lineno, "malformed rule head");
        }
      }
      std::istringstream inside(rest.substr(open + 1, close - open - 1));
      std::string symbol;
      bool seen_star = false;
      while (inside >> symbol) {
        // Tolerate the star glued to a neighbour, as in "N* N" or "*N".
        while (!symbol.empty()) {
          const auto star = symbol.find('*');
          std::string piece = star == std::string::npos ? symbol : symbol.substr(0, star);
          if (!piece.empty()) (seen_star ? rule.right : rule.left).push_back(piece);
          if (star == std::string::npos) break;
          if (seen_star) throw GrammarSyntaxError(lineno, "more than one '*' in rule");
          seen_star = true;
          symbol = symbol.substr(star + 1);
        }
      }
      if (!seen_star) throw GrammarSyntaxError(lineno, "rule is missing '*'");
      pending_rules.push_back({std::move(rule), lineno});
    } else if (keyword == "word") {
      std::string entry, extra;
      if (!(fields >> entry) || (fields >> extra)) {
        throw GrammarSyntaxError(lineno, "expected 'word <surface>:<CAT>'");
      }
      const auto colon = entry.rfind(':');
      if (colon == std::string::npos || colon == 0 || colon + 1 == entry.size()) {
        throw GrammarSyntaxError(lineno, "expected 'word <surface>:<CAT>'");
      }
      pending_words.emplace_back(entry.substr(0, colon), entry.substr(colon + 1), lineno);
    } else if (keyword == "root") {
      std::string symbol, extra;
      if (!(fields >> symbol) || (fields >> extra)) {
        throw GrammarSyntaxError(lineno, "expected 'root <CAT>'");
      }
      pending_roots.emplace_back(symbol, lineno);
    } else {
      throw GrammarSyntaxError(lineno, "unknown keyword '" + keyword + "'");
    }
  }

  const auto require_category = [&grammar](const std::string& symbol, int at) {
    if (!grammar.categories.count(symbol)) throw UndeclaredCategory(at, symbol);
  };
  for (auto& [rule, at] : pending_rules) {
    require_category(rule.head, at);
    for (const std::string& symbol : rule.left) require_category(symbol, at);
    for (const std::string& symbol : rule.right) require_category(symbol, at);
    if (std::find(grammar.rules.begin(), grammar.rules.end(), rule) == grammar.rules.end()) {
      grammar.rules.push_back(std::move(rule));
    }
  }
  for (const auto& [surface, category, at] : pending_words) {
    require_category(category, at);
    grammar.lexicon[surface].insert(category);
  }
  for (const auto& [symbol, at] : pending_roots) {
    require_category(symbol, at);
    grammar.root_categories.insert(symbol);
  }
  return grammar;
}

GaifmanGrammar parse_grammar(const std::string& text) {
  std::istringstream in(text);
  return parse_grammar(in);
}

GaifmanGrammar load_grammar(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open grammar file " + path);
  return parse_grammar(in);
}

namespace {

// Chart of complete spans: chart(i, j, c) is true when tokens [i..j]
// form a finished subtree headed by a word of category c.
class Chart {
public:
  Chart(const GaifmanGrammar& grammar, const std::vector<std::string>& sentence)
      : n_(static_cast<int>(sentence.size())) {
    for (const std::string& category : grammar.categories) {
      category_index_.emplace(category, static_cast<int>(category_names_.size()));
      category_names_.push_back(category);
    }
    ncats_ = static_cast<int>(category_names_.size());
    lex_.assign(n_ * ncats_, false);
    for (int i = 0; i < n_; ++i) {
      for (const std::string& category : grammar.categories_of(sentence[i])) {
        lex_[i * ncats_ + category_index_.at(category)] = true;
      }
    }
    for (const GaifmanRule& rule : grammar.rules) {
      IndexedRule indexed{category_index_.at(rule.head), {}, {}, &rule};
      for (const std::string& symbol : rule.left) {
        indexed.left.push_back(category_index_.at(symbol));
      }
      for (const std::string& symbol : rule.right) {
        indexed.right.push_back(category_index_.at(symbol));
      }
      rules_.push_back(std::move(indexed));
    }

    complete_.assign(static_cast<std::size_t>(n_) * n_ * ncats_, false);
    for (int width = 1; width <= n_; ++width) {
      for (int i = 0; i + width <= n_; ++i) {
        const int j = i + width - 1;
        for (const IndexedRule& rule : rules_) {
          if (complete(i, j, rule.head)) continue;
          for (int h = i; h <= j; ++h) {
            if (!lex_[h * ncats_ + rule.head]) continue;
            if (matches_sequence(rule.left, i, h - 1) &&
                matches_sequence(rule.right, h + 1, j)) {
              set_complete(i, j, rule.head);
              break;
            }
          }
        }
      }
    }
  }

  int size() const { return n_; }
  int category_count() const { return ncats_; }
  int category_index(const std::string& name) const { return category_index_.at(name); }

  bool complete(int i, int j, int cat) const {
    return complete_[(static_cast<std::size_t>(i) * n_ + j) * ncats_ + cat];
  }
  bool word_has_category(int position, int cat) const {
    return lex_[position * ncats_ + cat];
  }

  struct IndexedRule {
    int head;
    std::vector<int> left;
    std::vector<int> right;
    const GaifmanRule* source;
  };
  const std::vector<IndexedRule>& rules() const { return rules_; }

  // Can [a..b] be partitioned into consecutive complete spans matching
  // `cats` in order?  Empty sequences match exactly the empty span.
  bool matches_sequence(const std::vector<int>& cats, int a, int b) const {
    if (cats.empty()) return b < a;
    if (b < a) return false;
    std::vector<char> reach(b - a + 2, false);
    reach[0] = true;  // next unconsumed position a + offset
    for (int cat : cats) {
      std::vector<char> next(b - a + 2, false);
      for (int offset = 0; offset <= b - a; ++offset) {
        if (!reach[offset]) continue;
        for (int end = a + offset; end <= b; ++end) {
          if (complete(a + offset, end, cat)) next[end - a + 1] = true;
        }
      }
      reach.swap(next);
    }
    return reach[b - a + 1];
  }

private:
  void set_complete(int i, int j, int cat) {
    complete_[(static_cast<std::size_t>(i) * n_ + j) * ncats_ + cat] = true;
  }

  int n_;
  int ncats_ = 0;
  std::vector<std::string> category_names_;
  std::map<std::string, int> category_index_;
  std::vector<char> lex_;
  std::vector<char> complete_;
  std::vector<IndexedRule> rules_;
};

}  // namespace

bool recognize(const GaifmanGrammar& grammar, const std::vector<std::string>& sentence) {
  if (sentence.empty()) return false;
  const Chart chart(grammar, sentence);
  const int last = chart.size() - 1;
  for (const std::string& category : grammar.root_categories) {
    if (chart.complete(0, last, chart.category_index(category))) return true;
  }
  return false;
}

namespace {

struct Arc {
  int regent;  // word position
  int dependent;
  std::string label;
  friend bool operator<(const Arc& a, const Arc& b) {
    return std::tie(a.regent, a.dependent, a.label) < std::tie(b.regent, b.dependent, b.label);
  }
};

// A finished analysis of one span: its head position and all arcs
// inside the span.
struct SpanTree {
  int head;
  std::vector<Arc> arcs;
};

class Enumerator {
public:
  Enumerator(const Chart& chart, std::size_t budget) : chart_(chart), budget_(budget) {}

  // Analyses of [i..j] as category `cat`, deterministic order:
  // leftmost head, then rule order, then shortest-first dependent
  // spans.  At most `budget_` results.
  std::vector<SpanTree> span_trees(int i, int j, int cat) {
    std::vector<SpanTree> result;
    for (int h = i; h <= j && result.size() < budget_; ++h) {
      if (!chart_.word_has_category(h, cat)) continue;
      for (const Chart::IndexedRule& rule : chart_.rules()) {
        if (rule.head != cat) continue;
        std::vector<std::vector<std::pair<int, int>>> left_splits;
        collect_splits(rule.left, i, h - 1, {}, left_splits);
        for (const auto& left : left_splits) {
          std::vector<std::vector<std::pair<int, int>>> right_splits;
          collect_splits(rule.right, h + 1, j, {}, right_splits);
          for (const auto& right : right_splits) {
            compose(h, rule, left, right, result);
            if (result.size() >= budget_) return result;
          }
        }
      }
    }
    return result;
  }

private:
  // All ways to cut [a..b] into consecutive complete spans matching
  // `cats`; shorter first spans come first.
  void collect_splits(const std::vector<int>& cats, int a, int b,
                      std::vector<std::pair<int, int>> chosen,
                      std::vector<std::vector<std::pair<int, int>>>& out) {
    if (cats.size() == chosen.size()) {
      if (b < a) out.push_back(std::move(chosen));
      return;
    }
    const int cat = cats[chosen.size()];
    const std::vector<int> rest(cats.begin() + chosen.size() + 1, cats.end());
    for (int end = a; end <= b; ++end) {
      if (static_cast<int>(rest.size()) > b - end) break;  // a span per category left
      if (!chart_.complete(a, end, cat)) continue;
      // Cheap viability check before recursing.
      if (!chart_.matches_sequence(rest, end + 1, b)) continue;
      auto next = chosen;
      next.emplace_back(a, end);
      collect_splits(cats, end + 1, b, std::move(next), out);
      if (out.size() >= budget_) return;
    }
  }

  void compose(int head, const Chart::IndexedRule& rule,
               const std::vector<std::pair<int, int>>& left,
               const std::vector<std::pair<int, int>>& right, std::vector<SpanTree>& out) {
    std::vector<std::vector<SpanTree>> parts;
    std::vector<std::string> labels;
    for (std::size_t k = 0; k < left.size(); ++k) {
      parts.push_back(span_trees(left[k].first, left[k].second, rule.left[k]));
      labels.push_back("dep:l" + std::to_string(k + 1));
    }
    for (std::size_t k = 0; k < right.size(); ++k) {
      parts.push_back(span_trees(right[k].first, right[k].second, rule.right[k]));
      labels.push_back("dep:r" + std::to_string(k + 1));
    }
    for (const auto& part : parts) {
      if (part.empty()) return;  // dead split; chart said viable, but budget may truncate
    }
    std::vector<std::size_t> pick(parts.size(), 0);
    for (;;) {
      SpanTree tree{head, {}};
      for (std::size_t k = 0; k < parts.size(); ++k) {
        const SpanTree& child = parts[k][pick[k]];
        tree.arcs.push_back({head, child.head, labels[k]});
        tree.arcs.insert(tree.arcs.end(), child.arcs.begin(), child.arcs.end());
      }
      out.push_back(std::move(tree));
      if (out.size() >= budget_) return;
      std::size_t wheel = 0;
      for (; wheel < parts.size(); ++wheel) {
        if (++pick[wheel] < parts[wheel].size()) break;
        pick[wheel] = 0;
      }
      if (wheel == parts.size()) break;
    }
  }

  const Chart& chart_;
  std::size_t budget_;
};

DependencyTree arcs_to_tree(const std::vector<std::string>& sentence, int head,
                            const std::vector<Arc>& arcs) {
  TreeData data;
  data.sentence = sentence;
  for (int position = 0; position < static_cast<int>(sentence.size()); ++position) {
    Nucleus nucleus;
    nucleus.id = position + 1;
    nucleus.segments.push_back({sentence[position], position, std::nullopt});
    nucleus.base_form = sentence[position];
    data.nuclei.push_back(std::move(nucleus));
  }
  data.connexions.push_back({kRoot, head + 1, "main"});
  for (const Arc& arc : arcs) {
    data.connexions.push_back({arc.regent + 1, arc.dependent + 1, arc.label});
  }
  return build_tree(std::move(data), nullptr);
}

}  // namespace

ParseResult parse_all(const GaifmanGrammar& grammar, const std::vector<std::string>& sentence,
                      std::size_t cap) {
  ParseResult result;
  if (sentence.empty()) return result;
  const Chart chart(grammar, sentence);
  Enumerator enumerator(chart, cap + 1);

  std::set<std::vector<Arc>> seen;
  std::vector<std::pair<int, std::vector<Arc>>> analyses;  // head + sorted arcs
  for (const std::string& category : grammar.root_categories) {
    for (SpanTree& tree :
         enumerator.span_trees(0, chart.size() - 1, chart.category_index(category))) {
      std::vector<Arc> arcs = tree.arcs;
      std::sort(arcs.begin(), arcs.end());
      if (seen.insert(arcs).second) analyses.emplace_back(tree.head, std::move(arcs));
    }
  }
  if (analyses.size() > cap) {
    analyses.resize(cap);
    result.cap_exceeded = true;
  }
  for (const auto& [head, arcs] : analyses) {
    result.trees.push_back(arcs_to_tree(sentence, head, arcs));
  }
  return result;
}

namespace {

// Appends '^' until the name is fresh.
std::string fresh_name(std::string base, const std::set<std::string>& taken) {
  while (taken.count(base)) base += '^';
  return base;
}

}  // namespace

Cfg to_cfg(const GaifmanGrammar& grammar) {
  Cfg cfg;
  cfg.nonterminals = grammar.categories;
  std::map<std::string, std::string> head_preterminal;
  std::set<std::string> taken = grammar.categories;
  for (const std::string& category : grammar.categories) {
    const std::string name = fresh_name(category + "^", taken);
    taken.insert(name);
    head_preterminal[category] = name;
    cfg.nonterminals.insert(name);
  }
  for (const GaifmanRule& rule : grammar.rules) {
    CfgProduction production;
    production.lhs = rule.head;
    production.rhs = rule.left;
    production.rhs.push_back(head_preterminal.at(rule.head));
    production.rhs.insert(production.rhs.end(), rule.right.begin(), rule.right.end());
    cfg.productions.push_back(std::move(production));
  }
  for (const auto& [surface, categories] : grammar.lexicon) {
    cfg.terminals.insert(surface);
    for (const std::string& category : categories) {
      cfg.productions.push_back({head_preterminal.at(category), {surface}});
    }
  }
  if (grammar.root_categories.size() == 1) {
    cfg.start = *grammar.root_categories.begin();
  } else {
    cfg.start = fresh_name("S^", taken);
    cfg.nonterminals.insert(cfg.start);
    for (const std::string& category : grammar.root_categories) {
      cfg.productions.push_back({cfg.start, {category}});
    }
  }
  return cfg;
}

namespace {

// Strings bucketed by word count; index 0 holds the empty string when
// derivable.
using Buckets = std::vector<std::set<std::string>>;

Buckets concat(const Buckets& a, const Buckets& b, int max_len) {
  Buckets out(max_len + 1);
  for (int la = 0; la <= max_len; ++la) {
    if (a[la].empty()) continue;
    for (int lb = 0; la + lb <= max_len; ++lb) {
      if (b[lb].empty()) continue;
      for (const std::string& sa : a[la]) {
        for (const std::string& sb : b[lb]) {
          if (sa.empty()) {
            out[la + lb].insert(sb);
          } else if (sb.empty()) {
            out[la + lb].insert(sa);
          } else {
            out[la + lb].insert(sa + " " + sb);
          }
        }
      }
    }
  }
  return out;
}

std::size_t insert_all(Buckets& into, const Buckets& from) {
  std::size_t added = 0;
  for (std::size_t len = 0; len < from.size(); ++len) {
    for (const std::string& s : from[len]) {
      if (into[len].insert(s).second) ++added;
    }
  }
  return added;
}

std::set<std::string> flatten(const Buckets& buckets) {
  std::set<std::string> out;
  for (const auto& bucket : buckets) out.insert(bucket.begin(), bucket.end());
  return out;
}

void check_bound(int max_len, int bound) {
  if (max_len > bound) throw BoundExceeded(max_len, bound);
}

}  // namespace

std::set<std::string> enumerate_language(const GaifmanGrammar& grammar, int max_len, int bound) {
  check_bound(max_len, bound);
  if (max_len < 1) return {};

  std::map<std::string, std::vector<std::string>> heads;  // category -> words
  for (const auto& [surface, categories] : grammar.lexicon) {
    for (const std::string& category : categories) heads[category].push_back(surface);
  }
  std::map<std::string, Buckets> sets;
  for (const std::string& category : grammar.categories) {
    sets[category] = Buckets(max_len + 1);
  }

  // Iterate to a fixpoint; recursion through categories converges
  // because the string sets are bounded by max_len.
  for (bool grew = true; grew;) {
    grew = false;
    for (const GaifmanRule& rule : grammar.rules) {
      const auto head_words = heads.find(rule.head);
      if (head_words == heads.end()) continue;
      for (const std::string& word : head_words->second) {
        Buckets acc(max_len + 1);
        acc[0].insert("");
        for (const std::string& category : rule.left) acc = concat(acc, sets[category], max_len);
        Buckets head_bucket(max_len + 1);
        head_bucket[1].insert(word);
        acc = concat(acc, head_bucket, max_len);
        for (const std::string& category : rule.right) acc = concat(acc, sets[category], max_len);
        if (insert_all(sets[rule.head], acc) > 0) grew = true;
      }
    }
  }

  Buckets result(max_len + 1);
  for (const std::string& category : grammar.root_categories) {
    insert_all(result, sets[category]);
  }
  return flatten(result);
}

std::set<std::string> enumerate_language(const Cfg& cfg, int max_len, int bound) {
  check_bound(max_len, bound);
  if (max_len < 0) return {};

  std::map<std::string, Buckets> sets;
  for (const std::string& nonterminal : cfg.nonterminals) {
    sets[nonterminal] = Buckets(max_len + 1);
  }
  for (bool grew = true; grew;) {
    grew = false;
    for (const CfgProduction& production : cfg.productions) {
      Buckets acc(max_len + 1);
      acc[0].insert("");
      for (const std::string& symbol : production.rhs) {
        if (cfg.terminals.count(symbol)) {
          Buckets terminal(max_len + 1);
          if (max_len >= 1) terminal[1].insert(symbol);
          acc = concat(acc, terminal, max_len);
        } else {
          acc = concat(acc, sets.at(symbol), max_len);
        }
      }
      if (insert_all(sets.at(production.lhs), acc) > 0) grew = true;
    }
  }
  return flatten(sets.at(cfg.start));
}

}  // namespace dg
