#include "dg/fdg.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <vector>

namespace dg {

namespace {

struct AnalysisLine {
  int line = 0;
  int position = 0;
  std::string base;
  std::vector<std::string> tags;
  std::vector<std::string> engcg;
  std::optional<NucleusId> explicit_id;
  std::optional<Connexion> dep;  // dependent filled in later
  NucleusId id = 0;
};

struct Continuation {
  int line = 0;
  int position = 0;
  NucleusId target = 0;
};

std::vector<std::string> split_fields(const std::string& text) {
  std::vector<std::string> fields;
  std::istringstream in(text);
  std::string field;
  while (in >> field) fields.push_back(field);
  return fields;
}

bool all_digits(std::string_view text) {
  return !text.empty() && std::all_of(text.begin(), text.end(), [](unsigned char c) {
    return std::isdigit(c) != 0;
  });
}

// Digits only, rejecting anything that would not fit an id.
int parse_number(const std::string& text, int line) {
  if (!all_digits(text) || text.size() > 9) {
    throw FdgError(FdgErrorKind::Syntax, line, "malformed number '" + text + "'");
  }
  return std::stoi(text);
}

}  // namespace

DependencyTree read_fdg(std::string_view text, const FunctionInventory& inventory) {
  std::vector<std::string> tokens;
  std::vector<AnalysisLine> analyses;
  std::vector<Continuation> continuations;
  bool last_token_analyzed = true;

  int lineno = 0;
  std::size_t offset = 0;
  while (offset <= text.size()) {
    const std::size_t end = text.find('\n', offset);
    std::string line(text.substr(offset, end == std::string_view::npos ? std::string_view::npos
                                                                       : end - offset));
    offset = end == std::string_view::npos ? text.size() + 1 : end + 1;
    ++lineno;
    if (line.empty()) continue;

    if (line.front() == '<') {
      if (line.back() != '>' || line.size() < 2) {
        throw FdgError(FdgErrorKind::Syntax, lineno, "malformed token line '" + line + "'");
      }
      tokens.push_back(line.substr(1, line.size() - 2));
      last_token_analyzed = false;
      continue;
    }
    if (line.front() != '\t' && line.front() != ' ') {
      throw FdgError(FdgErrorKind::Syntax, lineno, "expected token or analysis line");
    }
    const std::size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos) continue;  // whitespace-only
    if (tokens.empty() || last_token_analyzed) {
      throw FdgError(FdgErrorKind::Syntax, lineno, "analysis line without a token line");
    }
    last_token_analyzed = true;
    const int position = static_cast<int>(tokens.size()) - 1;
    const std::string body = line.substr(start);

    if (body.front() == '&') {
      continuations.push_back({lineno, position, parse_number(body.substr(1), lineno)});
      continue;
    }

    AnalysisLine analysis;
    analysis.line = lineno;
    analysis.position = position;
    const std::vector<std::string> fields = split_fields(body);
    if (fields.empty() || fields.front().size() < 2 || fields.front().front() != '"' ||
        fields.front().back() != '"') {
      throw FdgError(FdgErrorKind::Syntax, lineno, "analysis must start with a quoted base form");
    }
    analysis.base = fields.front().substr(1, fields.front().size() - 2);
    for (std::size_t i = 1; i < fields.size(); ++i) {
      const std::string& field = fields[i];
      if (field.front() == '#') {
        if (analysis.explicit_id) {
          throw FdgError(FdgErrorKind::Syntax, lineno, "duplicate '#' field");
        }
        analysis.explicit_id = parse_number(field.substr(1), lineno);
      } else if (const auto arrow = field.find(":>"); arrow != std::string::npos) {
        if (analysis.dep) {
          throw FdgError(FdgErrorKind::Syntax, lineno, "duplicate dependency field");
        }
        const std::string label = field.substr(0, arrow);
        const std::string target = field.substr(arrow + 2);
        if (label.empty()) {
          throw FdgError(FdgErrorKind::Syntax, lineno, "malformed dependency '" + field + "'");
        }
        analysis.dep = Connexion{parse_number(target, lineno), 0, label};
      } else if (field.front() == '@') {
        analysis.engcg.push_back(field);
      } else {
        analysis.tags.push_back(field);
      }
    }
    analyses.push_back(std::move(analysis));
  }
  if (tokens.empty()) {
    throw FdgError(FdgErrorKind::Syntax, 0, "empty document");
  }

  // Explicit ids first, then implicit position+1 ids for the rest.
  std::set<NucleusId> used;
  for (AnalysisLine& analysis : analyses) {
    if (!analysis.explicit_id) continue;
    if (*analysis.explicit_id <= 0 || !used.insert(*analysis.explicit_id).second) {
      throw FdgError(FdgErrorKind::DuplicateId, analysis.line,
                     "node id #" + std::to_string(*analysis.explicit_id) + " already in use");
    }
    analysis.id = *analysis.explicit_id;
  }
  for (AnalysisLine& analysis : analyses) {
    if (analysis.explicit_id) continue;
    analysis.id = analysis.position + 1;
    if (!used.insert(analysis.id).second) {
      throw FdgError(FdgErrorKind::DuplicateId, analysis.line,
                     "implicit id " + std::to_string(analysis.id) + " collides with #" +
                         std::to_string(analysis.id));
    }
  }

  TreeData data;
  data.sentence = tokens;
  std::map<NucleusId, Nucleus> nuclei;
  for (const AnalysisLine& analysis : analyses) {
    Nucleus nucleus;
    nucleus.id = analysis.id;
    nucleus.segments.push_back({tokens[analysis.position], analysis.position, std::nullopt});
    nucleus.base_form = analysis.base;
    nucleus.morph_tags = analysis.tags;
    if (!analysis.engcg.empty()) {
      std::string joined;
      for (const std::string& tag : analysis.engcg) {
        if (!joined.empty()) joined += ' ';
        joined += tag;
      }
      nucleus.attributes["engcg"] = joined;
    }
    nuclei[nucleus.id] = std::move(nucleus);
    if (analysis.dep) {
      Connexion arc = *analysis.dep;
      arc.dependent = analysis.id;
      data.connexions.push_back(arc);
    }
  }
  for (const Continuation& continuation : continuations) {
    const auto it = nuclei.find(continuation.target);
    if (it == nuclei.end()) {
      throw FdgError(FdgErrorKind::DanglingHead, continuation.line,
                     "continuation references unknown nucleus &" +
                         std::to_string(continuation.target));
    }
    it->second.segments.push_back(
        {tokens[continuation.position], continuation.position, std::nullopt});
  }
  for (const Connexion& arc : data.connexions) {
    if (arc.regent != kRoot && !nuclei.count(arc.regent)) {
      throw FdgError(FdgErrorKind::DanglingHead, 0,
                     "dependency points at undeclared head #" + std::to_string(arc.regent));
    }
  }
  for (auto& [_, nucleus] : nuclei) {
    std::sort(nucleus.segments.begin(), nucleus.segments.end(),
              [](const WordSegment& a, const WordSegment& b) { return a.position < b.position; });
    data.nuclei.push_back(std::move(nucleus));
  }
  return build_tree(std::move(data), &inventory);
}

std::string write_fdg(const DependencyTree& tree, bool lossy) {
  // Where each nucleus starts and continues, by token position.
  std::map<int, NucleusId> starts, continues;
  for (const Nucleus& nucleus : tree.nuclei()) {
    std::set<int> positions;
    for (const WordSegment& segment : nucleus.segments) positions.insert(segment.position);
    bool first = true;
    for (int position : positions) {
      (first ? starts : continues)[position] = nucleus.id;
      first = false;
    }
  }
  std::set<NucleusId> referenced;
  for (const Connexion& arc : tree.connexions()) {
    if (arc.regent != kRoot) referenced.insert(arc.regent);
  }

  std::string out;
  for (int position = 0; position < static_cast<int>(tree.sentence().size()); ++position) {
    out += '<';
    out += tree.sentence()[position];
    out += ">\n";
    if (const auto it = continues.find(position); it != continues.end()) {
      out += "\t&" + std::to_string(it->second) + "\n";
      continue;
    }
    const auto it = starts.find(position);
    if (it == starts.end()) continue;  // uncovered token, e.g. bare punctuation
    const Nucleus& nucleus = tree.nucleus(it->second);
    std::string base = nucleus.base_form;
    if (base.empty()) {
      if (!lossy) {
        throw FdgError(FdgErrorKind::MissingAttributes, 0,
                       "nucleus " + std::to_string(nucleus.id) + " has no base form");
      }
      base = nucleus.segments.front().surface;
      std::transform(base.begin(), base.end(), base.begin(),
                     [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    }
    out += "\t\"" + base + "\"";
    for (const std::string& tag : nucleus.morph_tags) out += " " + tag;
    if (const auto engcg = nucleus.attributes.find("engcg");
        engcg != nucleus.attributes.end() && !engcg->second.empty()) {
      out += " " + engcg->second;
    }
    if (referenced.count(nucleus.id) || nucleus.id != nucleus.anchor() + 1) {
      out += " #" + std::to_string(nucleus.id);
    }
    const Connexion& up = tree.incoming(nucleus.id);
    out += " " + up.function + ":>" + std::to_string(up.regent) + "\n";
  }
  return out;
}

}  // namespace dg
