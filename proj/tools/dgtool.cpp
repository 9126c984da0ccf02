// dgtool - batch front end for the dependency grammar engine.
//
// Subcommands: validate, projectivity, convert, render, expand,
// segment, parse, lang, equiv.  Documents stream through stdin/stdout
// separated by blank lines; exit 0 on success, 1 when a command
// reports findings, 2 on usage or input errors.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <utility>
#include <string>
#include <vector>

#include "dg/coordination.hpp"
#include "dg/fdg.hpp"
#include "dg/gaifman.hpp"
#include "dg/projectivity.hpp"
#include "dg/render.hpp"
#include "dg/segmentation.hpp"
#include "dg/tree.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitFindings = 1;
constexpr int kExitError = 2;

struct Options {
  std::string input_path;   // empty = stdin
  std::string output_path;  // empty = stdout
  std::string grammar_path;
  std::string rules_path;
  std::string functions_path;
  std::string format = "fdg";
  std::string report = "text";
  int max_len = 8;
  std::size_t cap = 1024;
  bool require_projective = false;
  int jobs = 1;
};

std::string read_stream(std::istream& in) {
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

std::string read_input(const Options& options) {
  if (options.input_path.empty()) return read_stream(std::cin);
  std::ifstream in(options.input_path, std::ios::binary);
  if (!in) throw dg::Error("cannot open input file " + options.input_path);
  return read_stream(in);
}

// Blank-line separated chunks, each one document.
std::vector<std::string> split_documents(const std::string& text) {
  std::vector<std::string> documents;
  std::string current;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) {
      if (!current.empty()) documents.push_back(std::exchange(current, {}));
    } else {
      current += line;
      current += '\n';
    }
  }
  if (!current.empty()) documents.push_back(std::move(current));
  return documents;
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") != std::string::npos) lines.push_back(line);
  }
  return lines;
}

dg::FunctionInventory load_inventory(const Options& options) {
  dg::FunctionInventory inventory = dg::FunctionInventory::classic();
  if (!options.functions_path.empty()) {
    std::ifstream in(options.functions_path);
    if (!in) throw dg::Error("cannot open functions file " + options.functions_path);
    inventory.load_extensions(in);
  }
  return inventory;
}

std::string arc_name(const dg::DependencyTree& tree, const dg::Connexion& arc) {
  const std::string regent = arc.regent == dg::kRoot
                                 ? "ROOT"
                                 : tree.nucleus(arc.regent).segments.front().surface;
  return arc.function + "(" + regent + "->" +
         tree.nucleus(arc.dependent).segments.front().surface + ")";
}

json tree_to_json(const dg::DependencyTree& tree) {
  json doc;
  doc["sentence"] = tree.sentence();
  doc["nuclei"] = json::array();
  for (const dg::Nucleus& nucleus : tree.nuclei()) {
    json entry;
    entry["id"] = nucleus.id;
    entry["base"] = nucleus.base_form;
    entry["tags"] = nucleus.morph_tags;
    entry["attributes"] = nucleus.attributes;
    entry["segments"] = json::array();
    for (const dg::WordSegment& segment : nucleus.segments) {
      json s;
      s["surface"] = segment.surface;
      s["position"] = segment.position;
      if (segment.sub_span) s["sub_span"] = {segment.sub_span->begin, segment.sub_span->end};
      entry["segments"].push_back(std::move(s));
    }
    doc["nuclei"].push_back(std::move(entry));
  }
  doc["connexions"] = json::array();
  for (const dg::Connexion& arc : tree.connexions()) {
    doc["connexions"].push_back(
        {{"regent", arc.regent}, {"dependent", arc.dependent}, {"function", arc.function}});
  }
  return doc;
}

dg::DependencyTree tree_from_json(const json& doc, const dg::FunctionInventory& inventory) {
  dg::TreeData data;
  data.sentence = doc.at("sentence").get<std::vector<std::string>>();
  for (const json& entry : doc.at("nuclei")) {
    dg::Nucleus nucleus;
    nucleus.id = entry.at("id").get<int>();
    nucleus.base_form = entry.value("base", std::string());
    if (entry.contains("tags")) {
      nucleus.morph_tags = entry.at("tags").get<std::vector<std::string>>();
    }
    if (entry.contains("attributes")) {
      nucleus.attributes = entry.at("attributes").get<std::map<std::string, std::string>>();
    }
    for (const json& s : entry.at("segments")) {
      dg::WordSegment segment;
      segment.surface = s.at("surface").get<std::string>();
      segment.position = s.at("position").get<int>();
      if (s.contains("sub_span")) {
        segment.sub_span = dg::SubSpan{s.at("sub_span")[0].get<int>(),
                                       s.at("sub_span")[1].get<int>()};
      }
      nucleus.segments.push_back(std::move(segment));
    }
    data.nuclei.push_back(std::move(nucleus));
  }
  for (const json& arc : doc.at("connexions")) {
    data.connexions.push_back({arc.at("regent").get<int>(), arc.at("dependent").get<int>(),
                               arc.at("function").get<std::string>()});
  }
  return dg::build_tree(std::move(data), &inventory);
}

dg::DependencyTree read_document(const std::string& text,
                                 const dg::FunctionInventory& inventory) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    return tree_from_json(json::parse(text), inventory);
  }
  return dg::read_fdg(text, inventory);
}

struct DocResult {
  std::string output;
  bool finding = false;
};

// Runs `work` over every document, sequentially or in jobs, printing
// in input order either way.
int for_each_document(const Options& options, std::ostream& out,
                      const std::function<DocResult(const std::string&, std::size_t)>& work) {
  const std::vector<std::string> documents = split_documents(read_input(options));
  bool findings = false;
  if (options.jobs <= 1) {
    for (std::size_t i = 0; i < documents.size(); ++i) {
      const DocResult result = work(documents[i], i);
      out << result.output;
      findings |= result.finding;
    }
  } else {
    std::vector<std::future<DocResult>> futures;
    futures.reserve(documents.size());
    for (std::size_t i = 0; i < documents.size(); ++i) {
      futures.push_back(
          std::async(std::launch::async, [&, i] { return work(documents[i], i); }));
    }
    for (auto& future : futures) {
      const DocResult result = future.get();
      out << result.output;
      findings |= result.finding;
    }
  }
  return findings ? kExitFindings : kExitOk;
}

int run_validate(const Options& options, std::ostream& out) {
  const dg::FunctionInventory inventory = load_inventory(options);
  return for_each_document(options, out, [&](const std::string& text, std::size_t index) {
    DocResult result;
    std::ostringstream line;
    const auto report_violations = [&](const dg::ViolationReport& report) {
      if (options.report == "json-lines") {
        json record{{"doc", index + 1}, {"status", "invalid"}};
        record["violations"] = json::array();
        for (const dg::AxiomViolation& violation : report) {
          json v{{"kind", dg::to_string(violation.kind)}, {"ids", violation.ids}};
          if (violation.position >= 0) v["position"] = violation.position;
          record["violations"].push_back(std::move(v));
        }
        line << record.dump() << "\n";
      } else {
        line << "doc " << index + 1 << ": ";
        for (std::size_t k = 0; k < report.size(); ++k) {
          line << (k ? "; " : "") << dg::describe(report[k]);
        }
        line << "\n";
      }
      result.finding = true;
    };
    try {
      read_document(text, inventory);
      if (options.report == "json-lines") {
        line << json{{"doc", index + 1}, {"status", "ok"}}.dump() << "\n";
      } else {
        line << "doc " << index + 1 << ": axioms: ok\n";
      }
    } catch (const dg::TreeError& error) {
      report_violations(error.report());
    }
    result.output = line.str();
    return result;
  });
}

int run_projectivity(const Options& options, std::ostream& out) {
  const dg::FunctionInventory inventory = load_inventory(options);
  return for_each_document(options, out, [&](const std::string& text, std::size_t index) {
    DocResult result;
    const dg::DependencyTree tree = read_document(text, inventory);
    const auto crossings = dg::crossing_arcs(tree);
    const auto triples = dg::marcus_violations(tree);
    const bool projective = crossings.empty();
    std::ostringstream line;
    if (options.report == "json-lines") {
      json record{{"doc", index + 1}, {"projective", projective}};
      record["crossings"] = json::array();
      for (const auto& violation : crossings) {
        const auto& pair = std::get<dg::CrossingArcs>(violation);
        record["crossings"].push_back(
            {{"covering", arc_name(tree, pair.covering)},
             {"entering", arc_name(tree, pair.entering)}});
      }
      record["marcus"] = json::array();
      for (const auto& violation : triples) {
        const auto& triple = std::get<dg::MarcusTriple>(violation);
        record["marcus"].push_back({triple.subordinate, triple.superior, triple.witness});
      }
      line << record.dump() << "\n";
    } else if (projective) {
      line << "doc " << index + 1 << ": projective\n";
    } else {
      line << "doc " << index + 1 << ": non-projective (" << triples.size()
           << " marcus triples, " << crossings.size() << " crossing pairs)\n";
      for (const auto& violation : crossings) {
        const auto& pair = std::get<dg::CrossingArcs>(violation);
        line << "  crossing: " << arc_name(tree, pair.covering) << " x "
             << arc_name(tree, pair.entering) << "\n";
      }
    }
    result.output = line.str();
    result.finding = options.require_projective && !projective;
    return result;
  });
}

int run_convert(const Options& options, std::ostream& out) {
  const dg::FunctionInventory inventory = load_inventory(options);
  return for_each_document(options, out, [&](const std::string& text, std::size_t index) {
    const dg::DependencyTree tree = read_document(text, inventory);
    DocResult result;
    if (index > 0) result.output += "\n";
    result.output += options.format == "json" ? tree_to_json(tree).dump(2) + "\n"
                                              : dg::write_fdg(tree, true);
    return result;
  });
}

int run_render(const Options& options, std::ostream& out) {
  const dg::FunctionInventory inventory = load_inventory(options);
  const dg::RenderFormat format =
      options.format == "dot" ? dg::RenderFormat::Dot : dg::RenderFormat::Ascii;
  return for_each_document(options, out, [&](const std::string& text, std::size_t index) {
    DocResult result;
    if (index > 0) result.output += "\n";
    result.output += dg::render(read_document(text, inventory), format, inventory);
    return result;
  });
}

int run_expand(const Options& options, std::ostream& out) {
  const dg::FunctionInventory inventory = load_inventory(options);
  bool first = true;
  return for_each_document(options, out, [&](const std::string& text, std::size_t) {
    const dg::DependencyTree tree = read_document(text, inventory);
    const dg::ExpansionResult expansion =
        dg::expand_combinations(tree, inventory, options.cap);
    DocResult result;
    for (const dg::DependencyTree& expanded : expansion.trees) {
      if (!first) result.output += "\n";
      first = false;
      result.output += dg::write_fdg(expanded, true);
    }
    return result;
  });
}

int run_segment(const Options& options, std::ostream& out) {
  if (options.rules_path.empty()) throw dg::Error("segment needs --rules");
  const dg::RuleSet rules = dg::load_rules(options.rules_path);
  const std::vector<std::string> lines = split_lines(read_input(options));
  for (std::size_t index = 0; index < lines.size(); ++index) {
    std::vector<dg::TaggedToken> tokens;
    std::istringstream fields(lines[index]);
    std::string field;
    while (fields >> field) {
      const auto slash = field.rfind('/');
      if (slash == std::string::npos || slash == 0) {
        throw dg::Error("segment input wants word/TAG tokens, got '" + field + "'");
      }
      tokens.push_back({field.substr(0, slash), field.substr(slash + 1)});
    }
    const std::vector<dg::Nucleus> nuclei = dg::segment(tokens, rules);
    if (options.report == "json-lines") {
      json record{{"sentence", index + 1}};
      record["nuclei"] = json::array();
      for (const dg::Nucleus& nucleus : nuclei) {
        json entry{{"id", nucleus.id}, {"base", nucleus.base_form}};
        entry["words"] = json::array();
        for (const dg::WordSegment& segment : nucleus.segments) {
          entry["words"].push_back(segment.surface);
        }
        record["nuclei"].push_back(std::move(entry));
      }
      out << record.dump() << "\n";
    } else {
      out << "sentence " << index + 1 << ":\n";
      for (const dg::Nucleus& nucleus : nuclei) {
        out << "  " << nucleus.id << ": ";
        for (std::size_t s = 0; s < nucleus.segments.size(); ++s) {
          out << (s ? "+" : "") << nucleus.segments[s].surface;
        }
        out << " [" << nucleus.base_form << "]\n";
      }
    }
  }
  return kExitOk;
}

int run_parse(const Options& options, std::ostream& out) {
  if (options.grammar_path.empty()) throw dg::Error("parse needs --grammar");
  const dg::GaifmanGrammar grammar = dg::load_grammar(options.grammar_path);
  const std::vector<std::string> lines = split_lines(read_input(options));
  bool findings = false;
  bool first = true;
  for (std::size_t index = 0; index < lines.size(); ++index) {
    std::vector<std::string> sentence;
    std::istringstream fields(lines[index]);
    std::string field;
    while (fields >> field) sentence.push_back(field);
    const dg::ParseResult parses = dg::parse_all(grammar, sentence, options.cap);
    if (parses.trees.empty()) findings = true;
    if (options.report == "json-lines") {
      out << json{{"sentence", index + 1},
                  {"parses", parses.trees.size()},
                  {"cap_exceeded", parses.cap_exceeded}}
                 .dump()
          << "\n";
    } else {
      out << "# sentence " << index + 1 << ": " << parses.trees.size() << " parse"
          << (parses.trees.size() == 1 ? "" : "s")
          << (parses.cap_exceeded ? " (cap exceeded)" : "") << "\n";
    }
    for (const dg::DependencyTree& tree : parses.trees) {
      if (!first) out << "\n";
      first = false;
      out << dg::write_fdg(tree, true);
    }
  }
  return findings ? kExitFindings : kExitOk;
}

int run_lang(const Options& options, std::ostream& out) {
  if (options.grammar_path.empty()) throw dg::Error("lang needs --grammar");
  const dg::GaifmanGrammar grammar = dg::load_grammar(options.grammar_path);
  for (const std::string& sentence :
       dg::enumerate_language(grammar, options.max_len, std::max(options.max_len, 10))) {
    out << sentence << "\n";
  }
  return kExitOk;
}

int run_equiv(const Options& options, std::ostream& out) {
  if (options.grammar_path.empty()) throw dg::Error("equiv needs --grammar");
  const dg::GaifmanGrammar grammar = dg::load_grammar(options.grammar_path);
  const int bound = std::max(options.max_len, 10);
  const std::set<std::string> direct = dg::enumerate_language(grammar, options.max_len, bound);
  const std::set<std::string> via_cfg =
      dg::enumerate_language(dg::to_cfg(grammar), options.max_len, bound);
  if (direct == via_cfg) {
    out << "equal (" << direct.size() << " strings up to length " << options.max_len << ")\n";
    return kExitOk;
  }
  out << "different\n";
  for (const std::string& s : direct) {
    if (!via_cfg.count(s)) out << "  only dependency: " << s << "\n";
  }
  for (const std::string& s : via_cfg) {
    if (!direct.count(s)) out << "  only cfg: " << s << "\n";
  }
  return kExitFindings;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dependency grammar engine"};
  app.require_subcommand(1);
  Options options;

  const auto add_common = [&options](CLI::App* cmd, bool with_input = true) {
    if (with_input) cmd->add_option("input", options.input_path, "input file (default stdin)");
    cmd->add_option("-o,--output", options.output_path, "output file (default stdout)");
    cmd->add_option("--functions", options.functions_path, "function inventory extensions");
    cmd->add_option("--report", options.report, "report mode: text|json-lines")
        ->check(CLI::IsMember({"text", "json-lines"}));
  };

  CLI::App* validate = app.add_subcommand("validate", "check the six structural axioms");
  add_common(validate);
  validate->add_option("--jobs", options.jobs, "parallel documents");

  CLI::App* projectivity =
      app.add_subcommand("projectivity", "marcus triples and crossing arcs");
  add_common(projectivity);
  projectivity->add_flag("--require-projective", options.require_projective,
                         "exit 1 when non-projective");
  projectivity->add_option("--jobs", options.jobs, "parallel documents");

  CLI::App* convert = app.add_subcommand("convert", "normalize between fdg and json");
  add_common(convert);
  convert->add_option("--format", options.format, "output format: fdg|json")
      ->check(CLI::IsMember({"fdg", "json"}));
  convert->add_option("--jobs", options.jobs, "parallel documents");

  CLI::App* render = app.add_subcommand("render", "draw trees");
  add_common(render);
  render->add_option("--format", options.format, "output format: ascii|dot")
      ->check(CLI::IsMember({"ascii", "dot"}));

  CLI::App* expand = app.add_subcommand("expand", "expand coordination combinations");
  add_common(expand);
  expand->add_option("--cap", options.cap, "combination cap");

  CLI::App* segment = app.add_subcommand("segment", "group word/TAG tokens into nuclei");
  add_common(segment);
  segment->add_option("--rules", options.rules_path, "segmentation rule file");

  CLI::App* parse = app.add_subcommand("parse", "parse sentences with a Gaifman grammar");
  add_common(parse);
  parse->add_option("--grammar", options.grammar_path, "grammar file");
  parse->add_option("--cap", options.cap, "analysis cap");

  CLI::App* lang = app.add_subcommand("lang", "enumerate the accepted strings");
  add_common(lang, false);
  lang->add_option("--grammar", options.grammar_path, "grammar file");
  lang->add_option("--max-len", options.max_len, "maximum string length");

  CLI::App* equiv = app.add_subcommand("equiv", "check weak equivalence against the CFG");
  add_common(equiv, false);
  equiv->add_option("--grammar", options.grammar_path, "grammar file");
  equiv->add_option("--max-len", options.max_len, "maximum string length");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& help) {
    return app.exit(help);
  } catch (const CLI::ParseError& error) {
    app.exit(error);
    return kExitError;
  }

  try {
    std::ofstream file_out;
    std::ostream* out = &std::cout;
    if (!options.output_path.empty()) {
      file_out.open(options.output_path, std::ios::binary);
      if (!file_out) throw dg::Error("cannot open output file " + options.output_path);
      out = &file_out;
    }
    if (validate->parsed()) return run_validate(options, *out);
    if (projectivity->parsed()) return run_projectivity(options, *out);
    if (convert->parsed()) return run_convert(options, *out);
    if (render->parsed()) return run_render(options, *out);
    if (expand->parsed()) return run_expand(options, *out);
    if (segment->parsed()) return run_segment(options, *out);
    if (parse->parsed()) return run_parse(options, *out);
    if (lang->parsed()) return run_lang(options, *out);
    if (equiv->parsed()) return run_equiv(options, *out);
    return kExitError;
  } catch (const std::exception& error) {
    std::cerr << "dgtool: " << error.what() << "\n";
    return kExitError;
  }
}
