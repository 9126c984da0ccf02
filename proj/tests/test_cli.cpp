#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "fixtures.hpp"

namespace {

struct CliResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr interleaved
};

CliResult run_cli(const std::string& args, const std::string& stdin_text = {}) {
  const std::string stdin_path =
      "/tmp/dgtool_stdin_" + std::to_string(::getpid()) + ".txt";
  {
    std::ofstream out(stdin_path, std::ios::binary);
    out << stdin_text;
  }
  const std::string command =
      std::string(DG_TOOL) + " " + args + " < " + stdin_path + " 2>&1";
  FILE* pipe = ::popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CliResult result;
  char buffer[4096];
  std::size_t got;
  while ((got = ::fread(buffer, 1, sizeof buffer, pipe)) > 0) {
    result.output.append(buffer, got);
  }
  const int status = ::pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::remove(stdin_path.c_str());
  return result;
}

const std::string kBillJohnDoc =
    "<Bill>\n\t\"Bill\" N @SUBJ cc:>2\n"
    "<and>\n\t\"and\" CC @CC #2 subj:>4\n"
    "<John>\n\t\"John\" N @SUBJ cc:>2\n"
    "<love>\n\t\"love\" V @+FMAINV #4 main:>0\n"
    "<Mary>\n\t\"Mary\" N @OBJ obj:>4\n";

}  // namespace

TEST_CASE("validate reports ok and exits 0 on the figure document") {
  const CliResult result =
      run_cli("validate " + dgtest::golden_path("text_representation.fdg"));
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("axioms: ok") != std::string::npos);
}

TEST_CASE("validate reports violations and exits 1") {
  const CliResult result =
      run_cli("validate", "<a>\n\t\"a\" N subj:>2\n<b>\n\t\"b\" V #2 subj:>1\n");
  CHECK(result.exit_code == 1);
  CHECK(result.output.find("cycle") != std::string::npos);
}

TEST_CASE("validate processes blank-line separated documents in order") {
  const std::string two_docs = dgtest::read_file(dgtest::golden_path("nonprojective.fdg")) +
                               "\n" +
                               dgtest::read_file(dgtest::golden_path("jack_painted.fdg"));
  for (const char* jobs : {"", " --jobs 3"}) {
    const CliResult result = run_cli(std::string("validate") + jobs, two_docs);
    CHECK(result.exit_code == 0);
    CHECK(result.output == "doc 1: axioms: ok\ndoc 2: axioms: ok\n");
  }
}

TEST_CASE("validate emits json-lines records") {
  const CliResult result =
      run_cli("validate --report json-lines",
              dgtest::read_file(dgtest::golden_path("coordinated.fdg")));
  CHECK(result.exit_code == 0);
  const auto record = nlohmann::json::parse(result.output);
  CHECK(record.at("status") == "ok");
  CHECK(record.at("doc") == 1);
}

TEST_CASE("projectivity flags the non-projective figure") {
  const std::string path = dgtest::golden_path("nonprojective.fdg");
  CliResult result = run_cli("projectivity " + path);
  CHECK(result.exit_code == 0);  // a report, not a finding, without the flag
  CHECK(result.output.find("non-projective") != std::string::npos);
  CHECK(result.output.find("crossing: obj(do->What) x v-ch(like->would)") !=
        std::string::npos);

  result = run_cli("projectivity --require-projective " + path);
  CHECK(result.exit_code == 1);

  result = run_cli("projectivity --require-projective " +
                   dgtest::golden_path("dog_was_running.fdg"));
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("doc 1: projective") != std::string::npos);
}

TEST_CASE("convert normalizes to canonical bytes and to json") {
  const std::string text = dgtest::read_file(dgtest::golden_path("did_dog_run.fdg"));
  CliResult result = run_cli("convert", text);
  CHECK(result.exit_code == 0);
  CHECK(result.output == text);

  result = run_cli("convert --format json", text);
  CHECK(result.exit_code == 0);
  const auto doc = nlohmann::json::parse(result.output);
  CHECK(doc.at("sentence").size() == 7);

  // json back to fdg closes the loop.
  result = run_cli("convert --format fdg", result.output);
  CHECK(result.exit_code == 0);
  CHECK(result.output == text);
}

TEST_CASE("render emits dot and ascii diagrams") {
  const std::string text = dgtest::read_file(dgtest::golden_path("coordinated.fdg"));
  CliResult result = run_cli("render --format dot", text);
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("digraph") != std::string::npos);
  CHECK(result.output.find("style=dashed") != std::string::npos);

  result = run_cli("render --format ascii",
                   dgtest::read_file(dgtest::golden_path("nonprojective.fdg")));
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("crossing: obj(do->What)") != std::string::npos);
}

TEST_CASE("expand prints one document per combination") {
  const CliResult result = run_cli("expand", kBillJohnDoc);
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("<Bill>") != std::string::npos);
  CHECK(result.output.find("<John>") != std::string::npos);
  CHECK(result.output.find("cc:>") == std::string::npos);  // no cc arcs survive
  CHECK(result.output.find("\n\n") != std::string::npos);  // blank line separator
}

TEST_CASE("segment groups tagged tokens") {
  const CliResult result =
      run_cli("segment --rules " + dgtest::data_path("english.rules"),
              "Did/AUX the/DET dog/N run/V in/PREP the/DET house/N\n");
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("Did+run [run]") != std::string::npos);
  CHECK(result.output.find("in+house [house]") != std::string::npos);
}

TEST_CASE("parse emits analyses and counts") {
  const CliResult result =
      run_cli("parse --grammar " + dgtest::grammar_path("loves.dg"), "Bill loves Mary\n");
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("1 parse") != std::string::npos);
  CHECK(result.output.find("main:>0") != std::string::npos);
  CHECK(result.output.find("dep:l1:>2") != std::string::npos);

  const CliResult none =
      run_cli("parse --grammar " + dgtest::grammar_path("loves.dg"), "loves loves loves\n");
  CHECK(none.exit_code == 1);  // no analysis is a finding
  CHECK(none.output.find("0 parses") != std::string::npos);
}

TEST_CASE("lang prints the bounded language") {
  const CliResult result =
      run_cli("lang --grammar " + dgtest::grammar_path("loves.dg") + " --max-len 3");
  CHECK(result.exit_code == 0);
  CHECK(result.output ==
        "Bill loves Bill\nBill loves Mary\nMary loves Bill\nMary loves Mary\n");
}

TEST_CASE("equiv certifies the fixture grammars") {
  for (const char* name : {"loves.dg", "pp.dg", "chain_rec.dg", "both_sides.dg"}) {
    CAPTURE(name);
    const CliResult result =
        run_cli("equiv --grammar " + dgtest::grammar_path(name) + " --max-len 8");
    CHECK(result.exit_code == 0);
    CHECK(result.output.find("equal") == 0);
  }
}

TEST_CASE("subcommands are pure pipelines") {
  const std::string text = dgtest::read_file(dgtest::golden_path("jack_painted.fdg"));
  for (const std::string args :
       {std::string("convert"), std::string("expand"), std::string("render --format ascii")}) {
    CAPTURE(args);
    const CliResult once = run_cli(args, text);
    const CliResult twice = run_cli(args, text);
    CHECK(once.exit_code == twice.exit_code);
    CHECK(once.output == twice.output);
  }
}

TEST_CASE("usage and io errors exit 2") {
  CHECK(run_cli("frobnicate").exit_code == 2);
  CHECK(run_cli("validate /no/such/file.fdg").exit_code == 2);
  CHECK(run_cli("lang").exit_code == 2);  // missing --grammar
  CHECK(run_cli("validate", "<a\n").exit_code == 2);  // malformed document
  CHECK(run_cli("render --format nope", "x").exit_code == 2);
}

TEST_CASE("function inventory extensions come from configuration") {
  const std::string doc = "<x>\n\t\"x\" N advl:>2\n<y>\n\t\"y\" V #2 main:>0\n";
  // advl is unknown in the classic set: a finding, not an io error.
  const CliResult plain = run_cli("validate", doc);
  CHECK(plain.exit_code == 1);
  CHECK(plain.output.find("invalid-function") != std::string::npos);
  const CliResult result =
      run_cli("validate --functions " + dgtest::data_path("functions.conf"), doc);
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("axioms: ok") != std::string::npos);
}
