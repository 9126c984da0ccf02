#include <doctest.h>

#include <algorithm>
#include <random>

#include "dg/fdg.hpp"
#include "dg/render.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace dg;

namespace {

DependencyTree golden(const std::string& name) {
  return read_fdg(dgtest::read_file(dgtest::golden_path(name)));
}

// Random tree with synthetic lexical fields, occasional multi-token
// nuclei and an occasional uncovered trailing token.
TreeData random_lexical_tree(std::mt19937& rng) {
  const int n = std::uniform_int_distribution<int>(1, 8)(rng);
  TreeData data = dgtest::random_tree(rng, n);
  const int extras = std::uniform_int_distribution<int>(0, 2)(rng);
  for (int e = 0; e < extras; ++e) {
    const int position = static_cast<int>(data.sentence.size());
    data.sentence.push_back("x" + std::to_string(position));
    if (std::bernoulli_distribution(0.7)(rng)) {
      Nucleus& host = data.nuclei[std::uniform_int_distribution<std::size_t>(
          0, data.nuclei.size() - 1)(rng)];
      host.segments.push_back({data.sentence.back(), position, std::nullopt});
    }
  }
  for (Nucleus& nucleus : data.nuclei) {
    nucleus.base_form = "b" + std::to_string(nucleus.id);
    switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
      case 0: nucleus.morph_tags = {"N", "SG"}; break;
      case 1: nucleus.morph_tags = {"V"}; break;
      default: break;
    }
    if (std::bernoulli_distribution(0.5)(rng)) {
      nucleus.attributes["engcg"] = "@F" + std::to_string(nucleus.id);
    }
  }
  return data;
}

std::vector<Connexion> sorted_arcs(const DependencyTree& tree) {
  std::vector<Connexion> arcs = tree.connexions();
  std::sort(arcs.begin(), arcs.end(), [](const Connexion& a, const Connexion& b) {
    return a.dependent < b.dependent;
  });
  return arcs;
}

}  // namespace

TEST_CASE("the text-based representation document parses into the figure tree") {
  const DependencyTree tree = golden("text_representation.fdg");
  CHECK(tree.sentence().size() == 11);
  CHECK(tree.nuclei().size() == 10);  // the final stop stays outside the tree
  CHECK(tree.root() == 2);
  CHECK(tree.nucleus(2).base_form == "give");
  CHECK(tree.incoming(4).function == "obj");
  CHECK(tree.incoming(4).regent == 2);
  CHECK(tree.incoming(5).function == "tmp");
  CHECK(tree.incoming(7).function == "cc");
  CHECK(tree.incoming(7).regent == 2);
  CHECK(tree.incoming(8) == Connexion{7, 8, "subj"});
  CHECK(tree.incoming(9) == Connexion{7, 9, "tmp"});
  CHECK(tree.incoming(10) == Connexion{9, 10, "pcomp"});
  CHECK(tree.nucleus(3).attributes.at("engcg") == "@DN>");
  CHECK(tree.nucleus(3).morph_tags == std::vector<std::string>{"DET", "ART", "SG/PL"});
}

TEST_CASE("every golden figure round-trips byte-identically") {
  for (const char* name : {"text_representation.fdg", "nonprojective.fdg",
                           "dog_was_running.fdg", "did_dog_run.fdg", "coordinated.fdg",
                           "jack_painted.fdg"}) {
    CAPTURE(name);
    const std::string text = dgtest::read_file(dgtest::golden_path(name));
    const DependencyTree tree = read_fdg(text);
    CHECK(validate_axioms(tree).empty());
    CHECK(write_fdg(tree) == text);
  }
}

TEST_CASE("a minimal document is a one-node tree and writes two lines") {
  const DependencyTree tree = read_fdg("<Run>\n\t\"run\" V @+FV #1 main:>0\n");
  CHECK(tree.nuclei().size() == 1);
  CHECK(tree.root() == 1);
  // Canonical form drops the redundant #1.
  CHECK(write_fdg(tree) == "<Run>\n\t\"run\" V @+FV main:>0\n");
}

TEST_CASE("multi-token nuclei read back through the continuation marker") {
  const DependencyTree tree = golden("dog_was_running.fdg");
  CHECK(tree.nuclei().size() == 5);
  CHECK(tree.nucleus(3).segments.size() == 2);
  CHECK(tree.nucleus(3).segments[1].surface == "running");
  CHECK(tree.nucleus(4).segments[1].position == 6);  // "house", over "the"
}

TEST_CASE("reader errors") {
  SUBCASE("dangling head") {
    try {
      read_fdg("<a>\n\t\"a\" N subj:>9\n<b>\n\t\"b\" V #2 main:>0\n");
      FAIL("expected FdgError");
    } catch (const FdgError& error) {
      CHECK(error.kind() == FdgErrorKind::DanglingHead);
      CHECK(error.what() == std::string("fdg: dependency points at undeclared head #9"));
    }
  }
  SUBCASE("duplicate explicit id") {
    try {
      read_fdg("<a>\n\t\"a\" N #2 main:>0\n<b>\n\t\"b\" V #2 subj:>2\n");
      FAIL("expected FdgError");
    } catch (const FdgError& error) {
      CHECK(error.kind() == FdgErrorKind::DuplicateId);
    }
  }
  SUBCASE("implicit id colliding with an explicit one") {
    // Token 0 would take implicit id 1, already claimed explicitly.
    try {
      read_fdg("<a>\n\t\"a\" N subj:>1\n<b>\n\t\"b\" V #1 main:>0\n");
      FAIL("expected FdgError");
    } catch (const FdgError& error) {
      CHECK(error.kind() == FdgErrorKind::DuplicateId);
    }
  }
  SUBCASE("syntax errors") {
    CHECK_THROWS_AS((void)read_fdg("<a\n"), FdgError);
    CHECK_THROWS_AS((void)read_fdg("\t\"a\" N main:>0\n"), FdgError);
    CHECK_THROWS_AS((void)read_fdg("<a>\n\tunquoted N main:>0\n"), FdgError);
    CHECK_THROWS_AS((void)read_fdg("<a>\n\t\"a\" N #x main:>0\n"), FdgError);
    CHECK_THROWS_AS((void)read_fdg(""), FdgError);
  }
  SUBCASE("axiom violations surface as TreeError") {
    CHECK_THROWS_AS((void)read_fdg("<a>\n\t\"a\" N subj:>2\n<b>\n\t\"b\" V #2 subj:>1\n"),
                    TreeError);
  }
}

TEST_CASE("writer requires base forms unless lossy") {
  TreeData data;
  data.sentence = {"Run"};
  data.nuclei.push_back({1, {{"Run", 0, std::nullopt}}, "", {}, {}});
  data.connexions.push_back({0, 1, "main"});
  const DependencyTree tree = build_tree(std::move(data));
  CHECK_THROWS_AS((void)write_fdg(tree), FdgError);
  CHECK(write_fdg(tree, true) == "<Run>\n\t\"run\" main:>0\n");
}

TEST_CASE("random lexicalized trees round-trip") {
  std::mt19937 rng(31);
  for (int round = 0; round < 100; ++round) {
    const DependencyTree tree = build_tree(random_lexical_tree(rng),
                                           nullptr);  // labels are synthetic
    const std::string first = write_fdg(tree);
    const DependencyTree reread = read_fdg(first, FunctionInventory::classic());
    CHECK(write_fdg(reread) == first);

    CHECK(reread.sentence() == tree.sentence());
    CHECK(sorted_arcs(reread) == sorted_arcs(tree));
    for (const Nucleus& nucleus : tree.nuclei()) {
      const Nucleus& other = reread.nucleus(nucleus.id);
      CHECK(other.base_form == nucleus.base_form);
      CHECK(other.morph_tags == nucleus.morph_tags);
      CHECK(other.segments == nucleus.segments);
      CHECK(other.attributes == nucleus.attributes);
    }
  }
}

TEST_CASE("the reader only ever throws, whatever the bytes") {
  std::mt19937 rng(59);
  const std::string alphabet = "<>\"#:&@\t\n ab12.";
  for (int round = 0; round < 3000; ++round) {
    const int length = std::uniform_int_distribution<int>(0, 60)(rng);
    std::string noise;
    for (int k = 0; k < length; ++k) {
      noise += alphabet[std::uniform_int_distribution<std::size_t>(
          0, alphabet.size() - 1)(rng)];
    }
    try {
      (void)read_fdg(noise);
    } catch (const Error&) {
      // FdgError or TreeError; anything else would escape and fail.
    }
  }
}

TEST_CASE("ascii rendering marks the whatdo crossing") {
  const std::string art = render(golden("nonprojective.fdg"), RenderFormat::Ascii);
  CHECK(art.find("What   would   you   like   me   to   do") != std::string::npos);
  CHECK(art.find("crossing: obj(do->What) x v-ch(like->would)") != std::string::npos);
  CHECK(art.find("crossing: obj(do->What) x subj(would->you)") != std::string::npos);
  CHECK(art.find("crossing: obj(do->What) x main(ROOT->like)") != std::string::npos);
  CHECK(art.find('X') != std::string::npos);  // the grid marks it too
}

TEST_CASE("ascii rendering of a single node is just the baseline") {
  const DependencyTree tree = read_fdg("<Run>\n\t\"run\" V main:>0\n");
  const std::string art = render(tree, RenderFormat::Ascii);
  CHECK(art.find("Run") != std::string::npos);
  CHECK(art.find('-') == std::string::npos);
  CHECK(art.find("crossing:") == std::string::npos);
}

TEST_CASE("dot rendering dashes cc edges only") {
  const std::string dot = render(golden("coordinated.fdg"), RenderFormat::Dot);
  CHECK(dot.find("digraph") != std::string::npos);
  std::size_t dashed = 0;
  for (std::size_t at = dot.find("style=dashed"); at != std::string::npos;
       at = dot.find("style=dashed", at + 1)) {
    ++dashed;
  }
  CHECK(dashed == 4);  // the four cc arcs of the figure
  CHECK(dot.find("label=\"subj\", style=dashed") == std::string::npos);
  CHECK(dot.find("label=\"cc\", style=dashed") != std::string::npos);
  CHECK(dot.find("root -> n4 [label=\"main\"]") != std::string::npos);
}

TEST_CASE("projective figures render without crossing marks") {
  const std::string art = render(golden("jack_painted.fdg"), RenderFormat::Ascii);
  CHECK(art.find("crossing:") == std::string::npos);
  CHECK(art.find('X') == std::string::npos);
}

TEST_CASE("oversized ids are syntax errors, not overflows") {
  CHECK_THROWS_AS((void)read_fdg("<a>\n\t\"a\" #99999999999999999 main:>0\n"), FdgError);
  CHECK_THROWS_AS((void)read_fdg("<a>\n\t\"a\" subj:>99999999999999999\n"), FdgError);
  CHECK_THROWS_AS((void)read_fdg("<a>\n\t&99999999999999999\n"), FdgError);
}
