#include <doctest.h>

#include <algorithm>

#include "dg/coordination.hpp"
#include "dg/fdg.hpp"
#include "fixtures.hpp"

using namespace dg;

namespace {

DependencyTree golden(const std::string& name) {
  return read_fdg(dgtest::read_file(dgtest::golden_path(name)));
}

std::string rendered(const DependencyTree& tree) {
  std::string text;
  for (const std::string& token : tree.sentence()) {
    if (!text.empty()) text += ' ';
    text += token;
  }
  return text;
}

// "Jack has been lazy and Jill angry": the elliptic element is the
// verbal nucleus "has been".
TreeData jack_lazy_data() {
  TreeData data;
  data.sentence = {"Jack", "has", "been", "lazy", "and", "Jill", "angry"};
  const auto add = [&](NucleusId id, const char* base, std::initializer_list<int> positions,
                       std::vector<std::string> tags) {
    Nucleus nucleus;
    nucleus.id = id;
    nucleus.base_form = base;
    nucleus.morph_tags = std::move(tags);
    for (int position : positions) {
      nucleus.segments.push_back({data.sentence[position], position, std::nullopt});
    }
    data.nuclei.push_back(std::move(nucleus));
  };
  add(1, "Jack", {0}, {"N"});
  add(2, "be", {1, 2}, {"V"});
  add(3, "lazy", {3}, {"A"});
  add(4, "and", {4}, {"CC"});
  add(5, "Jill", {5}, {"N"});
  add(6, "angry", {6}, {"A"});
  data.connexions = {{0, 2, "main"}, {2, 1, "subj"}, {2, 3, "oc"},
                     {2, 4, "cc"},   {4, 5, "subj"}, {4, 6, "oc"}};
  return data;
}

}  // namespace

TEST_CASE("a pivot coordinator chains its conjuncts") {
  const DependencyTree tree = build_tree(dgtest::bill_john_data());
  const std::vector<CoordinationChain> chains = detect_chains(tree);
  REQUIRE(chains.size() == 1);
  CHECK(chains[0].conjuncts == std::vector<NucleusId>{1, 3});  // Bill, John
  CHECK(chains[0].coordinators == std::vector<NucleusId>{2});
  CHECK(chains[0].anchor == 4);  // love
  CHECK(chains[0].function == "subj");
}

TEST_CASE("a tree without cc arcs has no chains") {
  CHECK(detect_chains(golden("dog_was_running.fdg")).empty());
}

TEST_CASE("the coordinated figure carries two chains") {
  const DependencyTree tree = golden("coordinated.fdg");
  const std::vector<CoordinationChain> chains = detect_chains(tree);
  REQUIRE(chains.size() == 2);
  CHECK(chains[0].conjuncts == std::vector<NucleusId>{1, 3});  // Bill, John
  CHECK(chains[1].conjuncts == std::vector<NucleusId>{5, 7});  // Mary, Joan
  CHECK(chains[0].anchor == 4);
  CHECK(chains[1].anchor == 4);
  CHECK(chains[0].function == "subj");
  CHECK(chains[1].function == "obj");
}

TEST_CASE("the gapping document chains the gave clause with the and clause") {
  const DependencyTree tree = golden("text_representation.fdg");
  const std::vector<CoordinationChain> chains = detect_chains(tree);
  REQUIRE(chains.size() == 1);
  CHECK(chains[0].anchor == 2);  // gave
  REQUIRE(chains[0].conjuncts.size() == 2);
  CHECK(chains[0].conjuncts[0] == 2);
  CHECK(chains[0].conjuncts[1] == 7);  // the gapped and-clause
  CHECK(chains[0].coordinators == std::vector<NucleusId>{7});

  // The second conjunct heads subj Bill and tmp on->Wednesday.
  CHECK(tree.dependents(7) == std::vector<NucleusId>{8, 9});
  CHECK(tree.incoming(8).function == "subj");
  CHECK(tree.incoming(9).function == "tmp");
}

TEST_CASE("gapped coordinators inherit from the verbal nucleus") {
  SUBCASE("jack painted the kitchen white and the living room blue") {
    const DependencyTree tree = golden("jack_painted.fdg");
    const GappedTree gapped = apply_gapping(tree);
    REQUIRE(gapped.frames.size() == 1);
    CHECK(gapped.frames[0].coordinator == 6);     // and
    CHECK(gapped.frames[0].inherited_from == 2);  // painted
    CHECK(gapped.frames[0].inherited_attributes == tree.nucleus(2).attributes);
    CHECK(gapped.tree.nuclei().size() == tree.nuclei().size());  // no empty nodes
  }
  SUBCASE("the elliptic element is the verbal nucleus has-been") {
    const DependencyTree tree = build_tree(jack_lazy_data());
    const GappedTree gapped = apply_gapping(tree);
    REQUIRE(gapped.frames.size() == 1);
    CHECK(gapped.frames[0].coordinator == 4);
    CHECK(gapped.frames[0].inherited_from == 2);
    CHECK(tree.nucleus(2).segments.size() == 2);  // has + been
  }
  SUBCASE("a coordinator with only cc dependents gets no frame") {
    const DependencyTree tree = build_tree(dgtest::bill_john_data());
    CHECK(apply_gapping(tree).frames.empty());
  }
}

TEST_CASE("a dependent-bearing coordinator without a cc link has no antecedent") {
  TreeData data;
  data.sentence = {"go", "and", "home"};
  const char* bases[] = {"go", "and", "home"};
  for (int i = 0; i < 3; ++i) {
    Nucleus nucleus;
    nucleus.id = i + 1;
    nucleus.base_form = bases[i];
    nucleus.segments.push_back({data.sentence[i], i, std::nullopt});
    data.nuclei.push_back(std::move(nucleus));
  }
  data.nuclei[1].morph_tags = {"CC"};
  data.connexions = {{0, 1, "main"}, {1, 2, "loc"}, {2, 3, "obj"}};  // and hangs by loc
  const DependencyTree tree = build_tree(std::move(data));
  CHECK_THROWS_AS((void)apply_gapping(tree), NoAntecedent);
}

TEST_CASE("a chain of bare coordinators is malformed") {
  TreeData data;
  data.sentence = {"go", "and", "or"};
  const char* bases[] = {"go", "and", "or"};
  for (int i = 0; i < 3; ++i) {
    Nucleus nucleus;
    nucleus.id = i + 1;
    nucleus.base_form = bases[i];
    nucleus.morph_tags = {i == 0 ? "V" : "CC"};
    nucleus.segments.push_back({data.sentence[i], i, std::nullopt});
    data.nuclei.push_back(std::move(nucleus));
  }
  data.connexions = {{0, 1, "main"}, {1, 2, "oc"}, {2, 3, "cc"}};
  const DependencyTree tree = build_tree(std::move(data));
  CHECK_THROWS_AS((void)detect_chains(tree), MalformedChain);
}

TEST_CASE("asyndetic coordination pivots on the punctuation nucleus") {
  // "Bill , John love Mary": the comma plays the coordinator.
  TreeData data;
  data.sentence = {"Bill", ",", "John", "love", "Mary"};
  const char* bases[] = {"Bill", ",", "John", "love", "Mary"};
  for (int i = 0; i < 5; ++i) {
    Nucleus nucleus;
    nucleus.id = i + 1;
    nucleus.base_form = bases[i];
    nucleus.segments.push_back({data.sentence[i], i, std::nullopt});
    data.nuclei.push_back(std::move(nucleus));
  }
  data.nuclei[1].morph_tags = {"PUNCT"};
  data.connexions = {{0, 4, "main"}, {4, 2, "subj"}, {2, 1, "cc"}, {2, 3, "cc"}, {4, 5, "obj"}};
  const DependencyTree tree = build_tree(std::move(data));
  const std::vector<CoordinationChain> chains = detect_chains(tree);
  REQUIRE(chains.size() == 1);
  CHECK(chains[0].conjuncts == std::vector<NucleusId>{1, 3});
  CHECK(chains[0].coordinators == std::vector<NucleusId>{2});

  const ExpansionResult result = expand_combinations(tree);
  REQUIRE(result.trees.size() == 2);
  CHECK(rendered(result.trees[0]) == "Bill love Mary");
  CHECK(rendered(result.trees[1]) == "John love Mary");
}

TEST_CASE("bill-and-john expands to the two simple sentences") {
  const DependencyTree tree = build_tree(dgtest::bill_john_data());
  const ExpansionResult result = expand_combinations(tree);
  REQUIRE(result.trees.size() == 2);
  CHECK(rendered(result.trees[0]) == "Bill love Mary");
  CHECK(rendered(result.trees[1]) == "John love Mary");
  for (const DependencyTree& expanded : result.trees) {
    CHECK(validate_axioms(expanded).empty());
    for (const Connexion& arc : expanded.connexions()) CHECK(arc.function != "cc");
    CHECK(detect_chains(expanded).empty());  // one-step fixpoint
    CHECK(expanded.incoming(expanded.dependents(4).front()).function == "subj");
  }
}

TEST_CASE("the gapping document expands into the overt and the inherited clause") {
  const DependencyTree tree = golden("text_representation.fdg");
  const ExpansionResult result = expand_combinations(tree);
  REQUIRE(result.trees.size() == 2);

  const DependencyTree& overt = result.trees[0];
  CHECK(overt.root() == 2);
  CHECK(overt.nucleus(2).base_form == "give");
  CHECK(rendered(overt) == "John give the lecture on Tuesday");

  const DependencyTree& gapped = result.trees[1];
  CHECK(gapped.root() == 7);  // the coordinator slot, re-headed
  CHECK(gapped.nucleus(7).base_form == "give");
  CHECK(gapped.nucleus(7).attributes.at("inherited-from") == "2");
  REQUIRE(gapped.dependents(7).size() == 2);
  CHECK(gapped.incoming(8).function == "subj");
  CHECK(gapped.nucleus(8).base_form == "Bill");
  CHECK(gapped.incoming(9).function == "tmp");
  CHECK(gapped.nucleus(10).base_form == "Wednesday");
  for (const DependencyTree& expanded : result.trees) {
    CHECK(validate_axioms(expanded).empty());
  }
}

TEST_CASE("a chain-free tree expands to itself") {
  const DependencyTree tree = golden("dog_was_running.fdg");
  const ExpansionResult result = expand_combinations(tree);
  REQUIRE(result.trees.size() == 1);
  CHECK(result.trees[0].data().connexions == tree.data().connexions);
}

TEST_CASE("independent chains multiply") {
  const DependencyTree tree = golden("coordinated.fdg");
  const ExpansionResult result = expand_combinations(tree);
  REQUIRE(result.trees.size() == 4);
  std::set<std::string> sentences;
  for (const DependencyTree& expanded : result.trees) sentences.insert(rendered(expanded));
  CHECK(sentences == std::set<std::string>{"Bill love Mary", "Bill love Joan",
                                           "John love Mary", "John love Joan"});
  CHECK_FALSE(result.nested_chains);
}

TEST_CASE("the expansion cap raises a combinatorial bound") {
  const DependencyTree tree = golden("coordinated.fdg");
  CHECK_THROWS_AS((void)expand_combinations(tree, FunctionInventory::classic(), 3),
                  CombinatorialBound);
}

TEST_CASE("jack-painted expands into overt and gapped clauses") {
  const DependencyTree tree = golden("jack_painted.fdg");
  const ExpansionResult result = expand_combinations(tree);
  REQUIRE(result.trees.size() == 2);
  CHECK(rendered(result.trees[0]) == "Jack paint the kitchen white");
  // In-situ substitution: the coordinator slot becomes the inherited
  // verb, its own dependents (and the trailing stop) staying put.
  CHECK(rendered(result.trees[1]) == "paint the living_room blue .");
  CHECK(result.trees[1].nucleus(6).attributes.at("inherited-from") == "2");
}
