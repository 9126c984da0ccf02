#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "dg/tree.hpp"

namespace dgtest {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("missing fixture " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

inline std::string golden_path(const std::string& name) {
  return std::string(DG_SOURCE_DIR) + "/tests/golden/" + name;
}

inline std::string grammar_path(const std::string& name) {
  return std::string(DG_SOURCE_DIR) + "/tests/grammars/" + name;
}

inline std::string data_path(const std::string& name) {
  return std::string(DG_SOURCE_DIR) + "/data/" + name;
}

// "The dog was running in the house", hand-built: the verb chain is
// one nucleus over tokens 2+3, "in ... house" one nucleus over 4+6.
inline dg::TreeData wasrun_data() {
  dg::TreeData data;
  data.sentence = {"The", "dog", "was", "running", "in", "the", "house"};
  const auto word = [&](dg::NucleusId id, const char* base,
                        std::initializer_list<int> positions) {
    dg::Nucleus nucleus;
    nucleus.id = id;
    nucleus.base_form = base;
    for (int position : positions) {
      nucleus.segments.push_back({data.sentence[position], position, std::nullopt});
    }
    data.nuclei.push_back(std::move(nucleus));
  };
  word(1, "the", {0});
  word(2, "dog", {1});
  word(3, "run", {2, 3});
  word(4, "house", {4, 6});
  word(5, "the", {5});
  data.connexions = {{0, 3, "main"}, {3, 2, "subj"}, {2, 1, "det"}, {3, 4, "loc"}, {4, 5, "det"}};
  return data;
}

// "Bill and John love Mary" with the coordinator as chain pivot.
inline dg::TreeData bill_john_data() {
  dg::TreeData data;
  data.sentence = {"Bill", "and", "John", "love", "Mary"};
  const char* bases[] = {"Bill", "and", "John", "love", "Mary"};
  for (int i = 0; i < 5; ++i) {
    dg::Nucleus nucleus;
    nucleus.id = i + 1;
    nucleus.base_form = bases[i];
    nucleus.segments.push_back({data.sentence[i], i, std::nullopt});
    data.nuclei.push_back(std::move(nucleus));
  }
  data.nuclei[1].morph_tags = {"CC"};
  data.connexions = {{0, 4, "main"}, {4, 2, "subj"}, {2, 1, "cc"}, {2, 3, "cc"}, {4, 5, "obj"}};
  return data;
}

// Figure 1, "What would you like me to do".
inline dg::TreeData whatdo_data() {
  dg::TreeData data;
  data.sentence = {"What", "would", "you", "like", "me", "to", "do"};
  for (int i = 0; i < 7; ++i) {
    dg::Nucleus nucleus;
    nucleus.id = i + 1;
    nucleus.base_form = data.sentence[i];
    nucleus.segments.push_back({data.sentence[i], i, std::nullopt});
    data.nuclei.push_back(std::move(nucleus));
  }
  data.connexions = {{0, 4, "main"}, {4, 2, "v-ch"}, {2, 3, "subj"}, {4, 7, "obj"},
                     {7, 1, "obj"},  {7, 5, "subj"}, {7, 6, "pm"}};
  return data;
}

}  // namespace dgtest
