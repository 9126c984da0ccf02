// dg/functions.hpp - the closed inventory of syntactic function labels
#pragma once

#include <iosfwd>
#include <set>
#include <string>
#include <string_view>

namespace dg {

// Function labels form a configured closed set.  One label marks the
// top connexion ("main", valid only under the virtual root) and one is
// flagged as non-dependency: the coordination arc, which expresses
// functional equivalence between conjuncts rather than subordination.
class FunctionInventory {
public:
  // The twelve labels used throughout the shipped analyses:
  // main subj obj v-ch det loc tmp pcomp pm oc cc pnct.
  static const FunctionInventory& classic();

  FunctionInventory();

  bool contains(std::string_view label) const;
  void add(std::string label);

  const std::string& main_label() const { return main_; }
  const std::string& coordination_label() const { return coordination_; }
  bool is_coordination(std::string_view label) const { return label == coordination_; }

  // Extends an inventory from a config stream.  Lines:
  //   function <label>
  //   coordination <label>     (re-flags the non-dependency label)
  // '#' starts a comment.  Throws dg::Error on malformed lines.
  void load_extensions(std::istream& in);

  const std::set<std::string>& labels() const { return labels_; }

private:
  std::set<std::string> labels_;
  std::string main_ = "main";
  std::string coordination_ = "cc";
};

}  // namespace dg
