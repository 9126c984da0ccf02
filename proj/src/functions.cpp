#include "dg/functions.hpp"

#include <istream>
#include <sstream>

#include "dg/errors.hpp"

namespace dg {

FunctionInventory::FunctionInventory() {
  labels_ = {"main", "cc"};
}

const FunctionInventory& FunctionInventory::classic() {
  static const FunctionInventory inventory = [] {
    FunctionInventory inv;
    for (const char* label :
         {"subj", "obj", "v-ch", "det", "loc", "tmp", "pcomp", "pm", "oc", "pnct"}) {
      inv.add(label);
    }
    return inv;
  }();
  return inventory;
}

bool FunctionInventory::contains(std::string_view label) const {
  return labels_.find(std::string(label)) != labels_.end();
}

void FunctionInventory::add(std::string label) {
  labels_.insert(std::move(label));
}

void FunctionInventory::load_extensions(std::istream& in) {
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string keyword, label, extra;
    if (!(fields >> keyword)) continue;  // blank line
    if (!(fields >> label) || (fields >> extra)) {
      throw Error("functions config line " + std::to_string(lineno) +
                  ": expected '<keyword> <label>'");
    }
    if (keyword == "function") {
      add(label);
    } else if (keyword == "coordination") {
      add(label);
      coordination_ = label;
    } else {
      throw Error("functions config line " + std::to_string(lineno) +
                  ": unknown keyword '" + keyword + "'");
    }
  }
}

}  // namespace dg
