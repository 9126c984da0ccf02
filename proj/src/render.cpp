#include "dg/render.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "dg/projectivity.hpp"

namespace dg {

namespace {

std::string nucleus_label(const Nucleus& nucleus) {
  std::string label;
  for (const WordSegment& segment : nucleus.segments) {
    if (!label.empty()) label += ' ';
    label += segment.surface;
  }
  return label;
}

std::string arc_name(const DependencyTree& tree, const Connexion& arc) {
  const std::string regent =
      arc.regent == kRoot ? "ROOT" : tree.nucleus(arc.regent).segments.front().surface;
  return arc.function + "(" + regent + "->" +
         tree.nucleus(arc.dependent).segments.front().surface + ")";
}

std::string render_dot(const DependencyTree& tree, const FunctionInventory& inventory) {
  std::ostringstream out;
  out << "digraph dependency_tree {\n";
  out << "  rankdir=TB;\n";
  out << "  root [shape=point];\n";
  for (NucleusId id : tree.linear_order()) {
    const Nucleus& nucleus = tree.nucleus(id);
    out << "  n" << id << " [label=\"" << nucleus_label(nucleus);
    if (!nucleus.base_form.empty()) out << "\\n'" << nucleus.base_form << "'";
    out << "\"];\n";
  }
  for (const Connexion& arc : tree.connexions()) {
    out << "  " << (arc.regent == kRoot ? std::string("root") : "n" + std::to_string(arc.regent))
        << " -> n" << arc.dependent << " [label=\"" << arc.function << "\"";
    if (inventory.is_coordination(arc.function)) out << ", style=dashed";
    out << "];\n";
  }
  out << "}\n";
  return out.str();
}

struct AsciiArc {
  Connexion arc;
  int regent_col;
  int dependent_col;
  int row;
};

std::string render_ascii(const DependencyTree& tree, const FunctionInventory& inventory) {
  const std::vector<NucleusId> order = tree.linear_order();
  std::map<NucleusId, int> centre;
  std::string baseline;
  for (NucleusId id : order) {
    if (!baseline.empty()) baseline += "   ";
    const std::string label = nucleus_label(tree.nucleus(id));
    centre[id] = static_cast<int>(baseline.size() + label.size() / 2);
    baseline += label;
  }
  const int width = static_cast<int>(baseline.size());

  // Narrow arcs sit close to the words, wide ones above them.
  std::vector<AsciiArc> arcs;
  for (const Connexion& arc : tree.connexions()) {
    if (arc.regent == kRoot) continue;
    arcs.push_back({arc, centre[arc.regent], centre[arc.dependent], 0});
  }
  std::sort(arcs.begin(), arcs.end(), [](const AsciiArc& a, const AsciiArc& b) {
    const int wa = std::abs(a.regent_col - a.dependent_col);
    const int wb = std::abs(b.regent_col - b.dependent_col);
    return wa != wb ? wa < wb : std::min(a.regent_col, a.dependent_col) <
                                    std::min(b.regent_col, b.dependent_col);
  });
  for (std::size_t i = 0; i < arcs.size(); ++i) arcs[i].row = static_cast<int>(i) + 1;
  const int root_row = static_cast<int>(arcs.size()) + 1;

  // Which unordered arc pairs must be marked.  Connexions are keyed by
  // their dependent.
  std::set<std::pair<NucleusId, NucleusId>> crossing;
  for (const ProjectivityViolation& violation : crossing_arcs(tree)) {
    const CrossingArcs& pair = std::get<CrossingArcs>(violation);
    crossing.insert(std::minmax(pair.covering.dependent, pair.entering.dependent));
  }

  std::vector<std::string> grid(root_row + 1, std::string(width, ' '));
  std::vector<std::vector<NucleusId>> owner(root_row + 1,
                                            std::vector<NucleusId>(width, kRoot - 1));
  const auto crosses = [&crossing](NucleusId a, NucleusId b) {
    return crossing.count(std::minmax(a, b)) != 0;
  };
  const auto draw_vertical = [&](int col, int from_row, int to_row, NucleusId dep,
                                 bool arrow) {
    for (int row = from_row; row >= to_row; --row) {
      char& cell = grid[row][col];
      if (cell == '-') {
        cell = crosses(dep, owner[row][col]) ? 'X' : '+';
      } else if (row == to_row && arrow) {
        cell = 'v';
      } else if (cell == ' ') {
        cell = '|';
      }
    }
  };

  for (const AsciiArc& arc : arcs) {
    const int lo = std::min(arc.regent_col, arc.dependent_col);
    const int hi = std::max(arc.regent_col, arc.dependent_col);
    for (int col = lo; col <= hi; ++col) {
      if (grid[arc.row][col] == ' ') {
        grid[arc.row][col] = '-';
        owner[arc.row][col] = arc.arc.dependent;
      }
    }
    grid[arc.row][arc.regent_col] = '+';
    grid[arc.row][arc.dependent_col] = arc.row == 1 ? 'v' : '+';
  }
  for (const AsciiArc& arc : arcs) {
    if (arc.row == 1) continue;
    draw_vertical(arc.regent_col, arc.row - 1, 1, arc.arc.dependent, false);
    draw_vertical(arc.dependent_col, arc.row - 1, 1, arc.arc.dependent, true);
  }
  // The virtual root hangs straight down onto the sentence head; an
  // arc running over that column covers the root.
  const Connexion& root_arc = tree.incoming(tree.root());
  grid[root_row][centre[tree.root()]] = '*';
  draw_vertical(centre[tree.root()], root_row - 1, 1, root_arc.dependent, true);

  for (const AsciiArc& arc : arcs) {
    const int lo = std::min(arc.regent_col, arc.dependent_col);
    const std::string& label = arc.arc.function;
    int col = lo + 2;
    for (char c : label) {
      if (col >= width) break;
      if (grid[arc.row][col] == '-') grid[arc.row][col] = c;
      ++col;
    }
  }
  {
    int col = centre[tree.root()] + 2;
    for (char c : root_arc.function) {
      if (col >= width) break;
      if (grid[root_row][col] == ' ') grid[root_row][col] = c;
      ++col;
    }
  }

  std::ostringstream out;
  for (int row = root_row; row >= 1; --row) {
    std::string line = grid[row];
    line.erase(line.find_last_not_of(' ') + 1);
    out << line << "\n";
  }
  out << baseline << "\n";
  for (const ProjectivityViolation& violation : crossing_arcs(tree)) {
    const CrossingArcs& pair = std::get<CrossingArcs>(violation);
    out << "crossing: " << arc_name(tree, pair.covering) << " x "
        << arc_name(tree, pair.entering) << "\n";
  }
  (void)inventory;
  return out.str();
}

}  // namespace

std::string render(const DependencyTree& tree, RenderFormat format,
                   const FunctionInventory& inventory) {
  return format == RenderFormat::Dot ? render_dot(tree, inventory)
                                     : render_ascii(tree, inventory);
}

}  // namespace dg
