#include "dg/tree.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace dg {

int Nucleus::anchor() const {
  if (segments.empty()) throw Error("nucleus " + std::to_string(id) + " has no segments");
  return segments.front().position;
}

bool Nucleus::has_tag(std::string_view tag) const {
  return std::find(morph_tags.begin(), morph_tags.end(), tag) != morph_tags.end();
}

std::string to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::MultipleHeads: return "multiple-heads";
    case ViolationKind::IsolatedNode: return "isolated-node";
    case ViolationKind::Cycle: return "cycle";
    case ViolationKind::NoRoot: return "no-root";
    case ViolationKind::MultipleRoots: return "multiple-roots";
    case ViolationKind::SegmentOverlap: return "segment-overlap";
    case ViolationKind::DanglingReference: return "dangling-reference";
    case ViolationKind::DuplicateId: return "duplicate-id";
    case ViolationKind::BadNucleus: return "bad-nucleus";
    case ViolationKind::InvalidFunction: return "invalid-function";
    case ViolationKind::MisplacedMain: return "misplaced-main";
  }
  return "unknown";
}

std::string describe(const AxiomViolation& violation) {
  std::ostringstream out;
  out << to_string(violation.kind);
  if (!violation.ids.empty()) {
    out << " [";
    for (std::size_t i = 0; i < violation.ids.size(); ++i) {
      if (i) out << ",";
      out << violation.ids[i];
    }
    out << "]";
  }
  if (violation.position >= 0) out << " at token " << violation.position;
  return out.str();
}

TreeError::TreeError(ViolationReport report)
    : Error([&report] {
        std::string message = "tree rejected:";
        for (const auto& violation : report) message += " " + describe(violation);
        return message;
      }()),
      report_(std::move(report)) {}

namespace {

bool sub_spans_overlap(const std::optional<SubSpan>& a, const std::optional<SubSpan>& b) {
  if (!a || !b) return true;  // a whole-token segment overlaps everything there
  return a->begin < b->end && b->begin < a->end;
}

// Strongly connected components of the regent->dependent graph,
// iterative Tarjan so corpus-length chains cannot overflow the stack.
// Reports components of size > 1 and self-loops, smallest member first.
std::vector<std::vector<NucleusId>> cyclic_components(
    const std::vector<NucleusId>& ids,
    const std::map<NucleusId, std::vector<NucleusId>>& edges) {
  std::map<NucleusId, int> index, lowlink;
  std::set<NucleusId> on_stack;
  std::vector<NucleusId> stack;
  std::vector<std::vector<NucleusId>> components;
  int next_index = 0;

  struct Frame {
    NucleusId node;
    std::size_t edge = 0;
  };

  for (NucleusId start : ids) {
    if (index.count(start)) continue;
    std::vector<Frame> frames{{start}};
    index[start] = lowlink[start] = next_index++;
    stack.push_back(start);
    on_stack.insert(start);
    while (!frames.empty()) {
      Frame& frame = frames.back();
      const auto it = edges.find(frame.node);
      const std::vector<NucleusId> no_edges;
      const std::vector<NucleusId>& out = it == edges.end() ? no_edges : it->second;
      if (frame.edge < out.size()) {
        NucleusId next = out[frame.edge++];
        if (!index.count(next)) {
          index[next] = lowlink[next] = next_index++;
          stack.push_back(next);
          on_stack.insert(next);
          frames.push_back({next});
        } else if (on_stack.count(next)) {
          lowlink[frame.node] = std::min(lowlink[frame.node], index[next]);
        }
      } else {
        NucleusId node = frame.node;
        frames.pop_back();
        if (!frames.empty()) {
          lowlink[frames.back().node] = std::min(lowlink[frames.back().node], lowlink[node]);
        }
        if (lowlink[node] == index[node]) {
          std::vector<NucleusId> component;
          for (;;) {
            NucleusId member = stack.back();
            stack.pop_back();
            on_stack.erase(member);
            component.push_back(member);
            if (member == node) break;
          }
          bool self_loop = false;
          if (component.size() == 1) {
            const auto self = edges.find(component.front());
            self_loop = self != edges.end() &&
                        std::find(self->second.begin(), self->second.end(),
                                  component.front()) != self->second.end();
          }
          if (component.size() > 1 || self_loop) {
            std::sort(component.begin(), component.end());
            components.push_back(std::move(component));
          }
        }
      }
    }
  }
  std::sort(components.begin(), components.end());
  return components;
}

}  // namespace

ViolationReport check_structure(const TreeData& data, const FunctionInventory* inventory) {
  ViolationReport report;
  std::set<NucleusId> ids;
  for (const Nucleus& nucleus : data.nuclei) {
    if (!ids.insert(nucleus.id).second) {
      report.push_back({ViolationKind::DuplicateId, {nucleus.id}});
    }
    if (nucleus.id <= 0 || nucleus.segments.empty()) {
      report.push_back({ViolationKind::BadNucleus, {nucleus.id}});
      continue;
    }
    const WordSegment* previous = nullptr;
    for (const WordSegment& segment : nucleus.segments) {
      if (segment.position < 0 ||
          segment.position >= static_cast<int>(data.sentence.size())) {
        report.push_back({ViolationKind::BadNucleus, {nucleus.id}, segment.position});
      } else if (previous && (previous->position > segment.position ||
                              (previous->position == segment.position &&
                               (!previous->sub_span || !segment.sub_span ||
                                previous->sub_span->begin > segment.sub_span->begin)))) {
        report.push_back({ViolationKind::BadNucleus, {nucleus.id}, segment.position});
      }
      previous = &segment;
    }
  }
  for (const Connexion& connexion : data.connexions) {
    if (connexion.regent != kRoot && !ids.count(connexion.regent)) {
      report.push_back({ViolationKind::DanglingReference, {connexion.regent}});
    }
    if (!ids.count(connexion.dependent)) {
      report.push_back({ViolationKind::DanglingReference, {connexion.dependent}});
    }
    const bool is_main = connexion.function == "main";
    if (is_main != (connexion.regent == kRoot)) {
      report.push_back({ViolationKind::MisplacedMain, {connexion.dependent}});
    }
    if (inventory && !inventory->contains(connexion.function)) {
      report.push_back({ViolationKind::InvalidFunction, {connexion.dependent}});
    }
  }
  return report;
}

ViolationReport validate_axioms(const TreeData& data) {
  ViolationReport report;

  // Axiom: exactly one regent per nucleus; none missing, none doubled.
  std::map<NucleusId, int> incoming;
  std::vector<NucleusId> roots;
  for (const Nucleus& nucleus : data.nuclei) incoming[nucleus.id];
  for (const Connexion& connexion : data.connexions) {
    ++incoming[connexion.dependent];
    if (connexion.regent == kRoot) roots.push_back(connexion.dependent);
  }
  for (const auto& [id, count] : incoming) {
    if (count > 1) report.push_back({ViolationKind::MultipleHeads, {id}});
    if (count == 0) report.push_back({ViolationKind::IsolatedNode, {id}});
  }

  // Axiom: the uppermost regent is the central node of the sentence.
  if (roots.empty()) {
    report.push_back({ViolationKind::NoRoot, {}});
  } else if (roots.size() > 1) {
    std::sort(roots.begin(), roots.end());
    report.push_back({ViolationKind::MultipleRoots, roots});
  }

  // Axiom: acyclic and directed; mutual dependency included.
  std::vector<NucleusId> ids;
  std::map<NucleusId, std::vector<NucleusId>> edges;
  for (const Nucleus& nucleus : data.nuclei) ids.push_back(nucleus.id);
  for (const Connexion& connexion : data.connexions) {
    if (connexion.regent != kRoot) edges[connexion.regent].push_back(connexion.dependent);
  }
  for (auto& component : cyclic_components(ids, edges)) {
    report.push_back({ViolationKind::Cycle, std::move(component)});
  }

  // Axiom: every token position covered by at most one nucleus.
  std::map<int, std::vector<std::pair<std::optional<SubSpan>, NucleusId>>> coverage;
  for (const Nucleus& nucleus : data.nuclei) {
    for (const WordSegment& segment : nucleus.segments) {
      coverage[segment.position].push_back({segment.sub_span, nucleus.id});
    }
  }
  for (const auto& [position, claims] : coverage) {
    bool overlap = false;
    for (std::size_t i = 0; i < claims.size() && !overlap; ++i) {
      for (std::size_t j = i + 1; j < claims.size() && !overlap; ++j) {
        overlap = sub_spans_overlap(claims[i].first, claims[j].first);
      }
    }
    if (overlap) report.push_back({ViolationKind::SegmentOverlap, {}, position});
  }

  return report;
}

ViolationReport validate_axioms(const DependencyTree& tree) {
  return validate_axioms(tree.data());
}

DependencyTree build_tree(TreeData data, const FunctionInventory* inventory) {
  ViolationReport report = check_structure(data, inventory);
  if (!report.empty()) throw TreeError(std::move(report));
  report = validate_axioms(data);
  if (!report.empty()) throw TreeError(std::move(report));

  DependencyTree tree;
  tree.data_ = std::move(data);
  tree.index_.reserve(tree.data_.nuclei.size());
  for (std::size_t i = 0; i < tree.data_.nuclei.size(); ++i) {
    tree.index_[tree.data_.nuclei[i].id] = i;
  }
  tree.children_.resize(tree.data_.nuclei.size());
  for (std::size_t i = 0; i < tree.data_.connexions.size(); ++i) {
    const Connexion& connexion = tree.data_.connexions[i];
    tree.incoming_[connexion.dependent] = i;
    if (connexion.regent == kRoot) {
      tree.root_ = connexion.dependent;
    } else {
      tree.children_[tree.index_[connexion.regent]].push_back(connexion.dependent);
    }
  }
  for (auto& children : tree.children_) {
    std::sort(children.begin(), children.end(), [&tree](NucleusId a, NucleusId b) {
      return tree.nucleus(a).anchor() < tree.nucleus(b).anchor();
    });
  }
  return tree;
}

std::size_t DependencyTree::index_of(NucleusId id) const {
  const auto it = index_.find(id);
  if (it == index_.end()) throw UnknownId(id);
  return it->second;
}

bool DependencyTree::has_nucleus(NucleusId id) const { return index_.count(id) != 0; }

const Nucleus& DependencyTree::nucleus(NucleusId id) const {
  return data_.nuclei[index_of(id)];
}

const Connexion& DependencyTree::incoming(NucleusId id) const {
  const auto it = incoming_.find(id);
  if (it == incoming_.end()) throw UnknownId(id);
  return data_.connexions[it->second];
}

std::vector<NucleusId> DependencyTree::dependents(NucleusId id) const {
  return children_[index_of(id)];
}

std::vector<NucleusId> DependencyTree::subtree(NucleusId id) const {
  std::vector<NucleusId> result;
  std::vector<NucleusId> frontier{id};
  index_of(id);
  while (!frontier.empty()) {
    NucleusId node = frontier.back();
    frontier.pop_back();
    result.push_back(node);
    const auto& children = children_[index_of(node)];
    frontier.insert(frontier.end(), children.begin(), children.end());
  }
  std::sort(result.begin(), result.end());
  return result;
}

bool DependencyTree::in_subtree(NucleusId node, NucleusId ancestor) const {
  index_of(ancestor);
  NucleusId current = node;
  for (;;) {
    if (current == ancestor) return true;
    const Connexion& up = incoming(current);
    if (up.regent == kRoot) return false;
    current = up.regent;
  }
}

std::vector<NucleusId> DependencyTree::linear_order() const {
  std::vector<NucleusId> order;
  order.reserve(data_.nuclei.size());
  for (const Nucleus& nucleus : data_.nuclei) order.push_back(nucleus.id);
  std::sort(order.begin(), order.end(), [this](NucleusId a, NucleusId b) {
    return nucleus(a).anchor() < nucleus(b).anchor();
  });
  return order;
}

}  // namespace dg
