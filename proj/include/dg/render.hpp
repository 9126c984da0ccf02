// dg/render.hpp - ascii and dot diagram output
#pragma once

#include <string>

#include "dg/tree.hpp"

namespace dg {

enum class RenderFormat { Ascii, Dot };

// Ascii: nuclei on a baseline in linear order, one labeled arc per row
// above, arrowheads at dependents.  Arc pairs that cannot be drawn
// without crossing are marked 'X' where they meet and listed under the
// diagram.  Dot: a directed graph with function-labeled edges; cc
// edges are dashed since they carry no dependency.
std::string render(const DependencyTree& tree, RenderFormat format,
                   const FunctionInventory& inventory = FunctionInventory::classic());

}  // namespace dg
