#pragma once

#include <iosfwd>

#include "sstress/graph.hpp"
#include "sstress/layout.hpp"

namespace sstress {

// Fixed 1000-unit canvas with a 5% margin, unit-width edges, nodes as small
// circles. Output is byte-deterministic for a given graph and layout.
// Layouts with more than two dimensions are projected onto the first two.
void write_svg(std::ostream& out, const Graph& g, const Layout& x);

}  // namespace sstress
