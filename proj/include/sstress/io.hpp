#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "sstress/graph.hpp"
#include "sstress/layout.hpp"
#include "sstress/solver.hpp"

namespace sstress {

// Shortest decimal form that round-trips the exact double (so repeated runs
// emit byte-identical files). Infinities and NaN print as inf/-inf/nan.
std::string format_double(double v);

// Header `id,x,y[,z]`, one row per node, original input ids.
void write_layout_csv(std::ostream& out, const Graph& g, const Layout& x);

struct NamedLayout {
    std::vector<std::int64_t> ids;
    Layout layout;
};

NamedLayout read_layout_csv(std::istream& in);

// Reorder a named layout onto g's internal node indexing; every graph node
// must appear exactly once.
Layout align_layout(const NamedLayout& named, const Graph& g);

// Header `sweep,stress,relative_change,elapsed_ms`.
void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& trace);

}  // namespace sstress
