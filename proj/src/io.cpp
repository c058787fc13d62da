#include "sstress/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>

namespace sstress {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, p);
}

void write_layout_csv(std::ostream& out, const Graph& g, const Layout& x) {
    out << "id,x,y";
    if (x.dim() >= 3) out << ",z";
    out << '\n';
    for (NodeId v = 0; v < g.node_count(); ++v) {
        out << g.external_id(v);
        for (int d = 0; d < x.dim(); ++d) out << ',' << format_double(x(v, d));
        out << '\n';
    }
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

}  // namespace

NamedLayout read_layout_csv(std::istream& in) {
    std::string line;
    long line_no = 0;
    if (!std::getline(in, line)) throw ParseError("empty layout file", 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    int dim;
    if (line == "id,x,y")
        dim = 2;
    else if (line == "id,x,y,z")
        dim = 3;
    else
        throw ParseError("expected header `id,x,y` or `id,x,y,z`", 1);
    std::vector<std::int64_t> ids;
    std::vector<double> coords;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = split_csv(line);
        if (static_cast<int>(fields.size()) != dim + 1)
            throw ParseError("wrong field count", line_no);
        std::int64_t id;
        {
            auto [p, ec] = std::from_chars(fields[0].data(), fields[0].data() + fields[0].size(), id);
            if (ec != std::errc{} || p != fields[0].data() + fields[0].size())
                throw ParseError("malformed id", line_no);
        }
        ids.push_back(id);
        for (int d = 0; d < dim; ++d) {
            double c;
            const std::string& f = fields[d + 1];
            auto [p, ec] = std::from_chars(f.data(), f.data() + f.size(), c);
            if (ec != std::errc{} || p != f.data() + f.size())
                throw ParseError("malformed coordinate", line_no);
            coords.push_back(c);
        }
    }
    if (ids.empty()) throw ParseError("layout file has no rows", line_no);
    NamedLayout named;
    named.ids = std::move(ids);
    named.layout = Layout(static_cast<NodeId>(named.ids.size()), dim);
    std::copy(coords.begin(), coords.end(), named.layout.data().begin());
    return named;
}

Layout align_layout(const NamedLayout& named, const Graph& g) {
    NodeId n = g.node_count();
    if (static_cast<NodeId>(named.ids.size()) != n)
        throw ValidationError("layout does not match the graph's node set");
    std::vector<std::pair<std::int64_t, NodeId>> lookup;
    lookup.reserve(n);
    for (NodeId v = 0; v < n; ++v) lookup.emplace_back(g.external_id(v), v);
    std::sort(lookup.begin(), lookup.end());
    Layout out(n, named.layout.dim());
    std::vector<char> seen(n, 0);
    for (NodeId row = 0; row < n; ++row) {
        auto it = std::lower_bound(lookup.begin(), lookup.end(),
                                   std::make_pair(named.ids[row], NodeId{0}));
        if (it == lookup.end() || it->first != named.ids[row] || seen[it->second])
            throw ValidationError("layout does not match the graph's node set");
        seen[it->second] = 1;
        for (int d = 0; d < named.layout.dim(); ++d) out(it->second, d) = named.layout(row, d);
    }
    return out;
}

void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& trace) {
    out << "sweep,stress,relative_change,elapsed_ms\n";
    for (const TraceRow& row : trace)
        out << row.sweep << ',' << format_double(row.stress) << ','
            << format_double(row.relative_change) << ',' << format_double(row.elapsed_ms)
            << '\n';
}

}  // namespace sstress
