#include "balancekit/graph_io.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "balancekit/numio.hpp"

namespace balancekit {

namespace {

[[noreturn]] void fail(const std::string& name, int line, const std::string& msg) {
    throw std::runtime_error(name + ":" + std::to_string(line) + ": " + msg);
}

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        std::size_t tab = line.find('\t', start);
        if (tab == std::string::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, tab - start));
        start = tab + 1;
    }
}

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    return line;
}

} // namespace

SignedGraph read_graph(std::istream& in, const std::string& name) {
    int vertex_count = -1;
    std::map<int, std::string> label_map;
    std::vector<Edge> edges;

    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = strip_cr(raw);
        if (line.empty())
            continue;
        if (line[0] == '#') {
            if (line.rfind("# vertices=", 0) == 0) {
                if (vertex_count >= 0)
                    fail(name, lineno, "duplicate vertices header");
                try {
                    vertex_count = parse_int(line.substr(11));
                } catch (const std::exception&) {
                    fail(name, lineno, "malformed vertices header");
                }
                if (vertex_count < 0)
                    fail(name, lineno, "vertex count must be non-negative");
            } else if (line.rfind("# label\t", 0) == 0) {
                auto fields = split_tabs(line.substr(2));
                if (fields.size() != 3)
                    fail(name, lineno, "label line needs id and text");
                int id;
                try {
                    id = parse_int(fields[1]);
                } catch (const std::exception&) {
                    fail(name, lineno, "malformed label id '" + fields[1] + "'");
                }
                label_map[id] = fields[2];
            }
            continue;
        }
        if (vertex_count < 0)
            fail(name, lineno, "edge before '# vertices=' header");
        auto fields = split_tabs(line);
        if (fields.size() != 3)
            fail(name, lineno, "expected 'u<TAB>v<TAB>signed_weight'");
        int u, v;
        double sw;
        try {
            u = parse_int(fields[0]);
            v = parse_int(fields[1]);
            sw = parse_double(fields[2]);
        } catch (const std::exception&) {
            fail(name, lineno, "malformed edge '" + line + "'");
        }
        if (sw == 0.0 || !std::isfinite(sw))
            fail(name, lineno, "edge weight must be finite and non-zero");
        edges.push_back({u, v, std::abs(sw), sw > 0 ? EdgeSign::positive : EdgeSign::negative});
    }
    if (vertex_count < 0)
        fail(name, lineno, "missing '# vertices=' header");

    std::vector<std::string> labels;
    if (!label_map.empty()) {
        labels.resize(vertex_count);
        for (const auto& [id, text] : label_map) {
            if (id < 0 || id >= vertex_count)
                throw std::runtime_error(name + ": label id " + std::to_string(id) +
                                         " out of range for " + std::to_string(vertex_count) +
                                         " vertices");
            labels[id] = text;
        }
    }
    try {
        return SignedGraph(vertex_count, std::move(edges), std::move(labels));
    } catch (const std::exception& e) {
        throw std::runtime_error(name + ": " + e.what());
    }
}

SignedGraph read_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open graph file '" + path + "'");
    return read_graph(in, path);
}

void write_graph(std::ostream& out, const SignedGraph& graph) {
    out << "# vertices=" << graph.vertex_count() << "\n";
    if (graph.has_labels())
        for (int v = 0; v < graph.vertex_count(); ++v)
            out << "# label\t" << v << "\t" << graph.label(v) << "\n";
    for (const Edge& e : graph.edges())
        out << e.u << "\t" << e.v << "\t" << format_double(e.signed_weight()) << "\n";
}

void write_graph_file(const std::string& path, const SignedGraph& graph) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write graph file '" + path + "'");
    write_graph(out, graph);
}

Partition read_partition(std::istream& in, const std::string& name) {
    std::map<int, int> rows;
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = strip_cr(raw);
        if (line.empty() || line[0] == '#')
            continue;
        auto fields = split_tabs(line);
        if (fields.size() != 2)
            fail(name, lineno, "expected 'vertex_id<TAB>cluster_id'");
        int v, c;
        try {
            v = parse_int(fields[0]);
            c = parse_int(fields[1]);
        } catch (const std::exception&) {
            fail(name, lineno, "malformed membership line '" + line + "'");
        }
        if (v < 0)
            fail(name, lineno, "negative vertex id");
        if (c < 0)
            fail(name, lineno, "negative cluster id");
        if (!rows.emplace(v, c).second)
            fail(name, lineno, "vertex " + std::to_string(v) + " assigned twice");
    }
    if (rows.empty())
        return Partition(std::vector<int>{});
    const int n = rows.rbegin()->first + 1;
    if (static_cast<int>(rows.size()) != n)
        throw std::runtime_error(name + ": memberships cover " + std::to_string(rows.size()) +
                                 " vertices but ids run up to " + std::to_string(n - 1));
    std::vector<int> assignment(n);
    for (const auto& [v, c] : rows)
        assignment[v] = c;
    return Partition(std::move(assignment));
}

Partition read_partition_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open membership file '" + path + "'");
    return read_partition(in, path);
}

void write_partition(std::ostream& out, const Partition& partition) {
    for (int v = 0; v < partition.size(); ++v)
        out << v << "\t" << partition.cluster_of(v) << "\n";
}

void write_partition_file(const std::string& path, const Partition& partition) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write membership file '" + path + "'");
    write_partition(out, partition);
}

} // namespace balancekit
