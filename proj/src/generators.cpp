#include "wesample/generators.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "wesample/errors.hpp"
#include "wesample/rng.hpp"

namespace wesample {

Graph cycle_graph(NodeId n) {
    if (n < 3) throw InvalidParameterError("cycle requires n >= 3");
    std::vector<std::pair<NodeId, NodeId>> edges;
    edges.reserve(static_cast<std::size_t>(n));
    for (NodeId i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
    return Graph::from_edges(n, std::move(edges));
}

Graph hypercube_graph(int k) {
    if (k < 1) throw InvalidParameterError("hypercube requires k >= 1");
    if (k > 20) throw InvalidParameterError("hypercube dimension too large");
    NodeId n = static_cast<NodeId>(1) << k;
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (NodeId u = 0; u < n; ++u)
        for (int b = 0; b < k; ++b) {
            NodeId v = u ^ (static_cast<NodeId>(1) << b);
            if (u < v) edges.emplace_back(u, v);
        }
    return Graph::from_edges(n, std::move(edges));
}

Graph barbell_graph(NodeId n) {
    if (n < 5 || n % 2 == 0) throw InvalidParameterError("barbell requires odd n >= 5");
    NodeId m = (n - 1) / 2;
    NodeId center = n - 1;
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (NodeId side = 0; side < 2; ++side) {
        NodeId base = side * m;
        for (NodeId i = 0; i < m; ++i)
            for (NodeId j = i + 1; j < m; ++j) edges.emplace_back(base + i, base + j);
        edges.emplace_back(base, center); // gateway is the first node of each clique
    }
    return Graph::from_edges(n, std::move(edges));
}

Graph balanced_tree_graph(int height) {
    if (height < 1) throw InvalidParameterError("balanced tree requires height >= 1");
    if (height > 24) throw InvalidParameterError("tree height too large");
    NodeId n = (static_cast<NodeId>(1) << (height + 1)) - 1;
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (NodeId child = 1; child < n; ++child) edges.emplace_back((child - 1) / 2, child);
    return Graph::from_edges(n, std::move(edges));
}

Graph barabasi_albert_graph(NodeId n, NodeId m, std::uint64_t seed) {
    if (m < 1 || n <= m) throw InvalidParameterError("barabasi-albert requires n > m >= 1");
    Rng rng(seed, 0xbaULL);
    std::vector<std::pair<NodeId, NodeId>> edges;
    // One endpoint entry per edge side; sampling an index uniformly gives a
    // degree-proportional node.
    std::vector<NodeId> repeated;
    for (NodeId i = 1; i <= m; ++i) {
        edges.emplace_back(0, i);
        repeated.push_back(0);
        repeated.push_back(i);
    }
    std::unordered_set<NodeId> targets;
    for (NodeId u = m + 1; u < n; ++u) {
        targets.clear();
        while (static_cast<NodeId>(targets.size()) < m)
            targets.insert(repeated[rng.index(repeated.size())]);
        for (NodeId v : targets) {
            edges.emplace_back(u, v);
            repeated.push_back(u);
            repeated.push_back(v);
        }
    }
    return Graph::from_edges(n, std::move(edges));
}

namespace {

struct RawEdges {
    std::vector<std::pair<NodeId, NodeId>> directed;
    std::vector<std::string> names;
    std::unordered_map<std::string, NodeId> ids;

    NodeId intern(const std::string& token) {
        auto [it, inserted] = ids.emplace(token, static_cast<NodeId>(names.size()));
        if (inserted) names.push_back(token);
        return it->second;
    }
};

} // namespace

Graph parse_edge_list(std::istream& in, Symmetrize mode) {
    RawEdges raw;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ls(line);
        std::string a, b, extra;
        if (!(ls >> a >> b)) throw ParseError("expected two node tokens", line_no);
        if (ls >> extra) throw ParseError("unexpected trailing token '" + extra + "'", line_no);
        raw.directed.emplace_back(raw.intern(a), raw.intern(b));
    }
    if (raw.names.empty()) throw ParseError("empty graph", line_no);

    std::vector<std::pair<NodeId, NodeId>> undirected;
    if (mode == Symmetrize::Union) {
        undirected = raw.directed;
    } else {
        std::unordered_set<std::uint64_t> seen;
        seen.reserve(raw.directed.size() * 2);
        for (auto [a, b] : raw.directed)
            seen.insert((static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b));
        for (auto [a, b] : raw.directed) {
            if (a == b) continue;
            std::uint64_t rev = (static_cast<std::uint64_t>(b) << 32) | static_cast<std::uint32_t>(a);
            if (seen.count(rev)) undirected.emplace_back(a, b);
        }
    }
    Graph g = Graph::from_edges(static_cast<NodeId>(raw.names.size()), std::move(undirected));
    g.set_external_ids(std::move(raw.names));
    return g;
}

Graph load_edge_list(const std::string& path, Symmetrize mode) {
    std::ifstream in(path);
    if (!in) throw InvalidParameterError("cannot open edge list '" + path + "'");
    return parse_edge_list(in, mode);
}

void load_attributes(Graph& g, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidParameterError("cannot open attribute file '" + path + "'");
    std::unordered_map<std::string, NodeId> ids;
    for (NodeId i = 0; i < static_cast<NodeId>(g.external_ids().size()); ++i)
        ids[g.external_ids()[static_cast<std::size_t>(i)]] = i;

    std::unordered_map<std::string, std::vector<double>> columns;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ls(line);
        std::string node, name;
        double value;
        if (!(ls >> node >> name >> value)) throw ParseError("expected: node name value", line_no);
        NodeId id;
        if (!ids.empty()) {
            auto it = ids.find(node);
            if (it == ids.end()) throw ParseError("unknown node token '" + node + "'", line_no);
            id = it->second;
        } else {
            try {
                id = static_cast<NodeId>(std::stol(node));
            } catch (const std::exception&) {
                throw ParseError("non-numeric node token '" + node + "'", line_no);
            }
            if (id < 0 || id >= g.node_count()) throw ParseError("node id out of range", line_no);
        }
        auto [it, inserted] = columns.emplace(name, std::vector<double>());
        if (inserted) it->second.assign(static_cast<std::size_t>(g.node_count()), 0.0);
        it->second[static_cast<std::size_t>(id)] = value;
    }
    for (auto& [name, values] : columns) g.set_attribute(name, std::move(values));
}

void write_edge_list(const Graph& g, std::ostream& out) {
    for (NodeId u = 0; u < g.node_count(); ++u)
        for (NodeId v : g.neighbors(u))
            if (u < v) out << u << ' ' << v << '\n';
}

} // namespace wesample
