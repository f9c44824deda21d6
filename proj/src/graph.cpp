#include "wesample/graph.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

#include "wesample/errors.hpp"

namespace wesample {

void Graph::check_node(NodeId u) const {
    if (u < 0 || u >= node_count_)
        throw InvalidNodeError("unknown node id " + std::to_string(u));
}

Graph Graph::from_edges(NodeId node_count, std::vector<std::pair<NodeId, NodeId>> edges) {
    if (node_count < 0) throw InvalidParameterError("node_count must be non-negative");
    Graph g;
    g.node_count_ = node_count;
    for (auto& [a, b] : edges) {
        if (a < 0 || a >= node_count || b < 0 || b >= node_count)
            throw InvalidNodeError("edge endpoint out of range");
        if (a > b) std::swap(a, b);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    std::erase_if(edges, [](const auto& e) { return e.first == e.second; });

    g.edge_count_ = static_cast<std::int64_t>(edges.size());
    std::vector<std::int64_t> deg(node_count, 0);
    for (const auto& [a, b] : edges) {
        ++deg[a];
        ++deg[b];
    }
    g.offsets_.assign(node_count + 1, 0);
    std::partial_sum(deg.begin(), deg.end(), g.offsets_.begin() + 1);
    g.adjacency_.resize(static_cast<std::size_t>(2 * g.edge_count_));
    std::vector<std::int64_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    for (const auto& [a, b] : edges) {
        g.adjacency_[static_cast<std::size_t>(cursor[a]++)] = b;
        g.adjacency_[static_cast<std::size_t>(cursor[b]++)] = a;
    }
    for (NodeId u = 0; u < node_count; ++u)
        std::sort(g.adjacency_.begin() + g.offsets_[u], g.adjacency_.begin() + g.offsets_[u + 1]);
    return g;
}

NodeId Graph::max_degree() const {
    NodeId best = 0;
    for (NodeId u = 0; u < node_count_; ++u) best = std::max(best, degree(u));
    return best;
}

NodeId Graph::min_degree() const {
    if (node_count_ == 0) return 0;
    NodeId best = degree(0);
    for (NodeId u = 1; u < node_count_; ++u) best = std::min(best, degree(u));
    return best;
}

bool Graph::has_edge(NodeId u, NodeId v) const {
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

void Graph::set_attribute(const std::string& name, std::vector<double> values) {
    if (static_cast<NodeId>(values.size()) != node_count_)
        throw InvalidParameterError("attribute size mismatch for '" + name + "'");
    attributes_[name] = std::move(values);
}

std::span<const double> Graph::attribute(const std::string& name) const {
    auto it = attributes_.find(name);
    if (it == attributes_.end())
        throw InvalidParameterError("unknown attribute '" + name + "'");
    return it->second;
}

std::vector<std::string> Graph::attribute_names() const {
    std::vector<std::string> names;
    for (const auto& [k, v] : attributes_) names.push_back(k);
    return names;
}

std::vector<NodeId> bfs_distances(const Graph& g, NodeId start) {
    std::vector<NodeId> dist(static_cast<std::size_t>(g.node_count()), -1);
    if (g.node_count() == 0) return dist;
    std::queue<NodeId> q;
    dist[static_cast<std::size_t>(start)] = 0;
    q.push(start);
    while (!q.empty()) {
        NodeId u = q.front();
        q.pop();
        for (NodeId v : g.neighbors(u)) {
            if (dist[static_cast<std::size_t>(v)] < 0) {
                dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
                q.push(v);
            }
        }
    }
    return dist;
}

bool is_connected(const Graph& g) {
    if (g.node_count() == 0) return true;
    auto dist = bfs_distances(g, 0);
    return std::none_of(dist.begin(), dist.end(), [](NodeId d) { return d < 0; });
}

NodeId eccentricity(const Graph& g, NodeId start) {
    auto dist = bfs_distances(g, start);
    NodeId ecc = 0;
    for (NodeId d : dist) {
        if (d < 0) throw NotIrreducibleError("graph is disconnected");
        ecc = std::max(ecc, d);
    }
    return ecc;
}

namespace {

std::pair<NodeId, NodeId> double_sweep(const Graph& g) {
    // Lower bound: BFS from 0, then BFS from the farthest node found.
    auto d0 = bfs_distances(g, 0);
    NodeId far = 0;
    for (NodeId u = 0; u < g.node_count(); ++u) {
        if (d0[static_cast<std::size_t>(u)] < 0) throw NotIrreducibleError("graph is disconnected");
        if (d0[static_cast<std::size_t>(u)] > d0[static_cast<std::size_t>(far)]) far = u;
    }
    auto d1 = bfs_distances(g, far);
    NodeId far2 = far, best = 0;
    for (NodeId u = 0; u < g.node_count(); ++u) {
        if (d1[static_cast<std::size_t>(u)] > best) {
            best = d1[static_cast<std::size_t>(u)];
            far2 = u;
        }
    }
    return {far2, best};
}

} // namespace

NodeId diameter(const Graph& g) {
    if (g.node_count() == 0) throw InvalidParameterError("diameter of empty graph");
    if (g.node_count() <= 10000) {
        NodeId best = 0;
        for (NodeId u = 0; u < g.node_count(); ++u) best = std::max(best, eccentricity(g, u));
        return best;
    }
    return double_sweep(g).second;
}

NodeId peripheral_node(const Graph& g) {
    if (g.node_count() == 0) throw InvalidParameterError("peripheral node of empty graph");
    if (g.node_count() <= 10000) {
        NodeId best_node = 0, best_ecc = -1;
        for (NodeId u = 0; u < g.node_count(); ++u) {
            NodeId e = eccentricity(g, u);
            if (e > best_ecc) {
                best_ecc = e;
                best_node = u;
            }
        }
        return best_node;
    }
    return double_sweep(g).first;
}

double average_degree(const Graph& g) {
    if (g.node_count() == 0) throw InvalidParameterError("average degree of empty graph");
    return 2.0 * static_cast<double>(g.edge_count()) / static_cast<double>(g.node_count());
}

double local_clustering(const Graph& g, NodeId u) {
    auto nb = g.neighbors(u);
    auto d = static_cast<std::int64_t>(nb.size());
    if (d < 2) return 0.0;
    std::int64_t links = 0;
    for (std::size_t i = 0; i < nb.size(); ++i)
        for (std::size_t j = i + 1; j < nb.size(); ++j)
            if (g.has_edge(nb[i], nb[j])) ++links;
    return 2.0 * static_cast<double>(links) / static_cast<double>(d * (d - 1));
}

double average_clustering(const Graph& g) {
    if (g.node_count() == 0) throw InvalidParameterError("clustering of empty graph");
    double sum = 0.0;
    for (NodeId u = 0; u < g.node_count(); ++u) sum += local_clustering(g, u);
    return sum / static_cast<double>(g.node_count());
}

double average_shortest_path(const Graph& g) {
    if (g.node_count() > 2000)
        throw InvalidParameterError("average_shortest_path supported only for n <= 2000");
    if (g.node_count() < 2) throw InvalidParameterError("needs at least two nodes");
    double total = 0.0;
    std::int64_t pairs = 0;
    for (NodeId u = 0; u < g.node_count(); ++u) {
        auto dist = bfs_distances(g, u);
        for (NodeId v = u + 1; v < g.node_count(); ++v) {
            NodeId d = dist[static_cast<std::size_t>(v)];
            if (d < 0) throw NotIrreducibleError("graph is disconnected");
            total += d;
            ++pairs;
        }
    }
    return total / static_cast<double>(pairs);
}

} // namespace wesample
