#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace wesample {

using NodeId = std::int32_t;

// Immutable undirected graph. Node ids are dense 0..n-1; original string ids
// from a loaded edge list are kept in a side table. Adjacency lists are
// sorted, self-loop free and deduplicated.
class Graph {
public:
    Graph() = default;

    // Edges may contain duplicates, self-loops and both orientations; they
    // are normalized away.
    static Graph from_edges(NodeId node_count, std::vector<std::pair<NodeId, NodeId>> edges);

    NodeId node_count() const { return node_count_; }
    std::int64_t edge_count() const { return edge_count_; }

    std::span<const NodeId> neighbors(NodeId u) const {
        check_node(u);
        return {adjacency_.data() + offsets_[u], adjacency_.data() + offsets_[u + 1]};
    }

    NodeId degree(NodeId u) const {
        check_node(u);
        return static_cast<NodeId>(offsets_[u + 1] - offsets_[u]);
    }

    NodeId max_degree() const;
    NodeId min_degree() const;

    bool has_edge(NodeId u, NodeId v) const;

    // Named per-node numeric attributes (e.g. self-description length, stars).
    void set_attribute(const std::string& name, std::vector<double> values);
    bool has_attribute(const std::string& name) const { return attributes_.count(name) > 0; }
    std::span<const double> attribute(const std::string& name) const;
    std::vector<std::string> attribute_names() const;

    void set_external_ids(std::vector<std::string> ids) { external_ids_ = std::move(ids); }
    const std::vector<std::string>& external_ids() const { return external_ids_; }

private:
    void check_node(NodeId u) const;

    NodeId node_count_ = 0;
    std::int64_t edge_count_ = 0;
    std::vector<std::int64_t> offsets_{0};
    std::vector<NodeId> adjacency_;
    std::map<std::string, std::vector<double>> attributes_;
    std::vector<std::string> external_ids_;
};

// Breadth-first distances from a start node; unreachable nodes get -1.
std::vector<NodeId> bfs_distances(const Graph& g, NodeId start);

bool is_connected(const Graph& g);

NodeId eccentricity(const Graph& g, NodeId start);

// Exact diameter by all-pairs BFS for n <= 10^4; double-sweep lower bound
// for larger graphs.
NodeId diameter(const Graph& g);

// A node of maximum eccentricity (exact for n <= 10^4, double-sweep endpoint
// otherwise).
NodeId peripheral_node(const Graph& g);

double average_degree(const Graph& g);
double local_clustering(const Graph& g, NodeId u);
double average_clustering(const Graph& g);

// Exact mean shortest-path length over connected pairs; only supported for
// n <= 2000.
double average_shortest_path(const Graph& g);

} // namespace wesample
