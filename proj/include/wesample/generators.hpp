#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "wesample/graph.hpp"

namespace wesample {

// Case-study graph families. All constructors are pure; same parameters (and
// seed) always produce the same graph.

// Single circle of n nodes; diameter floor(n/2).
Graph cycle_graph(NodeId n);

// 2^k nodes labeled by k-bit strings, edges between labels differing in one
// bit; 2^(k-1)*k edges, diameter k.
Graph hypercube_graph(int k);

// Two K_{(n-1)/2} cliques plus one central node with a single edge into each
// clique; n must be odd. Note the resulting diameter is 4 for n >= 5
// (clique node -> gateway -> center -> gateway -> clique node).
Graph barbell_graph(NodeId n);

// Complete binary tree of the given height: 2^(h+1)-1 nodes, diameter 2h.
Graph balanced_tree_graph(int height);

// Preferential attachment starting from a star on m+1 nodes; each subsequent
// node attaches to m distinct existing nodes. Edge count is exactly m*(n-m).
Graph barabasi_albert_graph(NodeId n, NodeId m, std::uint64_t seed);

enum class Symmetrize {
    Intersection, // keep edge only if both orientations appear
    Union,        // keep edge if either orientation appears
};

// Edge-list text format: one edge per line, two whitespace-separated node
// tokens; '#' lines are comments. Duplicate edges collapse, self-loops drop.
Graph load_edge_list(const std::string& path, Symmetrize mode = Symmetrize::Intersection);
Graph parse_edge_list(std::istream& in, Symmetrize mode = Symmetrize::Intersection);

// Optional attribute file: node token, attribute name, numeric value per line.
void load_attributes(Graph& g, const std::string& path);

void write_edge_list(const Graph& g, std::ostream& out);

} // namespace wesample
