#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <variant>
#include <vector>

#include "wesample/graph.hpp"
#include "wesample/rng.hpp"

namespace wesample {

// Cost accounting for the restricted neighbor-query interface. The primary
// cost measure is unique nodes accessed; total_queries is kept alongside for
// sensitivity analysis (whether re-queries are re-billed by a real API is an
// open question, so both counters are exposed).
struct QueryLedger {
    std::int64_t unique_nodes_queried = 0;
    std::int64_t total_queries = 0;
    std::optional<std::int64_t> budget;

    void merge(const QueryLedger& other) {
        unique_nodes_queried += other.unique_nodes_queried;
        total_queries += other.total_queries;
    }
};

// Neighbor-list restrictions modeled after the access limits real social
// networks place on the neighbors API:
//   none      - full neighbor list
//   random-k  - a fresh uniform k-subset on every invocation
//   fixed-k   - a per-node random k-subset, identical across invocations
//   cap       - at most l neighbors, fixed per node (statistically the same
//               interface as fixed-k)
struct NoRestriction {};
struct RandomK { NodeId k; };
struct FixedK { NodeId k; };
struct Cap { NodeId l; };
using Restriction = std::variant<NoRestriction, RandomK, FixedK, Cap>;

// Simulated local-neighborhood query interface over an immutable graph.
// Single-owner mutable; concurrent chains each own their oracle and merge
// ledgers afterwards.
class AccessOracle {
public:
    explicit AccessOracle(const Graph& graph, Restriction restriction = NoRestriction{},
                          std::uint64_t seed = 0)
        : graph_(&graph), restriction_(restriction), rng_(seed, 0x0eac1eULL), seed_(seed) {}

    // Returns the (possibly restricted) neighbor list. Every call increments
    // total_queries; unique_nodes_queried only increments the first time a
    // node is queried. Fails with BudgetExhaustedError if charging a new
    // unique node would exceed the budget.
    std::vector<NodeId> neighbors(NodeId u);

    // Neighbors v of u with u also listed in N(v); each membership check is
    // billed as a neighbor query on v.
    std::vector<NodeId> bidirectional_neighbors(NodeId u);

    NodeId degree(NodeId u) { return static_cast<NodeId>(neighbors(u).size()); }

    bool seen(NodeId u) const { return visited_.count(u) > 0; }

    const Graph& graph() const { return *graph_; }
    QueryLedger& ledger() { return ledger_; }
    const QueryLedger& ledger() const { return ledger_; }
    void set_budget(std::optional<std::int64_t> b) { ledger_.budget = b; }

private:
    void bill(NodeId u);
    std::vector<NodeId> restricted_answer(NodeId u);

    const Graph* graph_;
    Restriction restriction_;
    QueryLedger ledger_;
    // Deterministic answer cache for none/fixed-k/cap; for random-k only the
    // visited set matters (answers are redrawn per call).
    std::unordered_map<NodeId, std::vector<NodeId>> cache_;
    std::unordered_map<NodeId, bool> visited_;
    Rng rng_;
    std::uint64_t seed_;
};

} // namespace wesample
