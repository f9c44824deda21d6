#include "wesample/oracle.hpp"

#include <algorithm>

#include "wesample/errors.hpp"

namespace wesample {

namespace {

// Uniform k-subset, kept sorted for stable output.
std::vector<NodeId> sample_subset(std::span<const NodeId> full, NodeId k, Rng& rng) {
    std::vector<NodeId> pool(full.begin(), full.end());
    auto n = static_cast<std::size_t>(pool.size());
    auto kk = static_cast<std::size_t>(k);
    for (std::size_t i = 0; i < kk; ++i) {
        std::size_t j = i + rng.index(n - i);
        std::swap(pool[i], pool[j]);
    }
    pool.resize(kk);
    std::sort(pool.begin(), pool.end());
    return pool;
}

} // namespace

void AccessOracle::bill(NodeId u) {
    if (u < 0 || u >= graph_->node_count())
        throw InvalidNodeError("unknown node id " + std::to_string(u));
    auto it = visited_.find(u);
    if (it == visited_.end()) {
        if (ledger_.budget && ledger_.unique_nodes_queried + 1 > *ledger_.budget)
            throw BudgetExhaustedError("unique-node query budget exhausted");
        visited_.emplace(u, true);
        ++ledger_.unique_nodes_queried;
    }
    ++ledger_.total_queries;
}

std::vector<NodeId> AccessOracle::restricted_answer(NodeId u) {
    auto full = graph_->neighbors(u);
    if (std::holds_alternative<NoRestriction>(restriction_))
        return {full.begin(), full.end()};
    if (auto* rk = std::get_if<RandomK>(&restriction_)) {
        if (static_cast<NodeId>(full.size()) <= rk->k) return {full.begin(), full.end()};
        return sample_subset(full, rk->k, rng_);
    }
    NodeId k = std::holds_alternative<FixedK>(restriction_) ? std::get<FixedK>(restriction_).k
                                                            : std::get<Cap>(restriction_).l;
    if (static_cast<NodeId>(full.size()) <= k) return {full.begin(), full.end()};
    // Per-node seeded draw so the same subset is returned on every invocation.
    Rng node_rng(seed_, 0xf1dedULL ^ static_cast<std::uint64_t>(u));
    return sample_subset(full, k, node_rng);
}

std::vector<NodeId> AccessOracle::neighbors(NodeId u) {
    if (std::holds_alternative<RandomK>(restriction_)) {
        bill(u);
        return restricted_answer(u);
    }
    auto it = cache_.find(u);
    if (it != cache_.end()) {
        ++ledger_.total_queries;
        return it->second;
    }
    bill(u);
    auto answer = restricted_answer(u);
    cache_.emplace(u, answer);
    return answer;
}

std::vector<NodeId> AccessOracle::bidirectional_neighbors(NodeId u) {
    auto listed = neighbors(u);
    std::vector<NodeId> mutual;
    mutual.reserve(listed.size());
    for (NodeId v : listed) {
        auto back = neighbors(v);
        if (std::binary_search(back.begin(), back.end(), u)) mutual.push_back(v);
    }
    return mutual;
}

} // namespace wesample
