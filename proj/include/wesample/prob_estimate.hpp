#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

#include "wesample/oracle.hpp"
#include "wesample/rng.hpp"
#include "wesample/transition.hpp"
#include "wesample/walkers.hpp"

namespace wesample {

// Hit counts n_{u,t} over completed forward walks from a common start node,
// used to bias the backward neighbor selection toward nodes that forward
// walks actually reach. The walk currently being estimated is not included.
class HistoricHits {
public:
    void record_walk(const WalkTrace& trace);
    long count(NodeId u, long t) const;
    long total_walks() const { return n_hw_; }

private:
    std::vector<std::unordered_map<NodeId, long>> by_step_;
    long n_hw_ = 0;
};

// Exact sampling probabilities p_t(v) for t <= depth over the crawled
// neighborhood of the start node. Nodes absent from a level have exactly
// zero probability at that step, so lookups are exact for every node.
class CrawlFrontier {
public:
    CrawlFrontier() { levels_.push_back({}); }

    long depth() const { return static_cast<long>(levels_.size()) - 1; }

    // Exact p_t(u); only valid for t <= depth().
    double exact_probability(NodeId u, long t) const;

    // Internal: used by initial_crawl.
    void push_level(std::unordered_map<NodeId, double> level) { levels_.push_back(std::move(level)); }
    void set_root(NodeId w) { levels_[0] = {{w, 1.0}}; }
    const std::unordered_map<NodeId, double>& level(long t) const {
        return levels_[static_cast<std::size_t>(t)];
    }

private:
    std::vector<std::unordered_map<NodeId, double>> levels_; // levels_[t]: p_t over the ball
};

// Crawl the h-hop neighborhood of w and compute exact p_t for t <= h by
// forward recursion. SRW needs neighbor lists within radius h-1; MHRW rows
// additionally need the degrees of nodes at radius h, so those get queried
// too. All queries go through (and are billed to) the oracle.
CrawlFrontier initial_crawl(AccessOracle& oracle, const TransitionConfig& design, NodeId w, long h);

struct BackwardOptions {
    // Minimum-selection-probability floor for weighted sampling; 1.0 (or a
    // null hits pointer) collapses the selection to uniform.
    double epsilon = 1.0;
    const HistoricHits* hits = nullptr;
    const CrawlFrontier* frontier = nullptr; // early exit on crawled levels
};

// One backward-walk estimate of p_t(u) for a walk of length t started at w.
// Uniform selection gives the plain unbiased estimator; weighted selection
// applies the importance correction T(v -> u) / pi_v so the estimate stays
// unbiased under any selection distribution. steps_taken, when given, is
// incremented by the number of backward transitions performed.
double backward_estimate_run(AccessOracle& oracle, const TransitionConfig& design, NodeId u,
                             NodeId w, long t, const BackwardOptions& options, Rng& rng,
                             long* steps_taken = nullptr);

// Plain recursive estimator: uniform backward selection, no crawl shortcut.
double unbiased_estimate(AccessOracle& oracle, const TransitionConfig& design, NodeId u, NodeId w,
                         long t, Rng& rng);

// Weighted-sampling backward estimator with minimum selection probability
// epsilon and historic-hit weights.
double ws_bw(AccessOracle& oracle, const TransitionConfig& design, NodeId u, NodeId w, long t,
             double epsilon, const HistoricHits& hits, Rng& rng);

struct ProbEstimate {
    NodeId node = -1;
    long t = 0;
    std::vector<double> estimates;
    double mean = 0.0;
    double variance = 0.0; // sample variance of single-run values
    long runs = 0;
    bool exact = false;          // crawl short-circuit at t <= depth
    bool low_confidence = false; // budget ran out before the plan completed

    void add(double value);

private:
    double m2_ = 0.0; // Welford accumulator
};

struct EstimateOptions {
    long initial_runs = 5;      // per-candidate batch before reallocation
    long total_runs = 0;        // overall backward-run budget (0: initial only)
    double epsilon = 0.1;
    bool weighted = true;
    bool use_crawl = true;
};

// Algorithm-style batch estimation: candidates are the endpoints of the
// forward walks; every candidate gets an initial batch of runs and the
// remaining run budget is allocated randomly proportional to current sample
// variance. On budget exhaustion the partial estimates come back flagged.
std::map<NodeId, ProbEstimate> estimate(AccessOracle& oracle, const TransitionConfig& design,
                                        NodeId w, long t, long h,
                                        const std::vector<WalkTrace>& forward_walks,
                                        const EstimateOptions& options, Rng& rng);

} // namespace wesample
