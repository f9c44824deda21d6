#include "wesample/prob_estimate.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "wesample/errors.hpp"

namespace wesample {

void HistoricHits::record_walk(const WalkTrace& trace) {
    if (trace.steps.empty()) throw InvalidParameterError("empty walk trace");
    if (by_step_.size() < trace.steps.size()) by_step_.resize(trace.steps.size());
    for (std::size_t i = 0; i < trace.steps.size(); ++i)
        ++by_step_[i][trace.steps[i]];
    ++n_hw_;
}

long HistoricHits::count(NodeId u, long t) const {
    if (t < 0 || t >= static_cast<long>(by_step_.size())) return 0;
    const auto& level = by_step_[static_cast<std::size_t>(t)];
    auto it = level.find(u);
    return it == level.end() ? 0 : it->second;
}

double CrawlFrontier::exact_probability(NodeId u, long t) const {
    if (t < 0 || t > depth())
        throw InvalidParameterError("crawl frontier has no level " + std::to_string(t));
    const auto& level = levels_[static_cast<std::size_t>(t)];
    auto it = level.find(u);
    return it == level.end() ? 0.0 : it->second;
}

namespace {

// Transition row of u computed from oracle answers only.
TransitionRow oracle_row(AccessOracle& oracle, const TransitionConfig& design, NodeId u) {
    auto nb = oracle.neighbors(u);
    TransitionRow row;
    if (design.kind == TransitionKind::Srw) {
        row = srw_row(u, nb);
    } else {
        std::vector<NodeId> degs;
        degs.reserve(nb.size());
        for (NodeId v : nb) degs.push_back(oracle.degree(v));
        row = mhrw_row(u, nb, degs);
    }
    if (design.lazy) row = lazy_row(std::move(row), u);
    return row;
}

} // namespace

CrawlFrontier initial_crawl(AccessOracle& oracle, const TransitionConfig& design, NodeId w,
                            long h) {
    if (h < 0) throw InvalidParameterError("crawl depth must be non-negative");
    CrawlFrontier frontier;
    frontier.set_root(w);
    for (long t = 1; t <= h; ++t) {
        std::unordered_map<NodeId, double> next;
        for (const auto& [u, p] : frontier.level(t - 1)) {
            for (const auto& [v, q] : oracle_row(oracle, design, u).probs)
                next[v] += p * q;
        }
        frontier.push_level(std::move(next));
    }
    return frontier;
}

namespace {

// T(v -> u) computed from oracle answers; u_degree is |N(u)| as already
// observed. For MHRW the self-transition needs the full row of u.
double oracle_transition_into(AccessOracle& oracle, const TransitionConfig& design, NodeId v,
                              NodeId u, std::span<const NodeId> u_neighbors) {
    double base;
    if (v == u) {
        base = 0.0;
        if (design.kind == TransitionKind::Mhrw) {
            double du = static_cast<double>(u_neighbors.size());
            double off = 0.0;
            for (NodeId x : u_neighbors)
                off += (1.0 / du) * std::min(1.0, du / static_cast<double>(oracle.degree(x)));
            base = std::max(0.0, 1.0 - off);
        }
        return design.lazy ? 0.5 + 0.5 * base : base;
    }
    auto vn = oracle.neighbors(v);
    if (!std::binary_search(vn.begin(), vn.end(), u)) return 0.0;
    double dv = static_cast<double>(vn.size());
    if (design.kind == TransitionKind::Srw)
        base = 1.0 / dv;
    else
        base = (1.0 / dv) * std::min(1.0, dv / static_cast<double>(u_neighbors.size()));
    return design.lazy ? 0.5 * base : base;
}

} // namespace

double backward_estimate_run(AccessOracle& oracle, const TransitionConfig& design, NodeId u,
                             NodeId w, long t, const BackwardOptions& options, Rng& rng,
                             long* steps_taken) {
    if (t < 0) throw InvalidParameterError("walk length must be non-negative");
    if (options.epsilon <= 0.0 || options.epsilon > 1.0)
        throw InvalidParameterError("epsilon must be in (0, 1]");
    double weight = 1.0;
    NodeId current = u;
    long remaining = t;
    while (true) {
        if (options.frontier && remaining <= options.frontier->depth())
            return weight * options.frontier->exact_probability(current, remaining);
        if (remaining == 0) return current == w ? weight : 0.0;

        auto nb = oracle.neighbors(current);
        if (nb.empty()) throw DeadEndError("backward walk reached isolated node");
        // Backward support: every node with a positive transition into the
        // current one, i.e. the neighbors plus the current node itself when
        // the design can self-loop.
        std::vector<NodeId> support(nb.begin(), nb.end());
        if (design.self_loop_possible()) support.push_back(current);

        std::size_t pick;
        double selection_prob;
        long n_hw = options.hits ? options.hits->total_walks() : 0;
        if (options.epsilon >= 1.0 || n_hw == 0) {
            pick = rng.index(support.size());
            selection_prob = 1.0 / static_cast<double>(support.size());
        } else {
            std::vector<double> pi(support.size());
            double total = 0.0;
            double floor = options.epsilon / static_cast<double>(support.size());
            for (std::size_t i = 0; i < support.size(); ++i) {
                double hit_frac = static_cast<double>(options.hits->count(support[i], remaining - 1)) /
                                  static_cast<double>(n_hw);
                pi[i] = floor + (1.0 - options.epsilon) * hit_frac;
                total += pi[i];
            }
            // The printed weights sum to epsilon plus the fraction of walks
            // passing through the support, which is not 1 in general; the
            // selection distribution is their renormalization.
            pick = rng.discrete(pi);
            selection_prob = pi[pick] / total;
        }

        NodeId chosen = support[pick];
        double trans = oracle_transition_into(oracle, design, chosen, current, nb);
        if (steps_taken) ++*steps_taken;
        if (trans <= 0.0) return 0.0;
        weight *= trans / selection_prob;
        current = chosen;
        --remaining;
    }
}

double unbiased_estimate(AccessOracle& oracle, const TransitionConfig& design, NodeId u, NodeId w,
                         long t, Rng& rng) {
    BackwardOptions options;
    return backward_estimate_run(oracle, design, u, w, t, options, rng);
}

double ws_bw(AccessOracle& oracle, const TransitionConfig& design, NodeId u, NodeId w, long t,
             double epsilon, const HistoricHits& hits, Rng& rng) {
    BackwardOptions options;
    options.epsilon = epsilon;
    options.hits = &hits;
    return backward_estimate_run(oracle, design, u, w, t, options, rng);
}

void ProbEstimate::add(double value) {
    estimates.push_back(value);
    ++runs;
    double n = static_cast<double>(runs);
    double delta = value - mean;
    mean += delta / n;
    m2_ += delta * (value - mean);
    variance = runs > 1 ? m2_ / (n - 1.0) : 0.0;
}

std::map<NodeId, ProbEstimate> estimate(AccessOracle& oracle, const TransitionConfig& design,
                                        NodeId w, long t, long h,
                                        const std::vector<WalkTrace>& forward_walks,
                                        const EstimateOptions& options, Rng& rng) {
    std::set<NodeId> candidates;
    HistoricHits hits;
    for (const auto& trace : forward_walks) {
        if (static_cast<long>(trace.steps.size()) != t + 1)
            throw InvalidParameterError("forward walk length does not match t");
        candidates.insert(trace.steps.back());
        hits.record_walk(trace);
    }

    std::map<NodeId, ProbEstimate> out;
    for (NodeId u : candidates) {
        ProbEstimate pe;
        pe.node = u;
        pe.t = t;
        out.emplace(u, pe);
    }
    if (candidates.empty()) return out;

    BackwardOptions run_opts;
    run_opts.epsilon = options.weighted ? options.epsilon : 1.0;
    run_opts.hits = options.weighted ? &hits : nullptr;

    bool exhausted = false;
    CrawlFrontier frontier;
    try {
        if (options.use_crawl && h > 0) frontier = initial_crawl(oracle, design, w, h);
        if (options.use_crawl) run_opts.frontier = &frontier;

        if (run_opts.frontier && t <= frontier.depth()) {
            for (auto& [u, pe] : out) {
                pe.mean = frontier.exact_probability(u, t);
                pe.exact = true;
            }
            return out;
        }

        std::vector<NodeId> order(candidates.begin(), candidates.end());
        for (NodeId u : order)
            for (long r = 0; r < options.initial_runs; ++r)
                out[u].add(backward_estimate_run(oracle, design, u, w, t, run_opts, rng));

        long used = options.initial_runs * static_cast<long>(order.size());
        std::vector<double> variances(order.size());
        for (long r = used; r < options.total_runs; ++r) {
            double total = 0.0;
            for (std::size_t i = 0; i < order.size(); ++i) {
                variances[i] = out[order[i]].variance;
                total += variances[i];
            }
            std::size_t pick = total > 0.0 ? rng.discrete(variances) : rng.index(order.size());
            NodeId u = order[pick];
            out[u].add(backward_estimate_run(oracle, design, u, w, t, run_opts, rng));
        }
    } catch (const BudgetExhaustedError&) {
        exhausted = true;
    }
    if (exhausted)
        for (auto& [u, pe] : out) pe.low_confidence = true;
    return out;
}

} // namespace wesample
