#include "wesample/walkers.hpp"

#include <cmath>
#include <limits>

#include "wesample/errors.hpp"

namespace wesample {

StepOutcome step_observed(AccessOracle& oracle, const TransitionConfig& design, NodeId current,
                          Rng& rng) {
    auto nb = oracle.neighbors(current);
    if (nb.empty()) throw DeadEndError("walk reached isolated node " + std::to_string(current));
    StepOutcome out;
    out.observed_degree = static_cast<NodeId>(nb.size());
    if (design.lazy && rng.bernoulli(0.5)) {
        out.next = current;
        return out;
    }
    NodeId proposal = nb[rng.index(nb.size())];
    if (design.kind == TransitionKind::Srw) {
        out.next = proposal;
        return out;
    }
    auto du = static_cast<double>(nb.size());
    auto dv = static_cast<double>(oracle.degree(proposal));
    out.next = (dv <= du || rng.uniform01() < du / dv) ? proposal : current;
    return out;
}

NodeId step(AccessOracle& oracle, const TransitionConfig& design, NodeId current, Rng& rng) {
    return step_observed(oracle, design, current, rng).next;
}

WalkTrace forward_walk(AccessOracle& oracle, const TransitionConfig& design, NodeId start, long t,
                       Rng& rng) {
    if (t < 0) throw InvalidParameterError("walk length must be non-negative");
    WalkTrace trace;
    trace.start = start;
    trace.design = design;
    trace.steps.reserve(static_cast<std::size_t>(t) + 1);
    trace.steps.push_back(start);
    NodeId current = start;
    for (long i = 0; i < t; ++i) {
        current = step(oracle, design, current, rng);
        trace.steps.push_back(current);
    }
    return trace;
}

namespace {

std::pair<double, double> mean_and_variance(std::span<const double> xs) {
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    double var = 0.0;
    for (double x : xs) var += (x - mean) * (x - mean);
    if (xs.size() > 1) var /= static_cast<double>(xs.size() - 1);
    return {mean, var};
}

} // namespace

double geweke_z(std::span<const double> chain) {
    if (chain.size() < 10) throw InvalidParameterError("geweke_z needs a chain of length >= 10");
    std::size_t na = chain.size() / 10;
    std::size_t nb = chain.size() / 2;
    auto [mean_a, var_a] = mean_and_variance(chain.subspan(0, na));
    auto [mean_b, var_b] = mean_and_variance(chain.subspan(chain.size() - nb, nb));
    double denom = var_a + var_b;
    if (denom <= 0.0)
        return mean_a == mean_b ? 0.0 : std::numeric_limits<double>::infinity();
    return std::abs(mean_a - mean_b) / std::sqrt(denom);
}

SampleRecord classic_sample_many_short_runs(AccessOracle& oracle, const TransitionConfig& design,
                                            NodeId start, const GewekeOptions& options, Rng& rng,
                                            const std::vector<double>* attribute) {
    std::vector<double> chain;
    chain.reserve(static_cast<std::size_t>(options.min_length) + 64);
    NodeId current = start;
    long steps = 0;
    while (true) {
        auto outcome = step_observed(oracle, design, current, rng);
        // The attribute of a node is observed when the walk leaves it, so the
        // chain covers v_0 .. v_{steps-1} and costs no extra queries.
        chain.push_back(attribute ? (*attribute)[static_cast<std::size_t>(current)]
                                  : static_cast<double>(outcome.observed_degree));
        current = outcome.next;
        ++steps;
        if (steps >= options.min_length && steps % options.stride == 0) {
            if (geweke_z(chain) <= options.threshold) break;
        }
        if (steps >= options.max_steps)
            throw DegenerateChainError("Geweke monitor did not converge within max_steps");
    }
    SampleRecord rec;
    rec.node = current;
    rec.accepted = true;
    rec.walk_length = steps;
    rec.unique_queries = oracle.ledger().unique_nodes_queried;
    rec.total_queries = oracle.ledger().total_queries;
    return rec;
}

std::vector<SampleRecord> classic_sample_one_long_run(AccessOracle& oracle,
                                                      const TransitionConfig& design, NodeId start,
                                                      long burn_in, long n_samples, Rng& rng) {
    if (burn_in < 0 || n_samples < 0) throw InvalidParameterError("negative length");
    std::vector<SampleRecord> out;
    out.reserve(static_cast<std::size_t>(n_samples));
    NodeId current = start;
    for (long i = 0; i < burn_in; ++i) current = step(oracle, design, current, rng);
    for (long i = 0; i < n_samples; ++i) {
        current = step(oracle, design, current, rng);
        SampleRecord rec;
        rec.sample_id = i;
        rec.node = current;
        rec.accepted = true;
        rec.walk_length = burn_in + i + 1;
        rec.unique_queries = oracle.ledger().unique_nodes_queried;
        rec.total_queries = oracle.ledger().total_queries;
        out.push_back(rec);
    }
    return out;
}

std::vector<double> autocorrelations(std::span<const double> chain, long max_lag) {
    if (chain.size() < 2) throw InvalidParameterError("chain too short for autocorrelation");
    auto n = static_cast<long>(chain.size());
    auto [mean, var] = mean_and_variance(chain);
    std::vector<double> rho;
    rho.reserve(static_cast<std::size_t>(max_lag));
    if (var <= 0.0) return std::vector<double>(static_cast<std::size_t>(max_lag), 0.0);
    double c0 = var * static_cast<double>(n - 1);
    for (long k = 1; k <= max_lag && k < n; ++k) {
        double ck = 0.0;
        for (long i = 0; i + k < n; ++i)
            ck += (chain[static_cast<std::size_t>(i)] - mean) *
                  (chain[static_cast<std::size_t>(i + k)] - mean);
        rho.push_back(ck / c0);
    }
    return rho;
}

double effective_sample_size(long h, std::span<const double> rho) {
    if (h <= 0) throw InvalidParameterError("sample size must be positive");
    double sum = 0.0;
    for (double r : rho) {
        if (r <= 0.0) break; // initial-positive-sequence truncation
        sum += r;
    }
    double denom = 1.0 + 2.0 * sum;
    if (denom <= 0.0) throw DegenerateChainError("non-positive autocorrelation denominator");
    return static_cast<double>(h) / denom;
}

} // namespace wesample
