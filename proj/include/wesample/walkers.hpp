#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "wesample/oracle.hpp"
#include "wesample/records.hpp"
#include "wesample/rng.hpp"
#include "wesample/transition.hpp"

namespace wesample {

struct WalkTrace {
    NodeId start = -1;
    std::vector<NodeId> steps; // steps[0] == start
    TransitionConfig design;
    std::uint64_t seed = 0;
};

// One forward transition through the restricted interface. MHRW is realized
// as propose-uniform / accept with min(1, d(u)/d(v)), which matches its row
// distribution while querying only the proposed neighbor's degree.
struct StepOutcome {
    NodeId next = -1;
    NodeId observed_degree = 0; // |N(current)| as answered by the oracle
};
StepOutcome step_observed(AccessOracle& oracle, const TransitionConfig& design, NodeId current,
                          Rng& rng);
NodeId step(AccessOracle& oracle, const TransitionConfig& design, NodeId current, Rng& rng);

WalkTrace forward_walk(AccessOracle& oracle, const TransitionConfig& design, NodeId start,
                       long t, Rng& rng);

// |mean(A) - mean(B)| / sqrt(var(A) + var(B)) with window A the first 10% of
// the chain and window B the last 50%. Zero variance in both windows gives 0
// for equal means and +inf otherwise.
double geweke_z(std::span<const double> chain);

struct GewekeOptions {
    double threshold = 0.1;
    long min_length = 50; // monitor starts here
    long stride = 10;     // re-evaluated every this many steps
    long max_steps = 1000000;
};

// Classic burn-in sampler, many-short-runs flavor: walk until the Geweke
// statistic of the running attribute chain (default: degree) drops below the
// threshold, then take the current node as the one sample of this chain.
SampleRecord classic_sample_many_short_runs(AccessOracle& oracle, const TransitionConfig& design,
                                            NodeId start, const GewekeOptions& options, Rng& rng,
                                            const std::vector<double>* attribute = nullptr);

// One-long-run flavor: discard burn_in steps, then record every node visited.
std::vector<SampleRecord> classic_sample_one_long_run(AccessOracle& oracle,
                                                      const TransitionConfig& design, NodeId start,
                                                      long burn_in, long n_samples, Rng& rng);

// Sample autocorrelations rho_1..rho_max_lag of a scalar chain.
std::vector<double> autocorrelations(std::span<const double> chain, long max_lag);

// M = h / (1 + 2 * sum of rho_k), summing until the first non-positive lag.
double effective_sample_size(long h, std::span<const double> rho);

} // namespace wesample
