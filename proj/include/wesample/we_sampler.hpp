#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "wesample/oracle.hpp"
#include "wesample/prob_estimate.hpp"
#include "wesample/records.hpp"
#include "wesample/rng.hpp"
#include "wesample/transition.hpp"

namespace wesample {

// Conservative short-walk length: two times the diameter bound, plus one.
long walk_length_policy(long diameter_bound);

// Empirical percentile with linear interpolation between order statistics
// (position (n-1) * p/100).
double percentile(std::vector<double> values, double pct);

// 10th-percentile bootstrap approximation of min_v p(v)/q(v) over the
// estimates observed so far.
double bootstrap_scaling_factor(const std::vector<double>& pool, double pct = 10.0);

// Acceptance probability min(1, sigma * q(u) / p_est) with unnormalized q.
// Values above 1 are clipped (a counted bias source).
double accept_probability(double p_est, double q_unnormalized, double sigma);

// Pool of observed p/q ratios and the current scaling factor derived from it.
class ScalingFactor {
public:
    explicit ScalingFactor(double pct = 10.0) : pct_(pct) {}
    void observe(double ratio) { pool_.push_back(ratio); }
    bool ready() const { return !pool_.empty(); }
    std::size_t pool_size() const { return pool_.size(); }
    double current() const { return bootstrap_scaling_factor(pool_, pct_); }

private:
    std::vector<double> pool_;
    double pct_;
};

enum class WeVariant {
    None,     // plain backward estimation, no crawl, uniform selection
    Crawl,    // initial crawling only
    Weighted, // weighted backward sampling only
    Full,     // both heuristics
};

enum class TargetKind {
    Stationary, // the input design's stationary distribution
    Uniform,
    DegreeProportional,
};

struct WeOptions {
    long walk_length = 0;
    WeVariant variant = WeVariant::Full;
    TargetKind target = TargetKind::Stationary;
    double epsilon = 0.1;
    long crawl_depth = 2;
    long est_runs = 20;          // backward runs per candidate
    double percentile = 10.0;
    long warmup_candidates = 10; // pool size before acceptance decisions start
    long max_attempts_per_sample = 1000000;
};

// WALK-ESTIMATE over a restricted-access graph: a short forward walk to a
// candidate, a backward estimate of its sampling probability, then
// acceptance-rejection against the target distribution. The crawl frontier,
// historic hits and scaling-factor pool are shared across the whole batch.
class WalkEstimateSampler {
public:
    WalkEstimateSampler(AccessOracle& oracle, const TransitionConfig& design, NodeId start,
                        const WeOptions& options, std::uint64_t seed);

    // Runs forward walks until one candidate is accepted; returns every
    // candidate record produced on the way (the accepted one last). Returns
    // false (with partial records) once the budget is exhausted.
    bool sample_one(std::vector<SampleRecord>& records);

    // Repeats sample_one until n samples are accepted or budget runs out.
    std::vector<SampleRecord> sample_batch(long n_samples);

    const ExperimentReport& report() const { return report_; }
    long walk_steps() const { return walk_steps_; }

private:
    double estimate_candidate(NodeId v);
    double target_weight(NodeId v); // unnormalized q(v)
    void ensure_crawled();

    AccessOracle& oracle_;
    TransitionConfig design_;
    NodeId start_;
    WeOptions options_;
    Rng rng_;
    HistoricHits hits_;
    CrawlFrontier frontier_;
    bool crawled_ = false;
    ScalingFactor sigma_;
    ExperimentReport report_;
    long walk_steps_ = 0;
    std::int64_t next_id_ = 0;
};

} // namespace wesample
