#include "wesample/we_sampler.hpp"

#include <algorithm>
#include <cmath>

#include "wesample/errors.hpp"
#include "wesample/walkers.hpp"

namespace wesample {

long walk_length_policy(long diameter_bound) {
    if (diameter_bound < 1) throw InvalidParameterError("diameter bound must be >= 1");
    return 2 * diameter_bound + 1;
}

double percentile(std::vector<double> values, double pct) {
    if (values.empty()) throw InvalidParameterError("percentile of empty set");
    if (pct < 0.0 || pct > 100.0) throw InvalidParameterError("percentile out of range");
    std::sort(values.begin(), values.end());
    double pos = (static_cast<double>(values.size()) - 1.0) * pct / 100.0;
    auto lo = static_cast<std::size_t>(pos);
    if (lo + 1 >= values.size()) return values.back();
    double frac = pos - static_cast<double>(lo);
    return values[lo] + frac * (values[lo + 1] - values[lo]);
}

double bootstrap_scaling_factor(const std::vector<double>& pool, double pct) {
    if (pool.empty()) throw InvalidParameterError("scaling factor requested before any estimate");
    return percentile(pool, pct);
}

double accept_probability(double p_est, double q_unnormalized, double sigma) {
    if (p_est <= 0.0) throw InvalidParameterError("acceptance needs a positive estimate");
    if (sigma <= 0.0) throw InvalidParameterError("scaling factor must be positive");
    return std::min(1.0, sigma * q_unnormalized / p_est);
}

WalkEstimateSampler::WalkEstimateSampler(AccessOracle& oracle, const TransitionConfig& design,
                                         NodeId start, const WeOptions& options,
                                         std::uint64_t seed)
    : oracle_(oracle), design_(design), start_(start), options_(options), rng_(seed, 0x3e5ULL),
      sigma_(options.percentile) {
    if (options_.walk_length < 1) throw InvalidParameterError("walk length must be >= 1");
    if (options_.est_runs < 1) throw InvalidParameterError("est_runs must be >= 1");
    report_.method = "we";
}

void WalkEstimateSampler::ensure_crawled() {
    if (crawled_) return;
    crawled_ = true;
    bool use_crawl =
        options_.variant == WeVariant::Crawl || options_.variant == WeVariant::Full;
    if (use_crawl && options_.crawl_depth > 0)
        frontier_ = initial_crawl(oracle_, design_, start_, options_.crawl_depth);
}

double WalkEstimateSampler::target_weight(NodeId v) {
    TargetKind t = options_.target;
    if (t == TargetKind::Stationary)
        t = design_.kind == TransitionKind::Srw ? TargetKind::DegreeProportional
                                                : TargetKind::Uniform;
    if (t == TargetKind::Uniform) return 1.0;
    return static_cast<double>(oracle_.degree(v));
}

double WalkEstimateSampler::estimate_candidate(NodeId v) {
    BackwardOptions opts;
    bool weighted =
        options_.variant == WeVariant::Weighted || options_.variant == WeVariant::Full;
    bool use_crawl = options_.variant == WeVariant::Crawl || options_.variant == WeVariant::Full;
    opts.epsilon = weighted ? options_.epsilon : 1.0;
    opts.hits = weighted ? &hits_ : nullptr;
    opts.frontier = use_crawl && frontier_.depth() > 0 ? &frontier_ : nullptr;

    double sum = 0.0;
    for (long r = 0; r < options_.est_runs; ++r)
        sum += backward_estimate_run(oracle_, design_, v, start_, options_.walk_length, opts, rng_,
                                     &walk_steps_);
    return sum / static_cast<double>(options_.est_runs);
}

bool WalkEstimateSampler::sample_one(std::vector<SampleRecord>& records) {
    ensure_crawled();
    try {
        for (long attempt = 0; attempt < options_.max_attempts_per_sample; ++attempt) {
            WalkTrace trace = forward_walk(oracle_, design_, start_, options_.walk_length, rng_);
            walk_steps_ += options_.walk_length;
            NodeId v = trace.steps.back();

            double p_est = estimate_candidate(v);
            hits_.record_walk(trace); // after estimation: the walk under
                                      // estimation is not its own evidence
            double q = target_weight(v);
            ++report_.candidates;

            SampleRecord rec;
            rec.sample_id = next_id_++;
            rec.node = v;
            rec.walk_length = options_.walk_length;
            rec.p_est = p_est;

            if (p_est > 0.0) sigma_.observe(p_est / q);
            else ++report_.zero_estimates;

            bool warmup = static_cast<long>(sigma_.pool_size()) <= options_.warmup_candidates ||
                          !sigma_.ready();
            if (warmup || p_est <= 0.0) {
                rec.beta = 0.0;
            } else {
                double sigma = sigma_.current();
                double raw = sigma * q / p_est;
                if (raw > 1.0) ++report_.clipped_beta;
                rec.beta = std::min(1.0, raw);
                rec.accepted = rng_.bernoulli(rec.beta);
            }
            rec.unique_queries = oracle_.ledger().unique_nodes_queried;
            rec.total_queries = oracle_.ledger().total_queries;
            records.push_back(rec);
            if (rec.accepted) {
                ++report_.samples_accepted;
                return true;
            }
        }
        throw DegenerateChainError("no candidate accepted within max_attempts_per_sample");
    } catch (const BudgetExhaustedError&) {
        report_.budget_exhausted = true;
        return false;
    }
}

std::vector<SampleRecord> WalkEstimateSampler::sample_batch(long n_samples) {
    if (n_samples < 0) throw InvalidParameterError("negative sample count");
    std::vector<SampleRecord> records;
    report_.samples_requested = n_samples;
    try {
        ensure_crawled();
    } catch (const BudgetExhaustedError&) {
        report_.budget_exhausted = true;
    }
    if (!report_.budget_exhausted)
        for (long i = 0; i < n_samples; ++i)
            if (!sample_one(records)) break;
    report_.unique_queries = oracle_.ledger().unique_nodes_queried;
    report_.total_queries = oracle_.ledger().total_queries;
    report_.walk_steps = walk_steps_;
    return records;
}

} // namespace wesample
