#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wesample/graph.hpp"
#include "wesample/records.hpp"
#include "wesample/walkers.hpp"
#include "wesample/we_sampler.hpp"

namespace wesample {

// Shortest-repeating float formatting is not stable across libcs; %.17g is,
// and reruns must produce byte-identical CSVs.
std::string fmt_double(double x);

void write_text_atomic(const std::string& path, const std::string& content);

// One sampling method under a common interface: the WALK-ESTIMATE variants
// plus the classic Geweke-monitored burn-in samplers.
struct MethodOptions {
    std::string method = "we"; // we | we-none | we-crawl | we-weighted | srw | mhrw
    TransitionConfig design;
    TargetKind target = TargetKind::Stationary;
    long walk_length = 0;
    double epsilon = 0.1;
    long crawl_depth = 2;
    long est_runs = 20;
    double percentile = 10.0;
    long warmup_candidates = 10;
    GewekeOptions geweke;
};

bool is_we_method(const std::string& method);
WeVariant we_variant_of(const std::string& method);

// The target distribution the method is aiming for, as an explicit vector.
std::vector<double> target_distribution(const Graph& g, const MethodOptions& options);

struct MethodResult {
    std::vector<SampleRecord> records; // accepted ones carry accepted = true
    ExperimentReport report;
};

// Runs one campaign: a single oracle (so caching amortizes across chains),
// sampling until n_samples are accepted or the unique-node budget is hit.
MethodResult run_method(const Graph& g, const MethodOptions& options, NodeId start,
                        std::optional<std::int64_t> budget, long n_samples, std::uint64_t seed);

// Pooled sampling-distribution study: repeats fresh-oracle campaigns under a
// fixed per-campaign unique-node budget until target_samples accepted samples
// are pooled, then measures the distance to the method's target distribution.
struct BiasResult {
    std::vector<std::int64_t> counts;
    long samples = 0;
    long campaigns = 0;
    double l_inf = 0.0;
    double kl = 0.0; // computed on the add-one-half smoothed empirical
};

BiasResult bias_study(const Graph& g, const MethodOptions& options, NodeId start,
                      std::int64_t budget_per_campaign, long target_samples, std::uint64_t seed);

// --- batch experiment runner ---

struct GraphSpec {
    std::string model; // cycle | hypercube | barbell | tree | ba | file
    NodeId n = 0;
    NodeId m = 0;
    int k = 0;
    int height = 0;
    std::uint64_t seed = 0;
    std::string path;
    std::string symmetrize = "intersection";
    std::string attributes_path;
};

Graph build_graph(const GraphSpec& spec);

struct ExperimentConfig {
    GraphSpec graph;
    MethodOptions base; // walk_length 0 means the 2*diameter+1 policy
    std::vector<std::string> methods;
    std::vector<std::int64_t> budgets;
    long samples = 100;
    long repetitions = 100;
    std::uint64_t seed = 0;
    NodeId start = -1; // -1: drawn uniformly per repetition
    std::string aggregate = "degree";
    std::string output_dir = "out";
};

ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);
std::uint64_t config_hash(const std::string& json_text);

// Runs every (method, budget) cell for the configured repetitions in a
// worker pool (WESAMPLE_WORKERS), writes one CSV per cell plus a JSON
// summary, and returns true iff all cells completed.
bool run_config(const ExperimentConfig& config, const std::string& raw_json);

} // namespace wesample
