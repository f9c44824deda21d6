#include "wesample/experiment.hpp"

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "wesample/errors.hpp"
#include "wesample/generators.hpp"
#include "wesample/metrics.hpp"

namespace wesample {

std::string fmt_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_text_atomic(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw InvalidParameterError("cannot write '" + tmp + "'");
        out << content;
    }
    std::filesystem::rename(tmp, path);
}

bool is_we_method(const std::string& method) { return method.rfind("we", 0) == 0; }

WeVariant we_variant_of(const std::string& method) {
    if (method == "we") return WeVariant::Full;
    if (method == "we-none") return WeVariant::None;
    if (method == "we-crawl") return WeVariant::Crawl;
    if (method == "we-weighted") return WeVariant::Weighted;
    throw InvalidParameterError("unknown WE variant '" + method + "'");
}

namespace {

TransitionConfig design_for(const MethodOptions& options) {
    TransitionConfig design = options.design;
    if (options.method == "srw") design.kind = TransitionKind::Srw;
    if (options.method == "mhrw") design.kind = TransitionKind::Mhrw;
    return design;
}

TargetKind effective_target(const MethodOptions& options) {
    if (options.target != TargetKind::Stationary) return options.target;
    return design_for(options).kind == TransitionKind::Srw ? TargetKind::DegreeProportional
                                                           : TargetKind::Uniform;
}

// What the method actually samples from: WE variants correct to their target;
// the classic samplers produce (approximately) their design's stationary
// distribution no matter what reference target a study compares against.
TargetKind actual_sampling_kind(const MethodOptions& options) {
    if (is_we_method(options.method)) return effective_target(options);
    return design_for(options).kind == TransitionKind::Srw ? TargetKind::DegreeProportional
                                                           : TargetKind::Uniform;
}

} // namespace

std::vector<double> target_distribution(const Graph& g, const MethodOptions& options) {
    std::vector<double> q(static_cast<std::size_t>(g.node_count()));
    if (effective_target(options) == TargetKind::Uniform) {
        std::fill(q.begin(), q.end(), 1.0 / static_cast<double>(g.node_count()));
    } else {
        double two_e = 2.0 * static_cast<double>(g.edge_count());
        for (NodeId u = 0; u < g.node_count(); ++u)
            q[static_cast<std::size_t>(u)] = static_cast<double>(g.degree(u)) / two_e;
    }
    return q;
}

MethodResult run_method(const Graph& g, const MethodOptions& options, NodeId start,
                        std::optional<std::int64_t> budget, long n_samples, std::uint64_t seed) {
    MethodResult result;
    result.report.method = options.method;
    result.report.samples_requested = n_samples;
    AccessOracle oracle(g);
    oracle.set_budget(budget);
    TransitionConfig design = design_for(options);

    if (is_we_method(options.method)) {
        WeOptions we;
        we.walk_length = options.walk_length;
        we.variant = we_variant_of(options.method);
        we.target = options.target;
        we.epsilon = options.epsilon;
        we.crawl_depth = options.crawl_depth;
        we.est_runs = options.est_runs;
        we.percentile = options.percentile;
        we.warmup_candidates = options.warmup_candidates;
        WalkEstimateSampler sampler(oracle, design, start, we, seed);
        result.records = sampler.sample_batch(n_samples);
        result.report = sampler.report();
        result.report.method = options.method;
        result.report.samples_requested = n_samples;
        return result;
    }

    if (options.method != "srw" && options.method != "mhrw")
        throw InvalidParameterError("unknown method '" + options.method + "'");
    for (long i = 0; i < n_samples; ++i) {
        Rng rng(seed, static_cast<std::uint64_t>(i) + 1);
        try {
            SampleRecord rec =
                classic_sample_many_short_runs(oracle, design, start, options.geweke, rng);
            rec.sample_id = i;
            result.report.walk_steps += rec.walk_length;
            ++result.report.candidates;
            ++result.report.samples_accepted;
            result.records.push_back(rec);
        } catch (const BudgetExhaustedError&) {
            result.report.budget_exhausted = true;
            break;
        }
    }
    result.report.unique_queries = oracle.ledger().unique_nodes_queried;
    result.report.total_queries = oracle.ledger().total_queries;
    return result;
}

BiasResult bias_study(const Graph& g, const MethodOptions& options, NodeId start,
                      std::int64_t budget_per_campaign, long target_samples, std::uint64_t seed) {
    BiasResult out;
    out.counts.assign(static_cast<std::size_t>(g.node_count()), 0);
    long campaign = 0;
    while (out.samples < target_samples) {
        MethodResult res = run_method(g, options, start, budget_per_campaign, target_samples,
                                      mix_seed(seed, static_cast<std::uint64_t>(campaign)));
        ++campaign;
        for (const auto& rec : res.records)
            if (rec.accepted) {
                ++out.counts[static_cast<std::size_t>(rec.node)];
                ++out.samples;
                if (out.samples >= target_samples) break;
            }
        if (campaign > 1000000)
            throw DegenerateChainError("bias study failed to accumulate samples");
    }
    out.campaigns = campaign;

    std::vector<double> freq(out.counts.size());
    for (std::size_t i = 0; i < out.counts.size(); ++i)
        freq[i] = static_cast<double>(out.counts[i]) / static_cast<double>(out.samples);
    auto q = target_distribution(g, options);
    out.l_inf = distribution_distance(freq, q, DistanceMeasure::LInf);
    auto smoothed = smoothed_distribution(out.counts);
    out.kl = distribution_distance(smoothed, q, DistanceMeasure::KL);
    return out;
}

Graph build_graph(const GraphSpec& spec) {
    Graph g;
    if (spec.model == "cycle") g = cycle_graph(spec.n);
    else if (spec.model == "hypercube") g = hypercube_graph(spec.k);
    else if (spec.model == "barbell") g = barbell_graph(spec.n);
    else if (spec.model == "tree") g = balanced_tree_graph(spec.height);
    else if (spec.model == "ba") g = barabasi_albert_graph(spec.n, spec.m, spec.seed);
    else if (spec.model == "file") {
        g = load_edge_list(spec.path, spec.symmetrize == "union" ? Symmetrize::Union
                                                                 : Symmetrize::Intersection);
    } else {
        throw InvalidParameterError("unknown graph model '" + spec.model + "'");
    }
    if (!spec.attributes_path.empty()) load_attributes(g, spec.attributes_path);
    return g;
}

namespace {

using nlohmann::json;

GraphSpec parse_graph_spec(const json& j) {
    GraphSpec spec;
    spec.model = j.at("model").get<std::string>();
    spec.n = j.value("n", 0);
    spec.m = j.value("m", 0);
    spec.k = j.value("k", 0);
    spec.height = j.value("height", 0);
    spec.seed = j.value("seed", 0ULL);
    spec.path = j.value("path", std::string{});
    spec.symmetrize = j.value("symmetrize", std::string{"intersection"});
    spec.attributes_path = j.value("attributes", std::string{});
    return spec;
}

TargetKind parse_target(const std::string& s) {
    if (s == "stationary") return TargetKind::Stationary;
    if (s == "uniform") return TargetKind::Uniform;
    if (s == "degree") return TargetKind::DegreeProportional;
    throw InvalidParameterError("unknown target '" + s + "'");
}

} // namespace

ExperimentConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw InvalidParameterError(std::string("config parse error: ") + e.what());
    }
    try {
        ExperimentConfig cfg;
        cfg.graph = parse_graph_spec(j.at("graph"));
        cfg.methods = j.at("methods").get<std::vector<std::string>>();
        cfg.budgets = j.at("budgets").get<std::vector<std::int64_t>>();
        cfg.samples = j.value("samples", 100L);
        cfg.repetitions = j.value("repetitions", 100L);
        cfg.seed = j.value("seed", 0ULL);
        cfg.start = j.value("start", -1);
        cfg.aggregate = j.value("aggregate", std::string{"degree"});
        cfg.output_dir = j.value("output_dir", std::string{"out"});

        std::string design = j.value("design", std::string{"srw"});
        cfg.base.design.kind = design == "mhrw" ? TransitionKind::Mhrw : TransitionKind::Srw;
        cfg.base.design.lazy = j.value("lazy", false);
        cfg.base.target = parse_target(j.value("target", std::string{"stationary"}));
        cfg.base.walk_length = j.value("walk_length", 0L);
        cfg.base.epsilon = j.value("epsilon", 0.1);
        cfg.base.crawl_depth = j.value("crawl_depth", 2L);
        cfg.base.est_runs = j.value("est_runs", 20L);
        cfg.base.percentile = j.value("percentile", 10.0);
        cfg.base.warmup_candidates = j.value("warmup", 10L);
        cfg.base.geweke.threshold = j.value("geweke_z", 0.1);
        if (cfg.methods.empty() || cfg.budgets.empty())
            throw InvalidParameterError("config error at /methods: need methods and budgets");
        return cfg;
    } catch (const json::exception& e) {
        throw InvalidParameterError(std::string("config schema error: ") + e.what());
    }
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidParameterError("cannot open config '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::uint64_t config_hash(const std::string& json_text) {
    // FNV-1a over the canonical dump, so formatting differences do not matter.
    std::string canon = nlohmann::json::parse(json_text).dump();
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : canon) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

namespace {

struct CellOutcome {
    std::string csv;
    bool completed = true;      // every repetition produced a report
    bool budget_limited = false; // some repetition hit the query budget early
    double mean_rel_error = 0.0;
    long reps_done = 0;
};

double truth_aggregate(const Graph& g, const std::string& aggregate) {
    if (aggregate == "degree") return average_degree(g);
    auto attr = g.attribute(aggregate);
    double sum = 0.0;
    for (double v : attr) sum += v;
    return sum / static_cast<double>(attr.size());
}

double sample_value(const Graph& g, const std::string& aggregate, NodeId node) {
    if (aggregate == "degree") return static_cast<double>(g.degree(node));
    return g.attribute(aggregate)[static_cast<std::size_t>(node)];
}

} // namespace

bool run_config(const ExperimentConfig& config, const std::string& raw_json) {
    const Graph g = build_graph(config.graph);
    std::uint64_t hash = config_hash(raw_json);
    std::filesystem::create_directories(config.output_dir);

    MethodOptions base = config.base;
    if (base.walk_length == 0) {
        long d = config.graph.model == "file" ? 7 : diameter(g);
        base.walk_length = walk_length_policy(d);
    }
    const double truth = truth_aggregate(g, config.aggregate);
    for (const auto& method : config.methods) {
        MethodOptions probe = base;
        probe.method = method;
        if (actual_sampling_kind(probe) != TargetKind::Uniform && config.aggregate != "degree")
            throw InvalidParameterError(
                "non-uniform sampling supports only the degree aggregate (harmonic estimator)");
    }

    struct Cell {
        std::string method;
        std::int64_t budget;
        std::size_t index;
    };
    std::vector<Cell> cells;
    for (const auto& method : config.methods)
        for (auto budget : config.budgets)
            cells.push_back({method, budget, cells.size()});

    std::vector<CellOutcome> outcomes(cells.size());
    std::atomic<std::size_t> next{0};

    auto run_cell = [&](const Cell& cell) {
        CellOutcome outcome;
        std::ostringstream csv;
        csv << "method,budget,rep,seed,config_hash,samples,aggregate,estimate,truth,"
               "rel_error,unique_queries,total_queries\n";
        MethodOptions mo = base;
        mo.method = cell.method;
        double err_sum = 0.0;
        for (long rep = 0; rep < config.repetitions; ++rep) {
            std::uint64_t cell_seed = mix_seed(mix_seed(hash ^ config.seed, cell.index),
                                               static_cast<std::uint64_t>(rep));
            Rng pick(cell_seed, 0x57a27ULL);
            NodeId start = config.start >= 0
                               ? config.start
                               : static_cast<NodeId>(pick.index(
                                     static_cast<std::size_t>(g.node_count())));
            MethodResult res =
                run_method(g, mo, start, cell.budget, config.samples, cell_seed);
            std::vector<double> values;
            for (const auto& rec : res.records)
                if (rec.accepted) values.push_back(sample_value(g, config.aggregate, rec.node));
            bool uniform_target = actual_sampling_kind(mo) == TargetKind::Uniform;
            double estimate = 0.0, rel = 0.0;
            bool have = !values.empty();
            if (have) {
                estimate = avg_estimate(values, uniform_target ? Weighting::Arithmetic
                                                               : Weighting::Harmonic);
                rel = relative_error(estimate, truth);
                err_sum += rel;
                ++outcome.reps_done;
            }
            if (res.report.budget_exhausted && res.report.samples_accepted < config.samples)
                outcome.budget_limited = true;
            csv << cell.method << ',' << cell.budget << ',' << rep << ',' << cell_seed << ','
                << hash << ',' << values.size() << ',' << config.aggregate << ','
                << (have ? fmt_double(estimate) : "") << ',' << fmt_double(truth) << ','
                << (have ? fmt_double(rel) : "") << ',' << res.report.unique_queries << ','
                << res.report.total_queries << '\n';
        }
        outcome.mean_rel_error =
            outcome.reps_done > 0 ? err_sum / static_cast<double>(outcome.reps_done) : 0.0;
        outcome.csv = csv.str();
        return outcome;
    };

    unsigned workers = 1;
    if (const char* env = std::getenv("WESAMPLE_WORKERS")) {
        long parsed = std::strtol(env, nullptr, 10);
        if (parsed > 0) workers = static_cast<unsigned>(parsed);
    }
    workers = std::min<unsigned>(workers, static_cast<unsigned>(cells.size()));
    if (workers <= 1) {
        for (const auto& cell : cells) outcomes[cell.index] = run_cell(cell);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                while (true) {
                    std::size_t i = next.fetch_add(1);
                    if (i >= cells.size()) return;
                    outcomes[i] = run_cell(cells[i]);
                }
            });
        for (auto& th : pool) th.join();
    }

    bool all_completed = true;
    nlohmann::json summary;
    summary["config_hash"] = hash;
    summary["truth"] = truth;
    summary["aggregate"] = config.aggregate;
    summary["walk_length"] = base.walk_length;
    summary["cells"] = nlohmann::json::array();
    for (std::size_t i = 0; i < cells.size(); ++i) {
        std::string name = cells[i].method + "_" + std::to_string(cells[i].budget);
        write_text_atomic(config.output_dir + "/" + name + ".csv", outcomes[i].csv);
        nlohmann::json cell;
        cell["method"] = cells[i].method;
        cell["budget"] = cells[i].budget;
        cell["reps_with_samples"] = outcomes[i].reps_done;
        cell["mean_rel_error"] = outcomes[i].mean_rel_error;
        cell["completed"] = outcomes[i].completed;
        cell["budget_limited"] = outcomes[i].budget_limited;
        summary["cells"].push_back(cell);
        all_completed = all_completed && outcomes[i].completed;
    }
    summary["all_completed"] = all_completed;
    write_text_atomic(config.output_dir + "/summary.json", summary.dump(2) + "\n");
    return all_completed;
}

} // namespace wesample
