#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "wesample/experiment.hpp"
#include "wesample/generators.hpp"
#include "wesample/ideal.hpp"
#include "wesample/metrics.hpp"
#include "wesample/prob_estimate.hpp"
#include "wesample/transition.hpp"
#include "wesample/walkers.hpp"
#include "wesample/we_sampler.hpp"

using namespace wesample;

namespace {

struct GraphOpts {
    GraphSpec spec;
    void attach(CLI::App* cmd) {
        cmd->add_option("--model", spec.model,
                        "cycle | hypercube | barbell | tree | ba | file");
        cmd->add_option("--graph", spec.path, "edge-list file (implies --model file)");
        cmd->add_option("-n,--nodes", spec.n, "node count");
        cmd->add_option("-m,--attach", spec.m, "edges per new node (ba)");
        cmd->add_option("-k,--dim", spec.k, "hypercube dimension");
        cmd->add_option("--height", spec.height, "tree height");
        cmd->add_option("--graph-seed", spec.seed, "generator seed");
        cmd->add_option("--symmetrize", spec.symmetrize, "intersection | union");
        cmd->add_option("--attributes", spec.attributes_path, "attribute file");
    }
    Graph build() {
        if (!spec.path.empty()) spec.model = "file";
        if (spec.model.empty()) throw CLI::ValidationError("--model or --graph is required");
        return build_graph(spec);
    }
};

TransitionConfig make_design(const std::string& name, bool lazy) {
    TransitionConfig design;
    design.kind = name == "mhrw" ? TransitionKind::Mhrw : TransitionKind::Srw;
    design.lazy = lazy;
    return design;
}

std::ostream& open_output(std::ofstream& file, const std::string& path) {
    if (path.empty() || path == "-") return std::cout;
    file.open(path, std::ios::binary | std::ios::trunc);
    if (!file) throw CLI::ValidationError("cannot open output '" + path + "'");
    return file;
}

long resolve_walk_length(long requested, const GraphSpec& spec, const Graph& g) {
    if (requested > 0) return requested;
    long d = spec.model == "file" ? 7 : diameter(g);
    return walk_length_policy(d);
}

int cmd_generate(GraphOpts& graph_opts, const std::string& out_path) {
    Graph g = graph_opts.build();
    std::ofstream file;
    auto& out = open_output(file, out_path);
    write_edge_list(g, out);
    return 0;
}

int cmd_analyze(GraphOpts& graph_opts, const std::string& design_name, bool lazy, double epsilon,
                long burn_cap, const std::string& out_path) {
    Graph g = graph_opts.build();
    TransitionConfig design = make_design(design_name, lazy);
    nlohmann::json j;
    j["n"] = g.node_count();
    j["edges"] = g.edge_count();
    j["diameter"] = diameter(g);
    j["design"] = design_name;
    j["lazy"] = lazy;
    auto T = transition_matrix(g, design);
    auto pi = stationary_distribution(g, design);
    auto spectral = spectral_summary(T, pi);
    j["second_eigenvalue"] = spectral.second_eigenvalue;
    j["lambda"] = spectral.spectral_gap;
    j["epsilon"] = epsilon;
    auto burn = burn_in_length(g, T, pi, epsilon, burn_cap);
    if (burn)
        j["burn_in"] = *burn;
    else
        j["burn_in"] = nullptr; // no convergence within the cap
    j["stationary_min"] = pi.minCoeff();
    j["stationary_max"] = pi.maxCoeff();
    std::ofstream file;
    open_output(file, out_path) << j.dump(2) << '\n';
    return 0;
}

int cmd_walk(GraphOpts& graph_opts, const std::string& design_name, bool lazy,
             const std::string& mode, double geweke_threshold, long burn_in, long n_samples,
             long chains, NodeId start, std::uint64_t seed, const std::string& out_path) {
    Graph g = graph_opts.build();
    TransitionConfig design = make_design(design_name, lazy);
    std::ofstream file;
    auto& out = open_output(file, out_path);
    out << "chain_id,step,node,degree\n";
    for (long chain = 0; chain < chains; ++chain) {
        Rng rng(seed, static_cast<std::uint64_t>(chain) + 1);
        AccessOracle oracle(g, NoRestriction{}, mix_seed(seed, static_cast<std::uint64_t>(chain)));
        NodeId s = start >= 0 ? start
                              : static_cast<NodeId>(
                                    rng.index(static_cast<std::size_t>(g.node_count())));
        std::vector<NodeId> trace{s};
        if (mode == "long") {
            auto records = classic_sample_one_long_run(oracle, design, s, burn_in, n_samples, rng);
            for (const auto& rec : records) trace.push_back(rec.node);
        } else {
            GewekeOptions opts;
            opts.threshold = geweke_threshold;
            std::vector<double> chain_values;
            NodeId current = s;
            long steps = 0;
            while (true) {
                auto outcome = step_observed(oracle, design, current, rng);
                chain_values.push_back(static_cast<double>(outcome.observed_degree));
                current = outcome.next;
                trace.push_back(current);
                ++steps;
                if (steps >= opts.min_length && steps % opts.stride == 0 &&
                    geweke_z(chain_values) <= opts.threshold)
                    break;
                if (steps >= opts.max_steps) break;
            }
        }
        for (std::size_t i = 0; i < trace.size(); ++i)
            out << chain << ',' << i << ',' << trace[i] << ',' << g.degree(trace[i]) << '\n';
    }
    return 0;
}

int cmd_sample(GraphOpts& graph_opts, const MethodOptions& base, long walk_length, NodeId start,
               std::int64_t budget, long n_samples, std::uint64_t seed,
               const std::string& out_path) {
    Graph g = graph_opts.build();
    MethodOptions mo = base;
    mo.walk_length = resolve_walk_length(walk_length, graph_opts.spec, g);
    Rng pick(seed, 0x57a27ULL);
    NodeId s = start >= 0
                   ? start
                   : static_cast<NodeId>(pick.index(static_cast<std::size_t>(g.node_count())));
    auto budget_opt = budget > 0 ? std::optional<std::int64_t>(budget) : std::nullopt;
    MethodResult res = run_method(g, mo, s, budget_opt, n_samples, seed);
    std::ofstream file;
    auto& out = open_output(file, out_path);
    out << "sample_id,node,t,p_est,beta,accepted,cum_unique_queries,cum_total_queries\n";
    for (const auto& rec : res.records)
        out << rec.sample_id << ',' << rec.node << ',' << rec.walk_length << ','
            << fmt_double(rec.p_est) << ',' << fmt_double(rec.beta) << ',' << (rec.accepted ? 1 : 0)
            << ',' << rec.unique_queries << ',' << rec.total_queries << '\n';
    std::cerr << "accepted " << res.report.samples_accepted << " of " << res.report.candidates
              << " candidates; unique queries " << res.report.unique_queries
              << (res.report.budget_exhausted ? " (budget exhausted)" : "") << '\n';
    return res.report.budget_exhausted && res.report.samples_accepted < n_samples ? 2 : 0;
}

int cmd_ideal(double lambda, double d_max, double gamma, double delta, long t_max,
              const std::string& out_path) {
    IdealParams params{lambda, d_max, gamma, delta};
    std::ofstream file;
    auto& out = open_output(file, out_path);
    out << "t,cost\n";
    for (long t = 1; t <= t_max; ++t)
        out << t << ',' << fmt_double(ideal_cost_value(params, static_cast<double>(t))) << '\n';
    std::cerr << "t_opt=" << fmt_double(t_opt(params))
              << " c=" << fmt_double(optimal_integer_cost(params))
              << " c_rw=" << fmt_double(rw_cost(params))
              << " improvement=" << fmt_double(improvement_ratio(params)) << '\n';
    return 0;
}

int cmd_bias(GraphOpts& graph_opts, const MethodOptions& base,
             const std::vector<std::string>& methods, long walk_length, NodeId start,
             std::int64_t budget, long samples, std::uint64_t seed, const std::string& out_path) {
    Graph g = graph_opts.build();
    std::ofstream file;
    auto& out = open_output(file, out_path);
    out << "method,budget,samples,campaigns,l_inf,kl\n";
    for (const auto& method : methods) {
        MethodOptions mo = base;
        mo.method = method;
        mo.walk_length = resolve_walk_length(walk_length, graph_opts.spec, g);
        BiasResult res = bias_study(g, mo, start, budget, samples, seed);
        out << method << ',' << budget << ',' << res.samples << ',' << res.campaigns << ','
            << fmt_double(res.l_inf) << ',' << fmt_double(res.kl) << '\n';
    }
    return 0;
}

int cmd_run(const std::string& config_path) {
    std::ifstream in(config_path);
    if (!in) {
        std::cerr << "{\"error\":\"cannot open config\",\"path\":\"" << config_path << "\"}\n";
        return 2;
    }
    std::stringstream buf;
    buf << in.rdbuf();
    ExperimentConfig cfg = parse_config(buf.str());
    bool ok = run_config(cfg, buf.str());
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"graph sampling toolkit: short random walks with probability "
                 "estimation and acceptance-rejection"};
    app.require_subcommand(1);

    GraphOpts graph_opts;
    std::string out_path, design_name = "srw", mode = "short", target_name = "stationary";
    bool lazy = false;
    double epsilon_delta = 1e-3, geweke_threshold = 0.1;
    long burn_cap = 100000, burn_in = 0, n_samples = 10, chains = 1, walk_length = 0;
    NodeId start = -1;
    std::int64_t budget = 0;
    std::uint64_t seed = 0;
    MethodOptions base;
    std::vector<std::string> methods{"we", "srw"};
    std::string config_path;
    IdealParams ideal_params{0.1, 8.0, 1.0, 0.01};
    long t_max = 128;

    auto* generate = app.add_subcommand("generate", "emit a graph as an edge list");
    graph_opts.attach(generate);
    generate->add_option("-o,--output", out_path, "output file (default stdout)");

    auto* analyze = app.add_subcommand("analyze", "exact chain analysis of a small graph");
    graph_opts.attach(analyze);
    analyze->add_option("--design", design_name, "srw | mhrw");
    analyze->add_flag("--lazy", lazy, "mix in a 1/2 self-loop");
    analyze->add_option("--epsilon", epsilon_delta, "burn-in threshold on Delta(t)");
    analyze->add_option("--burn-cap", burn_cap, "step cap for the burn-in search");
    analyze->add_option("-o,--output", out_path, "output file (default stdout)");

    auto* walk = app.add_subcommand("walk", "classic burn-in walks, CSV trace");
    graph_opts.attach(walk);
    walk->add_option("--design", design_name, "srw | mhrw");
    walk->add_flag("--lazy", lazy, "mix in a 1/2 self-loop");
    walk->add_option("--mode", mode, "short | long");
    walk->add_option("--geweke-z", geweke_threshold, "Geweke threshold (short mode)");
    walk->add_option("--burn-in", burn_in, "burn-in steps (long mode)");
    walk->add_option("--samples", n_samples, "samples per chain (long mode)");
    walk->add_option("--chains", chains, "number of chains");
    walk->add_option("--start", start, "start node (-1: random)");
    walk->add_option("--seed", seed, "rng seed");
    walk->add_option("-o,--output", out_path, "output file (default stdout)");

    auto* sample = app.add_subcommand("sample", "sampling methods, CSV records");
    graph_opts.attach(sample);
    sample->add_option("--method", base.method, "we | we-none | we-crawl | we-weighted | srw | mhrw");
    sample->add_option("--design", design_name, "input walk design: srw | mhrw");
    sample->add_flag("--lazy", lazy, "mix in a 1/2 self-loop");
    sample->add_option("--target", target_name, "stationary | uniform | degree");
    sample->add_option("--walk-length", walk_length, "forward walk length (0: 2*diameter+1)");
    sample->add_option("--epsilon", base.epsilon, "weighted-sampling floor");
    sample->add_option("--crawl-depth", base.crawl_depth, "initial crawling depth h");
    sample->add_option("--est-runs", base.est_runs, "backward runs per candidate");
    sample->add_option("--percentile", base.percentile, "scaling-factor percentile");
    sample->add_option("--geweke-z", base.geweke.threshold, "Geweke threshold (classic methods)");
    sample->add_option("--budget", budget, "unique-node budget (0: unlimited)");
    sample->add_option("--samples", n_samples, "accepted samples to produce");
    sample->add_option("--start", start, "start node (-1: random)");
    sample->add_option("--seed", seed, "rng seed");
    sample->add_option("-o,--output", out_path, "output file (default stdout)");

    auto* ideal = app.add_subcommand("ideal", "short-walk cost curves from closed forms");
    ideal->add_option("--lambda", ideal_params.lambda, "spectral gap")->required();
    ideal->add_option("--dmax", ideal_params.d_max, "maximum degree")->required();
    ideal->add_option("--gamma", ideal_params.gamma, "scale parameter");
    ideal->add_option("--delta", ideal_params.delta, "variation-distance requirement");
    ideal->add_option("--t-max", t_max, "last walk length in the curve");
    ideal->add_option("-o,--output", out_path, "output file (default stdout)");

    auto* bias = app.add_subcommand("bias", "empirical sampling-distribution distances");
    graph_opts.attach(bias);
    bias->add_option("--methods", methods, "methods to compare");
    bias->add_option("--design", design_name, "input walk design");
    bias->add_flag("--lazy", lazy, "mix in a 1/2 self-loop");
    bias->add_option("--target", target_name, "reference target distribution");
    bias->add_option("--walk-length", walk_length, "forward walk length (0: policy)");
    bias->add_option("--budget", budget, "unique-node budget per campaign")->required();
    bias->add_option("--samples", n_samples, "pooled sample target");
    bias->add_option("--start", start, "start node (-1: node 0)");
    bias->add_option("--seed", seed, "rng seed");
    bias->add_option("-o,--output", out_path, "output file (default stdout)");

    auto* run = app.add_subcommand("run", "batch experiment from a JSON config");
    run->add_option("config", config_path, "config file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (generate->parsed()) return cmd_generate(graph_opts, out_path);
        if (analyze->parsed())
            return cmd_analyze(graph_opts, design_name, lazy, epsilon_delta, burn_cap, out_path);
        if (walk->parsed())
            return cmd_walk(graph_opts, design_name, lazy, mode, geweke_threshold, burn_in,
                            n_samples, chains, start, seed, out_path);
        if (sample->parsed()) {
            base.design = make_design(design_name, lazy);
            base.target = target_name == "uniform"  ? TargetKind::Uniform
                          : target_name == "degree" ? TargetKind::DegreeProportional
                                                    : TargetKind::Stationary;
            return cmd_sample(graph_opts, base, walk_length, start, budget, n_samples, seed,
                              out_path);
        }
        if (ideal->parsed())
            return cmd_ideal(ideal_params.lambda, ideal_params.d_max, ideal_params.gamma,
                             ideal_params.delta, t_max, out_path);
        if (bias->parsed()) {
            base.design = make_design(design_name, lazy);
            base.target = target_name == "uniform"  ? TargetKind::Uniform
                          : target_name == "degree" ? TargetKind::DegreeProportional
                                                    : TargetKind::Stationary;
            if (start < 0) start = 0;
            return cmd_bias(graph_opts, base, methods, walk_length, start, budget, n_samples,
                            seed, out_path);
        }
        if (run->parsed()) return cmd_run(config_path);
    } catch (const std::exception& e) {
        nlohmann::json err;
        err["error"] = e.what();
        std::cerr << err.dump() << '\n';
        return 1;
    }
    return 0;
}
