#pragma once

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "wesample/graph.hpp"

namespace wesample {

enum class TransitionKind { Srw, Mhrw };

// Transition design shared by forward walks, backward estimation and exact
// matrix analysis. The lazy flag mixes in a 1/2 self-loop, which is the usual
// fix for periodicity on bipartite graphs; it is off by default.
struct TransitionConfig {
    TransitionKind kind = TransitionKind::Srw;
    bool lazy = false;

    bool self_loop_possible() const { return lazy || kind == TransitionKind::Mhrw; }
};

// Sparse distribution over {u} union N(u).
struct TransitionRow {
    std::vector<std::pair<NodeId, double>> probs;
};

// Uniform over the neighbor list; no self mass.
TransitionRow srw_row(NodeId u, std::span<const NodeId> neighbors);

// T(u,v) = (1/|N(u)|) * min(1, |N(u)|/|N(v)|) on neighbors, remainder on the
// self-loop; uniform stationary target.
TransitionRow mhrw_row(NodeId u, std::span<const NodeId> neighbors,
                       std::span<const NodeId> neighbor_degrees);

TransitionRow lazy_row(TransitionRow row, NodeId u);

// Full row for a node of the (unrestricted) graph under a config.
TransitionRow design_row(const Graph& g, const TransitionConfig& config, NodeId u);

// Probability of the v -> u transition under the design, reading degrees from
// the unrestricted graph.
double transition_probability(const Graph& g, const TransitionConfig& config, NodeId v, NodeId u);

// Dense row-stochastic matrix; only for graphs small enough to materialize.
Eigen::MatrixXd transition_matrix(const Graph& g, const TransitionConfig& config);

// p_t = e_start * T^t.
Eigen::VectorXd exact_step_distribution(const Eigen::MatrixXd& T, NodeId start, long t);

// Closed-form stationary distribution: degree-proportional for SRW, uniform
// for MHRW (laziness does not change it). Requires a connected graph.
Eigen::VectorXd stationary_distribution(const Graph& g, const TransitionConfig& config);

// Fixed point of an explicit row-stochastic matrix via eigen decomposition of
// the reversible similarity transform, given the stationary candidate pi.
double stationary_residual(const Eigen::MatrixXd& T, const Eigen::VectorXd& pi);

// max over pairs {(u,v): v in N(u)} plus the diagonal of |T^t_uv - pi(v)| / pi(v).
double relative_pointwise_distance(const Graph& g, const Eigen::MatrixXd& T_power_t,
                                   const Eigen::VectorXd& pi);

struct SpectralSummary {
    double second_eigenvalue = 0.0; // signed, second largest
    double spectral_gap = 0.0;      // 1 - s2
    Eigen::VectorXd stationary;
};

// Spectrum of the reversible chain via the symmetric similarity transform
// D^(1/2) T D^(-1/2); dense solver up to n = 2000, power iteration with
// deflation beyond that.
SpectralSummary spectral_summary(const Eigen::MatrixXd& T, const Eigen::VectorXd& pi);
SpectralSummary spectral_summary(const Graph& g, const TransitionConfig& config);

// Smallest t >= 1 with Delta(t) <= epsilon, by incremental matrix powers.
// Returns nullopt if the cap is exceeded (no-convergence report).
std::optional<long> burn_in_length(const Graph& g, const Eigen::MatrixXd& T,
                                   const Eigen::VectorXd& pi, double epsilon,
                                   long cap = 1000000);

} // namespace wesample
