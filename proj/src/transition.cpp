#include "wesample/transition.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "wesample/errors.hpp"

namespace wesample {

TransitionRow srw_row(NodeId u, std::span<const NodeId> neighbors) {
    if (neighbors.empty())
        throw DeadEndError("node " + std::to_string(u) + " has no neighbors");
    TransitionRow row;
    row.probs.reserve(neighbors.size());
    double p = 1.0 / static_cast<double>(neighbors.size());
    for (NodeId v : neighbors) row.probs.emplace_back(v, p);
    return row;
}

TransitionRow mhrw_row(NodeId u, std::span<const NodeId> neighbors,
                       std::span<const NodeId> neighbor_degrees) {
    if (neighbors.empty())
        throw DeadEndError("node " + std::to_string(u) + " has no neighbors");
    if (neighbors.size() != neighbor_degrees.size())
        throw InvalidParameterError("mhrw_row: degree list size mismatch");
    TransitionRow row;
    row.probs.reserve(neighbors.size() + 1);
    double du = static_cast<double>(neighbors.size());
    double off = 0.0;
    for (std::size_t i = 0; i < neighbors.size(); ++i) {
        double dv = static_cast<double>(neighbor_degrees[i]);
        double p = (1.0 / du) * std::min(1.0, du / dv);
        row.probs.emplace_back(neighbors[i], p);
        off += p;
    }
    if (off < 1.0 - 1e-15) row.probs.emplace_back(u, 1.0 - off);
    return row;
}

TransitionRow lazy_row(TransitionRow row, NodeId u) {
    bool has_self = false;
    for (auto& [v, p] : row.probs) {
        p *= 0.5;
        if (v == u) {
            p += 0.5;
            has_self = true;
        }
    }
    if (!has_self) row.probs.emplace_back(u, 0.5);
    return row;
}

TransitionRow design_row(const Graph& g, const TransitionConfig& config, NodeId u) {
    auto nb = g.neighbors(u);
    TransitionRow row;
    if (config.kind == TransitionKind::Srw) {
        row = srw_row(u, nb);
    } else {
        std::vector<NodeId> degs;
        degs.reserve(nb.size());
        for (NodeId v : nb) degs.push_back(g.degree(v));
        row = mhrw_row(u, nb, degs);
    }
    if (config.lazy) row = lazy_row(std::move(row), u);
    return row;
}

double transition_probability(const Graph& g, const TransitionConfig& config, NodeId v, NodeId u) {
    double base;
    if (v == u) {
        base = 0.0;
        if (config.kind == TransitionKind::Mhrw) {
            double dv = static_cast<double>(g.degree(v));
            if (dv == 0.0) throw DeadEndError("isolated node");
            double off = 0.0;
            for (NodeId w : g.neighbors(v))
                off += (1.0 / dv) * std::min(1.0, dv / static_cast<double>(g.degree(w)));
            base = 1.0 - off;
        }
        return config.lazy ? 0.5 + 0.5 * base : base;
    }
    if (!g.has_edge(v, u)) return 0.0;
    double dv = static_cast<double>(g.degree(v));
    if (config.kind == TransitionKind::Srw)
        base = 1.0 / dv;
    else
        base = (1.0 / dv) * std::min(1.0, dv / static_cast<double>(g.degree(u)));
    return config.lazy ? 0.5 * base : base;
}

Eigen::MatrixXd transition_matrix(const Graph& g, const TransitionConfig& config) {
    auto n = static_cast<Eigen::Index>(g.node_count());
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(n, n);
    for (NodeId u = 0; u < g.node_count(); ++u)
        for (const auto& [v, p] : design_row(g, config, u).probs) T(u, v) = p;
    return T;
}

Eigen::VectorXd exact_step_distribution(const Eigen::MatrixXd& T, NodeId start, long t) {
    if (t < 0) throw InvalidParameterError("step count must be non-negative");
    if (start < 0 || start >= T.rows()) throw InvalidNodeError("start node out of range");
    Eigen::RowVectorXd p = Eigen::RowVectorXd::Zero(T.cols());
    p(start) = 1.0;
    for (long i = 0; i < t; ++i) p = p * T;
    return p.transpose();
}

Eigen::VectorXd stationary_distribution(const Graph& g, const TransitionConfig& config) {
    if (!is_connected(g)) throw NotIrreducibleError("graph is disconnected");
    auto n = static_cast<Eigen::Index>(g.node_count());
    Eigen::VectorXd pi(n);
    if (config.kind == TransitionKind::Srw) {
        double two_e = 2.0 * static_cast<double>(g.edge_count());
        for (NodeId u = 0; u < g.node_count(); ++u)
            pi(u) = static_cast<double>(g.degree(u)) / two_e;
    } else {
        pi.setConstant(1.0 / static_cast<double>(n));
    }
    return pi;
}

double stationary_residual(const Eigen::MatrixXd& T, const Eigen::VectorXd& pi) {
    Eigen::RowVectorXd left = pi.transpose() * T;
    return (left.transpose() - pi).cwiseAbs().maxCoeff();
}

double relative_pointwise_distance(const Graph& g, const Eigen::MatrixXd& T_power_t,
                                   const Eigen::VectorXd& pi) {
    double worst = 0.0;
    for (NodeId u = 0; u < g.node_count(); ++u) {
        if (pi(u) <= 0.0) throw InvalidParameterError("degenerate stationary target");
        worst = std::max(worst, std::abs(T_power_t(u, u) - pi(u)) / pi(u));
        for (NodeId v : g.neighbors(u))
            worst = std::max(worst, std::abs(T_power_t(u, v) - pi(v)) / pi(v));
    }
    return worst;
}

namespace {

// Symmetric similarity transform S = D^(1/2) T D^(-1/2) of a reversible chain.
Eigen::MatrixXd symmetrized(const Eigen::MatrixXd& T, const Eigen::VectorXd& pi) {
    Eigen::VectorXd sqrt_pi = pi.cwiseSqrt();
    Eigen::MatrixXd S = sqrt_pi.asDiagonal() * T * sqrt_pi.cwiseInverse().asDiagonal();
    double asym = (S - S.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-8)
        throw NumericalError("chain is not reversible w.r.t. the given stationary distribution");
    return 0.5 * (S + S.transpose());
}

double second_eigenvalue_dense(const Eigen::MatrixXd& S) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(S);
    if (solver.info() != Eigen::Success) throw NumericalError("eigensolver failed to converge");
    const auto& ev = solver.eigenvalues(); // ascending
    return ev(ev.size() - 2);
}

double second_eigenvalue_power(const Eigen::MatrixXd& S, const Eigen::VectorXd& pi) {
    // The top eigenpair is known: eigenvalue 1 with eigenvector sqrt(pi).
    // Deflate it and power-iterate. A shift keeps the iteration targeting the
    // second largest *signed* eigenvalue even when negative ones dominate.
    Eigen::VectorXd top = pi.cwiseSqrt().normalized();
    auto n = S.rows();
    Eigen::VectorXd x = Eigen::VectorXd::Ones(n).normalized();
    x -= top * top.dot(x);
    if (x.norm() < 1e-12) x = Eigen::VectorXd::Unit(n, 0) - top * top(0);
    x.normalize();
    const double shift = 1.0; // S + I has spectrum in [0, 2]
    double prev = 0.0;
    for (int iter = 0; iter < 200000; ++iter) {
        Eigen::VectorXd y = S * x + shift * x;
        y -= top * top.dot(y);
        double norm = y.norm();
        if (norm < 1e-300) return 0.0 - shift;
        x = y / norm;
        double lambda = x.dot(S * x);
        if (iter % 8 == 7) {
            if (std::abs(lambda - prev) < 1e-12) return lambda;
            prev = lambda;
        }
    }
    throw NumericalError("power iteration did not converge");
}

} // namespace

SpectralSummary spectral_summary(const Eigen::MatrixXd& T, const Eigen::VectorXd& pi) {
    double sum = pi.sum();
    if (std::abs(sum - 1.0) > 1e-12)
        throw InvalidParameterError("stationary distribution must sum to 1");
    Eigen::MatrixXd S = symmetrized(T, pi);
    SpectralSummary out;
    out.stationary = pi;
    out.second_eigenvalue =
        T.rows() <= 2000 ? second_eigenvalue_dense(S) : second_eigenvalue_power(S, pi);
    out.spectral_gap = 1.0 - out.second_eigenvalue;
    return out;
}

SpectralSummary spectral_summary(const Graph& g, const TransitionConfig& config) {
    return spectral_summary(transition_matrix(g, config), stationary_distribution(g, config));
}

std::optional<long> burn_in_length(const Graph& g, const Eigen::MatrixXd& T,
                                   const Eigen::VectorXd& pi, double epsilon, long cap) {
    Eigen::MatrixXd power = T;
    for (long t = 1; t <= cap; ++t) {
        if (relative_pointwise_distance(g, power, pi) <= epsilon) return t;
        power = power * T;
    }
    return std::nullopt;
}

} // namespace wesample
