#pragma once

#include <utility>
#include <vector>

#include "wesample/graph.hpp"
#include "wesample/transition.hpp"

namespace wesample {

// Parameters of the ideal short-walk cost analysis. gamma is the scale
// parameter of the cost bound; it enters only through 0 < delta < gamma and
// the acceptance bound, and is kept as an explicit input.
struct IdealParams {
    double lambda = 0.0; // spectral gap, in (0, 1)
    double d_max = 1.0;
    double gamma = 1.0;
    double delta = 0.0; // required l-infinity variation distance, in (0, gamma)

    void validate() const;
};

// Lower real branch W_-1 on [-1/e, 0): w <= -1 with w * e^w = x, residual
// below 1e-12 (Halley iteration).
double lambert_w_lower(double x);

// f(t) = t * (gamma - delta) / (gamma - (1-lambda)^t * d_max); +infinity
// where the walk is too short for the denominator to be positive.
double ideal_cost_value(const IdealParams& p, double t);

std::vector<std::pair<double, double>> ideal_cost_curve(const IdealParams& p, double t_lo,
                                                        double t_hi, double step = 1.0);

// Closed-form minimizer of f; does not depend on delta. Requires
// gamma <= d_max (the Lambert argument's domain); equals 0 when gamma == d_max.
double t_opt(const IdealParams& p);

// min over integer t in [1, 10 * max(t_opt, 1)] of f(t).
double optimal_integer_cost(const IdealParams& p);

// Expected query cost per sample of the input random walk:
// log(delta / d_max) / log(1 - lambda). Requires delta < d_max.
double rw_cost(const IdealParams& p);

// 1 - c / c_RW with c the integer-optimized short-walk cost.
double improvement_ratio(const IdealParams& p);

// --- odd-cycle closed forms ---

// Landing probability vector after k steps of the 1/2-1/2 walk on an odd
// cycle of length l, by exact recursion.
std::vector<double> cycle_landing_vector(long l, long k);

// Minimum landing probability after k steps: closed binomial form for even k,
// V_{k-1,min} for odd k; 0 when k < l-1.
double cycle_min_landing_closed(long l, long k);

// Expected cost k / (l * V_min) of the exact-knowledge accept-reject sampler
// on the odd cycle; +infinity when the minimum landing probability is zero.
double cycle_cost_ar_closed(long l, long k);
double cycle_cost_ar_matrix(long l, long k);

// Closed-form cost-minimizing walk length l^2/3 - 1.
double cycle_optimal_k(long l);

// Brute-force argmin of the matrix-based cost over k in [l-1, k_hi].
long cycle_argmin_cost(long l, long k_hi);

// (min_v p_t, max_v p_t) for t = 0..t_max from the exact step distribution.
std::vector<std::pair<double, double>> minmax_probability_curve(const Graph& g,
                                                                const TransitionConfig& config,
                                                                NodeId start, long t_max);

} // namespace wesample
