#include "wesample/ideal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wesample/errors.hpp"

namespace wesample {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

void IdealParams::validate() const {
    if (!(lambda > 0.0 && lambda < 1.0))
        throw InvalidParameterError("spectral gap must be in (0, 1)");
    if (!(d_max >= 1.0)) throw InvalidParameterError("d_max must be >= 1");
    if (!(gamma > 0.0)) throw InvalidParameterError("gamma must be positive");
    if (!(delta > 0.0 && delta < gamma))
        throw InvalidParameterError("delta must satisfy 0 < delta < gamma");
}

double lambert_w_lower(double x) {
    const double branch = -std::exp(-1.0);
    if (x >= 0.0 || x < branch * (1.0 + 4e-16))
        throw InvalidParameterError("lambert_w_lower requires x in [-1/e, 0)");
    if (x <= branch) return -1.0;

    // Initial guess: series near the branch point, asymptotic form near 0.
    double w;
    double p2 = 2.0 * (std::exp(1.0) * x + 1.0);
    if (p2 < 0.25) {
        double p = -std::sqrt(p2);
        w = -1.0 + p - p * p / 3.0 + 11.0 * p * p * p / 72.0;
    } else {
        double lg = std::log(-x);
        w = lg - std::log(-lg);
    }
    for (int iter = 0; iter < 100; ++iter) {
        double ew = std::exp(w);
        double f = w * ew - x;
        if (std::abs(f) <= 1e-13) break;
        // Halley step
        double denom = ew * (w + 1.0) - (w + 2.0) * f / (2.0 * w + 2.0);
        w -= f / denom;
    }
    double residual = std::abs(w * std::exp(w) - x);
    if (residual > 1e-12) throw NumericalError("lambert_w_lower did not converge");
    return w;
}

double ideal_cost_value(const IdealParams& p, double t) {
    p.validate();
    if (t <= 0.0) throw InvalidParameterError("walk length must be positive");
    double denom = p.gamma - std::pow(1.0 - p.lambda, t) * p.d_max;
    if (denom <= 0.0) return kInf;
    return t * (p.gamma - p.delta) / denom;
}

std::vector<std::pair<double, double>> ideal_cost_curve(const IdealParams& p, double t_lo,
                                                        double t_hi, double step) {
    if (step <= 0.0 || t_lo <= 0.0 || t_hi < t_lo)
        throw InvalidParameterError("bad t range");
    std::vector<std::pair<double, double>> curve;
    for (double t = t_lo; t <= t_hi + 1e-12; t += step)
        curve.emplace_back(t, ideal_cost_value(p, t));
    return curve;
}

double t_opt(const IdealParams& p) {
    p.validate();
    if (p.gamma > p.d_max * (1.0 + 1e-12))
        throw InvalidParameterError("t_opt requires gamma <= d_max");
    double x = -p.gamma / (std::exp(1.0) * p.d_max);
    double w = x <= -std::exp(-1.0) * (1.0 - 4e-16) ? -1.0 : lambert_w_lower(x);
    // -log(-(1/gamma) * W * d_max) / log(1 - lambda)
    return -std::log(-w * p.d_max / p.gamma) / std::log(1.0 - p.lambda);
}

double optimal_integer_cost(const IdealParams& p) {
    double to = t_opt(p);
    long hi = static_cast<long>(std::ceil(10.0 * std::max(to, 1.0)));
    double best = kInf;
    for (long t = 1; t <= hi; ++t)
        best = std::min(best, ideal_cost_value(p, static_cast<double>(t)));
    if (std::isinf(best)) {
        // gamma == d_max with a steep gap can push the whole integer range
        // above feasibility only if hi was too small; extend once.
        for (long t = hi + 1; t <= 100 * hi; ++t)
            best = std::min(best, ideal_cost_value(p, static_cast<double>(t)));
    }
    return best;
}

double rw_cost(const IdealParams& p) {
    p.validate();
    if (p.delta >= p.d_max)
        throw InvalidParameterError("rw_cost requires delta < d_max");
    return std::log(p.delta / p.d_max) / std::log(1.0 - p.lambda);
}

double improvement_ratio(const IdealParams& p) {
    return 1.0 - optimal_integer_cost(p) / rw_cost(p);
}

std::vector<double> cycle_landing_vector(long l, long k) {
    if (l < 3 || l % 2 == 0) throw InvalidParameterError("odd cycle length l >= 3 required");
    if (k < 0) throw InvalidParameterError("walk length must be non-negative");
    std::vector<double> v(static_cast<std::size_t>(l), 0.0), next(v);
    v[0] = 1.0;
    for (long s = 0; s < k; ++s) {
        for (long i = 0; i < l; ++i)
            next[static_cast<std::size_t>(i)] =
                0.5 * (v[static_cast<std::size_t>((i + 1) % l)] +
                       v[static_cast<std::size_t>((i + l - 1) % l)]);
        v.swap(next);
    }
    return v;
}

namespace {

double binom(long n, long r) {
    if (r < 0 || r > n) return 0.0;
    return std::exp(std::lgamma(static_cast<double>(n) + 1.0) -
                    std::lgamma(static_cast<double>(r) + 1.0) -
                    std::lgamma(static_cast<double>(n - r) + 1.0));
}

} // namespace

double cycle_min_landing_closed(long l, long k) {
    if (l < 3 || l % 2 == 0) throw InvalidParameterError("odd cycle length l >= 3 required");
    if (k < l - 1) return 0.0;
    if (k % 2 == 1) return cycle_min_landing_closed(l, k - 1);
    double log_scale = -static_cast<double>(k) * std::log(2.0);
    long base = (k - l + 1) / 2;
    double sum = binom(k + 1, base);
    long upper = (k - 3 * l + 1) / (2 * l);
    for (long i = 0; i <= upper; ++i) sum += binom(k + 1, i * l + base % l);
    return sum * std::exp(log_scale);
}

double cycle_cost_ar_closed(long l, long k) {
    if (k < 1) throw InvalidParameterError("walk length must be positive");
    double v_min = k % 2 == 0 ? cycle_min_landing_closed(l, k)
                              : cycle_min_landing_closed(l, k - 1);
    if (v_min <= 0.0) return kInf;
    return static_cast<double>(k) / (static_cast<double>(l) * v_min);
}

double cycle_cost_ar_matrix(long l, long k) {
    if (k < 1) throw InvalidParameterError("walk length must be positive");
    auto v = cycle_landing_vector(l, k);
    double v_min = *std::min_element(v.begin(), v.end());
    if (v_min <= 0.0) return kInf;
    return static_cast<double>(k) / (static_cast<double>(l) * v_min);
}

double cycle_optimal_k(long l) {
    if (l < 3 || l % 2 == 0) throw InvalidParameterError("odd cycle length l >= 3 required");
    return static_cast<double>(l) * static_cast<double>(l) / 3.0 - 1.0;
}

long cycle_argmin_cost(long l, long k_hi) {
    long best_k = -1;
    double best = kInf;
    for (long k = l - 1; k <= k_hi; ++k) {
        double c = cycle_cost_ar_matrix(l, k);
        if (c < best) {
            best = c;
            best_k = k;
        }
    }
    if (best_k < 0) throw InvalidParameterError("no finite cost in range");
    return best_k;
}

std::vector<std::pair<double, double>> minmax_probability_curve(const Graph& g,
                                                                const TransitionConfig& config,
                                                                NodeId start, long t_max) {
    if (t_max < 0) throw InvalidParameterError("t_max must be non-negative");
    Eigen::MatrixXd T = transition_matrix(g, config);
    Eigen::RowVectorXd p = Eigen::RowVectorXd::Zero(T.cols());
    p(start) = 1.0;
    std::vector<std::pair<double, double>> out;
    out.reserve(static_cast<std::size_t>(t_max) + 1);
    out.emplace_back(p.minCoeff(), p.maxCoeff());
    for (long t = 1; t <= t_max; ++t) {
        p = p * T;
        out.emplace_back(p.minCoeff(), p.maxCoeff());
    }
    return out;
}

} // namespace wesample
