#include "wesample/metrics.hpp"

#include <cmath>

#include "wesample/errors.hpp"

namespace wesample {

double avg_estimate(std::span<const double> values, Weighting weighting) {
    if (values.empty()) throw InvalidParameterError("avg_estimate over empty sample");
    double sum = 0.0;
    if (weighting == Weighting::Arithmetic) {
        for (double v : values) sum += v;
        return sum / static_cast<double>(values.size());
    }
    for (double v : values) {
        if (v <= 0.0) throw InvalidParameterError("harmonic mean requires positive values");
        sum += 1.0 / v;
    }
    return static_cast<double>(values.size()) / sum;
}

double relative_error(double estimate, double truth) {
    if (truth == 0.0) throw InvalidParameterError("relative error undefined for zero truth");
    return std::abs(estimate - truth) / std::abs(truth);
}

std::vector<double> empirical_sampling_distribution(const std::function<NodeId()>& sampler,
                                                    NodeId n, long repetitions) {
    if (n <= 0 || repetitions <= 0) throw InvalidParameterError("empty distribution request");
    std::vector<double> freq(static_cast<std::size_t>(n), 0.0);
    for (long i = 0; i < repetitions; ++i) {
        NodeId v = sampler();
        if (v < 0 || v >= n) throw InvalidNodeError("sampler returned out-of-range node");
        freq[static_cast<std::size_t>(v)] += 1.0;
    }
    for (double& f : freq) f /= static_cast<double>(repetitions);
    return freq;
}

std::vector<double> smoothed_distribution(std::span<const std::int64_t> counts) {
    if (counts.empty()) throw InvalidParameterError("empty count vector");
    double total = 0.0;
    for (auto c : counts) total += static_cast<double>(c);
    double denom = total + 0.5 * static_cast<double>(counts.size());
    std::vector<double> out;
    out.reserve(counts.size());
    for (auto c : counts) out.push_back((static_cast<double>(c) + 0.5) / denom);
    return out;
}

double distribution_distance(std::span<const double> p, std::span<const double> q,
                             DistanceMeasure measure) {
    if (p.size() != q.size() || p.empty())
        throw InvalidParameterError("distributions must share a non-empty support");
    double sp = 0.0, sq = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        sp += p[i];
        sq += q[i];
    }
    if (std::abs(sp - 1.0) > 1e-6 || std::abs(sq - 1.0) > 1e-6)
        throw InvalidParameterError("distributions must each sum to 1");
    if (measure == DistanceMeasure::LInf) {
        double worst = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i)
            worst = std::max(worst, std::abs(p[i] - q[i]));
        return worst;
    }
    double kl = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] <= 0.0) continue;
        if (q[i] <= 0.0)
            throw InvalidParameterError("KL undefined: q has a zero where p is positive");
        kl += p[i] * std::log(p[i] / q[i]);
    }
    return kl;
}

} // namespace wesample
