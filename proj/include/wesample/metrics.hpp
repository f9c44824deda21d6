#pragma once

#include <functional>
#include <span>
#include <vector>

#include "wesample/graph.hpp"

namespace wesample {

enum class Weighting { Arithmetic, Harmonic };

// Arithmetic mean for uniform-target samples; the harmonic mean n / sum(1/x)
// corrects degree-proportional samples when estimating the average degree.
double avg_estimate(std::span<const double> values, Weighting weighting);

// |estimate - truth| / truth.
double relative_error(double estimate, double truth);

// Visit-frequency vector over n nodes from repeated invocations of a sampler.
std::vector<double> empirical_sampling_distribution(const std::function<NodeId()>& sampler,
                                                    NodeId n, long repetitions);

// Normalized counts with add-one-half smoothing (used before KL so empty
// cells do not produce infinities; the l-infinity distance stays unsmoothed).
std::vector<double> smoothed_distribution(std::span<const std::int64_t> counts);

enum class DistanceMeasure { LInf, KL };

// l-infinity: max |p - q|; KL: sum p log(p/q), requiring q > 0 wherever p > 0.
double distribution_distance(std::span<const double> p, std::span<const double> q,
                             DistanceMeasure measure);

} // namespace wesample
