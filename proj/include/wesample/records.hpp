#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wesample/graph.hpp"

namespace wesample {

// One sampling outcome with provenance: the candidate node, whether it was
// accepted, the walk length used, the probability estimate and acceptance
// probability that decided it, and the query-cost counters at emission.
// Classic samplers fill the walk fields and leave the estimation fields at
// their defaults (p_est = -1 meaning "not estimated", beta = 1).
struct SampleRecord {
    std::int64_t sample_id = 0;
    NodeId node = -1;
    bool accepted = false;
    long walk_length = 0;
    double p_est = -1.0;
    double beta = 1.0;
    std::int64_t unique_queries = 0;
    std::int64_t total_queries = 0;
};

struct ExperimentReport {
    std::string method;
    std::int64_t samples_requested = 0;
    std::int64_t samples_accepted = 0;
    std::int64_t candidates = 0;
    std::int64_t clipped_beta = 0;     // beta hit the min(1, .) clip: bias diagnostic
    std::int64_t zero_estimates = 0;   // candidates rejected because p_est <= 0
    std::int64_t unique_queries = 0;
    std::int64_t total_queries = 0;
    std::int64_t walk_steps = 0;       // forward + backward transitions taken
    bool budget_exhausted = false;
};

} // namespace wesample
