#pragma once

#include <cstdint>
#include <span>

// Crowd-level metrics. The model couples opinions in raw space; accuracy
// and diversity are measured on log-opinions (estimates span orders of
// magnitude), while the bracketing indicator works on the raw sample.

namespace wocsim {

struct CrowdMetrics {
    double collective_error;
    double group_diversity;
    std::int32_t wisdom_indicator;
    double arithmetic_mean;
    double geometric_mean;
};

// (ln truth - <ln x>)^2. Requires positive opinions and truth.
double collective_error(std::span<const double> opinions, double truth);

// Population variance (1/N) of ln x. Requires positive opinions, N >= 1.
double group_diversity(std::span<const double> opinions);

// Depth of the central order statistics that still bracket the truth:
// largest i >= 1 with sorted[i] <= truth <= sorted[N-i+1] (1-based), 0 if
// the truth lies outside the sample, capped at floor(N/2). Requires
// N >= 2 and truth > 0.
std::int32_t wisdom_indicator(std::span<const double> opinions, double truth);

// All of the above plus raw arithmetic mean and geometric mean
// exp(<ln x>), in one pass over the sample.
CrowdMetrics crowd_metrics(std::span<const double> opinions, double truth);

}  // namespace wocsim
