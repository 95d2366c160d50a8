#include "metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "error.hpp"

namespace wocsim {

namespace {

void require_positive_opinions(std::span<const double> opinions) {
    if (opinions.empty())
        throw ParameterError("metrics need at least one opinion");
    for (std::size_t i = 0; i < opinions.size(); ++i) {
        if (!(opinions[i] > 0.0) || !std::isfinite(opinions[i]))
            throw ParameterError("opinion " + std::to_string(i) + " is " +
                                 std::to_string(opinions[i]) +
                                 "; metrics are defined on positive values");
    }
}

void require_positive_truth(double truth) {
    if (!(truth > 0.0) || !std::isfinite(truth))
        throw ParameterError("truth must be a positive finite real, got " +
                             std::to_string(truth));
}

double mean_log(std::span<const double> opinions) {
    double sum = 0.0;
    for (double x : opinions) sum += std::log(x);
    return sum / double(opinions.size());
}

}  // namespace

double collective_error(std::span<const double> opinions, double truth) {
    require_positive_opinions(opinions);
    require_positive_truth(truth);
    const double gap = std::log(truth) - mean_log(opinions);
    return gap * gap;
}

double group_diversity(std::span<const double> opinions) {
    require_positive_opinions(opinions);
    const double center = mean_log(opinions);
    double sum = 0.0;
    for (double x : opinions) {
        const double d = std::log(x) - center;
        sum += d * d;
    }
    return sum / double(opinions.size());
}

std::int32_t wisdom_indicator(std::span<const double> opinions, double truth) {
    require_positive_opinions(opinions);
    require_positive_truth(truth);
    const std::size_t n = opinions.size();
    if (n < 2)
        throw ParameterError("wisdom_indicator needs at least 2 opinions");

    std::vector<double> sorted(opinions.begin(), opinions.end());
    std::stable_sort(sorted.begin(), sorted.end());

    // sorted[i-1] is nondecreasing in i and sorted[n-i] nonincreasing, so
    // the bracketing predicate is monotone; scan for the last true i.
    std::int32_t depth = 0;
    for (std::size_t i = 1; i <= n / 2; ++i) {
        if (sorted[i - 1] <= truth && truth <= sorted[n - i])
            depth = std::int32_t(i);
        else
            break;
    }
    return depth;
}

CrowdMetrics crowd_metrics(std::span<const double> opinions, double truth) {
    CrowdMetrics m{};
    m.collective_error = collective_error(opinions, truth);
    m.group_diversity = group_diversity(opinions);
    m.wisdom_indicator = wisdom_indicator(opinions, truth);
    double sum = 0.0;
    for (double x : opinions) sum += x;
    m.arithmetic_mean = sum / double(opinions.size());
    m.geometric_mean = std::exp(mean_log(opinions));
    return m;
}

}  // namespace wocsim
