#include "oracles.hpp"

#include <cmath>
#include <string>

#include "error.hpp"

namespace wocsim {

double ou_no_info_mean(double x0, double beta, double t) {
    if (beta < 0.0 || t < 0.0)
        throw ParameterError("ou_no_info_mean needs beta >= 0 and t >= 0");
    const double relax = std::exp(-beta * t);
    return x0 * relax + x0 * (1.0 - relax);
}

double ou_stationary_variance(double noise_d, double beta) {
    if (!(beta > 0.0))
        throw ParameterError(
            "stationary variance needs beta > 0; the beta=0 process "
            "diffuses without bound");
    return noise_d * noise_d / (2.0 * beta);
}

std::vector<double> deterministic_solution(const PopulationState& initial,
                                           const ModelParams& params,
                                           double t) {
    const double rate = params.alpha + params.beta;
    if (!(rate > 0.0))
        throw ParameterError(
            "degenerate dynamics: alpha + beta must be > 0 for the decay "
            "solution");
    if (t < 0.0) throw ParameterError("t must be >= 0");

    const auto x0 = initial.initial_opinions();
    double mean0 = 0.0;
    for (double x : x0) mean0 += x;
    mean0 /= double(x0.size());

    const double decay = std::exp(-rate * t);
    std::vector<double> out(x0.size());
    for (std::size_t i = 0; i < x0.size(); ++i) {
        if (decay == 1.0) {
            out[i] = x0[i];  // exact at t=0; x* + (x0-x*) re-rounds
            continue;
        }
        const double fixed =
            (params.alpha * mean0 + params.beta * x0[i]) / rate;
        out[i] = fixed + (x0[i] - fixed) * decay;
    }
    return out;
}

StationaryPrediction stationary_prediction(const PopulationState& initial,
                                           double alpha, double beta) {
    if (alpha < 0.0 || beta < 0.0)
        throw ParameterError("alpha and beta must be >= 0");
    const double rate = alpha + beta;
    if (!(rate > 0.0))
        throw ParameterError(
            "degenerate dynamics: alpha + beta = 0 has no stationary "
            "contraction");

    const auto x0 = initial.initial_opinions();
    double mean0 = 0.0;
    for (double x : x0) mean0 += x;
    mean0 /= double(x0.size());

    StationaryPrediction pred;
    pred.stationary_opinions.resize(x0.size());
    for (std::size_t i = 0; i < x0.size(); ++i)
        pred.stationary_opinions[i] = (alpha * mean0 + beta * x0[i]) / rate;
    const double share = beta / rate;
    pred.variance_ratio = share * share;
    pred.decay_rate = rate;
    return pred;
}

}  // namespace wocsim
