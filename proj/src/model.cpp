#include "model.hpp"

#include <cmath>
#include <string>
#include <tuple>
#include <utility>

#include "error.hpp"

namespace wocsim {

namespace {

void require_finite(double v, const char* name) {
    if (!std::isfinite(v))
        throw ParameterError(std::string(name) + " must be finite, got " +
                             std::to_string(v));
}

}  // namespace

void ModelParams::validate() const {
    require_finite(alpha, "alpha");
    require_finite(beta, "beta");
    require_finite(noise_d, "noise_d");
    require_finite(dt, "dt");
    if (alpha < 0.0) throw ParameterError("alpha must be >= 0, got " +
                                          std::to_string(alpha));
    if (beta < 0.0) throw ParameterError("beta must be >= 0, got " +
                                         std::to_string(beta));
    if (noise_d < 0.0) throw ParameterError("noise_d must be >= 0, got " +
                                            std::to_string(noise_d));
    if (!(dt > 0.0)) throw ParameterError("dt must be > 0, got " +
                                          std::to_string(dt));
    if (steps_total < 1) throw ParameterError("steps must be >= 1");
    const double stiffness = dt * (alpha + beta);
    if (stiffness > 1.0)
        throw ParameterError(
            "unstable explicit update: dt*(alpha+beta) = " +
            std::to_string(stiffness) + " exceeds 1");
}

void PopulationSpec::validate() const {
    if (n_agents < 2)
        throw ParameterError("n_agents must be >= 2, got " +
                             std::to_string(n_agents));
    require_finite(log_mean, "log_mean");
    require_finite(log_variance, "log_variance");
    if (!(log_variance > 0.0))
        throw ParameterError("log_variance must be > 0, got " +
                             std::to_string(log_variance));
}

PopulationState::PopulationState(std::vector<double> opinions)
    : opinions_(std::move(opinions)), initial_(opinions_) {
    if (opinions_.size() < 2)
        throw ParameterError("population needs at least 2 opinions");
    for (std::size_t i = 0; i < opinions_.size(); ++i) {
        if (!(opinions_[i] > 0.0) || !std::isfinite(opinions_[i]))
            throw ParameterError("initial opinion " + std::to_string(i) +
                                 " is " + std::to_string(opinions_[i]) +
                                 "; opinions must be positive and finite");
    }
}

double PopulationState::arithmetic_mean() const {
    double sum = 0.0;
    for (double x : opinions_) sum += x;
    return sum / double(opinions_.size());
}

PopulationState sample_initial_population(const PopulationSpec& spec) {
    spec.validate();
    const rng::GaussianField field(spec.seed, rng::Stream::population);
    const double sigma = std::sqrt(spec.log_variance);
    std::vector<double> opinions(spec.n_agents);
    for (std::uint32_t i = 0; i < spec.n_agents; ++i)
        opinions[i] = std::exp(spec.log_mean + sigma * field(i, 0));
    return PopulationState(std::move(opinions));
}

double drift(double opinion, double initial_opinion, double population_mean,
             const ModelParams& params) {
    return params.alpha * (population_mean - opinion) +
           params.beta * (initial_opinion - opinion);
}

void advance_in_place(PopulationState& state, const ModelParams& params,
                      const rng::GaussianField& noise) {
    const double mean = state.arithmetic_mean();
    const double amp = params.noise_d * std::sqrt(params.dt);
    const std::uint64_t step_index = state.steps_elapsed_ + 1;
    auto& x = state.opinions_;
    const auto& x0 = state.initial_;
    const std::uint32_t n = std::uint32_t(x.size());
    double pair[2] = {0.0, 0.0};
    for (std::uint32_t i = 0; i < n; ++i) {
        double next = x[i] + params.dt * drift(x[i], x0[i], mean, params);
        if (amp != 0.0) {
            // One Philox block covers the (even, odd) agent pair.
            if ((i & 1u) == 0u)
                std::tie(pair[0], pair[1]) =
                    noise.pair_draw(i >> 1, state.steps_elapsed_);
            next += amp * pair[i & 1u];
        }
        if (!(next > 0.0) || !std::isfinite(next))
            throw PositivityError(step_index, i, next);
        x[i] = next;
    }
    state.steps_elapsed_ = step_index;
    state.time_ = double(step_index) * params.dt;
}

PopulationState step(const PopulationState& state, const ModelParams& params,
                     const rng::GaussianField& noise) {
    params.validate();
    PopulationState next = state;
    advance_in_place(next, params, noise);
    return next;
}

TrajectoryRecord simulate(const PopulationSpec& spec,
                          const ModelParams& params, double truth,
                          std::uint32_t record_every,
                          std::optional<std::uint64_t> noise_seed) {
    params.validate();
    if (record_every < 1)
        throw ParameterError("record_every must be >= 1");
    if (!(truth > 0.0) || !std::isfinite(truth))
        throw ParameterError("truth must be a positive finite real, got " +
                             std::to_string(truth));

    PopulationState state = sample_initial_population(spec);
    const rng::GaussianField noise(noise_seed.value_or(spec.seed),
                                   rng::Stream::noise);

    TrajectoryRecord record;
    record.rows.reserve(std::size_t(params.steps_total / record_every) + 2);
    record.rows.push_back({state.time(),
                           crowd_metrics(state.opinions(), truth)});
    for (std::uint64_t k = 1; k <= params.steps_total; ++k) {
        advance_in_place(state, params, noise);
        if (k % record_every == 0 || k == params.steps_total)
            record.rows.push_back({state.time(),
                                   crowd_metrics(state.opinions(), truth)});
    }
    return record;
}

}  // namespace wocsim
