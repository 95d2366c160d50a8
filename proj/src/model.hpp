#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "metrics.hpp"
#include "rng.hpp"

// Mean-field opinion dynamics. Each agent holds a positive estimate
// x_i(t) pulled toward the population arithmetic mean (strength alpha,
// "social influence") and back toward its own initial estimate (strength
// beta, "individual conviction"), plus additive white noise:
//
//   x_i(t+dt) = x_i(t) + dt*alpha*(<x(t)> - x_i(t))
//                      + dt*beta*(x_i(0) - x_i(t))
//                      + D*sqrt(dt)*g_i(t),   g_i ~ N(0,1)
//
// integrated with the explicit Euler-Maruyama update above, all agents
// advanced simultaneously from the pre-step mean.

namespace wocsim {

struct ModelParams {
    double alpha = 0.0;    // coupling to the population mean, >= 0
    double beta = 0.0;     // restoring force toward x_i(0), >= 0
    double noise_d = 0.0;  // noise amplitude D, >= 0
    double dt = 0.01;      // time step, > 0
    std::uint64_t steps_total = 0;  // >= 1

    // Throws ParameterError on any violation, including the explicit-
    // integrator stability bound dt*(alpha+beta) <= 1 (beyond it the
    // deterministic contraction factor leaves [0, 1)).
    void validate() const;
};

struct PopulationSpec {
    std::uint32_t n_agents = 0;  // >= 2
    double log_mean = 0.0;       // mean of ln x(0)
    double log_variance = 1.0;   // variance of ln x(0), > 0
    std::uint64_t seed = 0;

    void validate() const;
};

// Opinion vector plus the frozen initial opinions the conviction term
// anchors to. time is steps_elapsed * dt, kept exact.
class PopulationState {
  public:
    // initial state; opinions must be finite and positive, size >= 2.
    explicit PopulationState(std::vector<double> opinions);

    std::span<const double> opinions() const { return opinions_; }
    std::span<const double> initial_opinions() const { return initial_; }
    std::uint32_t size() const { return std::uint32_t(opinions_.size()); }
    std::uint64_t steps_elapsed() const { return steps_elapsed_; }
    double time() const { return time_; }
    double arithmetic_mean() const;

  private:
    friend void advance_in_place(PopulationState&, const ModelParams&,
                                 const rng::GaussianField&);
    std::vector<double> opinions_;
    std::vector<double> initial_;
    std::uint64_t steps_elapsed_ = 0;
    double time_ = 0.0;
};

// Draws n_agents opinions as exp(log_mean + sqrt(log_variance) * g_i)
// with independent standard Gaussians from the spec seed's population
// stream. Identical spec -> bit-identical population.
PopulationState sample_initial_population(const PopulationSpec& spec);

// Deterministic part of the per-agent velocity:
// alpha*(mean - opinion) + beta*(initial - opinion).
double drift(double opinion, double initial_opinion, double population_mean,
             const ModelParams& params);

// One simultaneous Euler-Maruyama update of every agent from the
// pre-step mean. Throws PositivityError (with the 1-based step index) if
// any new opinion leaves the positive domain. Pure: input is untouched.
PopulationState step(const PopulationState& state, const ModelParams& params,
                     const rng::GaussianField& noise);

// In-place variant used by the hot loops; bit-identical to step().
void advance_in_place(PopulationState& state, const ModelParams& params,
                      const rng::GaussianField& noise);

struct TrajectoryRow {
    double time;
    CrowdMetrics metrics;
};

struct TrajectoryRecord {
    std::vector<TrajectoryRow> rows;
};

// Samples the population from spec, runs params.steps_total steps, and
// records metrics at step 0, every record_every steps, and the final
// step. Step noise is keyed by noise_seed when given (sweep replicates),
// otherwise by spec.seed; either way the run is a pure function of its
// arguments. Throws PositivityError if an opinion leaves the domain.
TrajectoryRecord simulate(const PopulationSpec& spec,
                          const ModelParams& params, double truth,
                          std::uint32_t record_every,
                          std::optional<std::uint64_t> noise_seed = {});

}  // namespace wocsim
