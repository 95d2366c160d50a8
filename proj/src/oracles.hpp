#pragma once

#include <vector>

#include "model.hpp"

// Closed-form references for the deterministic (D=0) limit and the
// uncoupled (alpha=0) noise regime. Tests pit the integrator against
// these independent routes.
//
// Derivation, D=0 case. The update rule in continuous time reads
//   dx_i/dt = alpha*(<x(t)> - x_i) + beta*(x_i(0) - x_i).
// Averaging over agents makes the alpha term vanish (mean coupling to
// the mean), leaving d<x>/dt = beta*(<x(0)> - <x>), so
//   <x(t)> = <x(0)> + (<x(0)> initial offset) ... = <x(0)> exactly when
// <x(0)> is the starting mean; the population mean is invariant.
// Substituting <x(t)> = <x(0)> back turns each agent into an
// independent linear ODE with constant forcing,
//   dx_i/dt = -(alpha+beta)*x_i + alpha*<x(0)> + beta*x_i(0),
// whose fixed point and solution are
//   x_i* = (alpha*<x(0)> + beta*x_i(0)) / (alpha+beta),
//   x_i(t) = x_i* + (x_i(0) - x_i*) * exp(-(alpha+beta)*t).
// Consequences used as test oracles:
//   - mean preservation: <x*> = <x(0)>;
//   - deviations contract at rate alpha+beta;
//   - Var(x*) = (beta/(alpha+beta))^2 * Var(x(0)), since
//     x_i* - <x*> = beta/(alpha+beta) * (x_i(0) - <x(0)>).
//
// alpha=0 case: each opinion is an independent mean-reverting process
// about its own initial value,
//   dx_i = beta*(x_i(0) - x_i) dt + D dW_i,
// with deterministic part
//   E[x_i(t)] = x_i(0) e^{-beta t} + x_i(0) (1 - e^{-beta t}) = x_i(0)
// and stationary variance D^2/(2 beta) (variance of the stationary
// mean-reverting process with reversion rate beta and diffusion D).

namespace wocsim {

struct StationaryPrediction {
    std::vector<double> stationary_opinions;  // x_i*
    double variance_ratio;                    // Var(x*)/Var(x(0))
    double decay_rate;                        // alpha + beta
};

// Deterministic part of the uncoupled process: identically x0.
double ou_no_info_mean(double x0, double beta, double t);

// Stationary variance D^2/(2 beta) of the uncoupled process; beta > 0.
double ou_stationary_variance(double noise_d, double beta);

// Exact D=0 solution at time t >= 0 for every agent. Requires
// alpha+beta > 0 (otherwise the dynamics are frozen and have no decay
// form); t=0 returns the initial opinions exactly.
std::vector<double> deterministic_solution(const PopulationState& initial,
                                           const ModelParams& params,
                                           double t);

// Fixed points, variance ratio and decay rate for the D=0 dynamics.
// Requires alpha+beta > 0; throws ParameterError for the degenerate
// alpha=beta=0 dynamics.
StationaryPrediction stationary_prediction(const PopulationState& initial,
                                           double alpha, double beta);

}  // namespace wocsim
