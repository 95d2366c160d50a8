#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "model.hpp"
#include "sweep.hpp"

// Flat key=value run configuration. One `key = value` per line, `#`
// starts a comment, unknown or duplicated keys are errors naming the key
// and line. The mode selects which keys are required, optional, or
// forbidden:
//
//   all modes        mode, n_agents, log_mean, log_variance, seed,
//                    output (optional)
//   simulate         alpha, beta, noise_d, dt, steps, truth,
//                    record_every (optional, default 10)
//   sweep            noise_d, dt, steps, truth, and optionally
//                    alpha_min/alpha_max/alpha_points (default 0/2/51),
//                    beta_min/beta_max/beta_points (default 0/2/51),
//                    replicates (default 10), master_seed (default:
//                    seed), resample_population (default false);
//                    scalar alpha/beta are forbidden (cells set them)
//   sample           population keys only
//
// Default output paths: timeseries.csv (simulate), heatmap.csv (sweep),
// population.csv (sample).

namespace wocsim {

enum class RunMode { simulate, sweep, sample };

inline bool operator==(const PopulationSpec& a, const PopulationSpec& b) {
    return a.n_agents == b.n_agents && a.log_mean == b.log_mean &&
           a.log_variance == b.log_variance && a.seed == b.seed;
}

inline bool operator==(const ModelParams& a, const ModelParams& b) {
    return a.alpha == b.alpha && a.beta == b.beta &&
           a.noise_d == b.noise_d && a.dt == b.dt &&
           a.steps_total == b.steps_total;
}

struct GridSpec {
    double alpha_min = 0.0, alpha_max = 2.0;
    std::uint32_t alpha_points = 51;
    double beta_min = 0.0, beta_max = 2.0;
    std::uint32_t beta_points = 51;
    std::uint32_t replicates = 10;
    std::uint64_t master_seed = 0;
    bool resample_population = false;

    bool operator==(const GridSpec&) const = default;
};

struct RunConfig {
    RunMode mode = RunMode::simulate;
    PopulationSpec population;
    ModelParams params;  // alpha/beta meaningful in simulate mode only
    double truth = 1.0;
    GridSpec grid;        // meaningful in sweep mode only
    std::string output_path;
    std::uint32_t record_every = 10;

    bool operator==(const RunConfig&) const = default;

    // Grid ready to run (linear axes, base params, population, truth).
    SweepGrid to_sweep_grid() const;
};

// Parses and fully validates a config document (ModelParams invariants
// included). Throws ParseError with the offending key and line.
RunConfig parse_config(std::string_view text);

// Emits a document parse_config maps back to an equal RunConfig.
std::string format_config(const RunConfig& config);

// Valid ready-to-run defaults per mode (the no-information baseline:
// N=100 log-normal estimates with log-mean -3 and log-variance 0.72,
// alpha=0, beta=1, D=1e-3, dt=0.01, 3000 steps).
RunConfig default_config(RunMode mode);

const char* mode_name(RunMode mode);

}  // namespace wocsim
