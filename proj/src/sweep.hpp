#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "model.hpp"

// Grid runner for (alpha, beta) sweeps with replicated runs per cell.
// Cells are independent work items; every random draw derives from
// (master_seed, alpha index, beta index, replicate index), so tables are
// identical for any worker count or scheduling order.

namespace wocsim {

struct SweepGrid {
    std::vector<double> alpha_values;  // strictly ascending, >= 0
    std::vector<double> beta_values;   // strictly ascending, >= 0
    std::uint32_t replicates = 10;
    std::uint64_t master_seed = 0;
    ModelParams base_params;  // alpha/beta overridden per cell
    PopulationSpec population;
    double truth = 1.0;
    // false: one shared population (population.seed) for every replicate
    // of every cell; true: replicate r resamples from a seed derived
    // from (population.seed, r), still shared across cells.
    bool resample_population = false;

    void validate() const;
};

struct SweepCellResult {
    double alpha = 0.0;
    double beta = 0.0;
    double final_error_mean = 0.0;
    double final_error_sd = 0.0;
    double final_diversity_mean = 0.0;
    double final_wisdom_mean = 0.0;
    std::uint32_t replicates_used = 0;
    bool failed = false;
    std::string diagnostic;  // set when failed
};

// Noise seed for one replicate of one cell.
std::uint64_t derive_run_seed(std::uint64_t master_seed,
                              std::size_t alpha_index,
                              std::size_t beta_index, std::uint32_t replicate);

// Population seed for replicate r under resampling.
std::uint64_t derive_population_seed(std::uint64_t population_seed,
                                     std::uint32_t replicate);

// Runs every replicate of one cell and aggregates final-step metrics
// (mean and sample sd; sd = 0 for a single replicate). A positivity
// violation in any replicate marks the cell failed (nan aggregates,
// replicates_used = 0, diagnostic filled) instead of throwing.
SweepCellResult run_cell(const SweepGrid& grid, std::size_t alpha_index,
                         std::size_t beta_index);

// All cells in row-major (beta-fastest) order. workers >= 1 caps the
// number of concurrent cell evaluations. Throws only if every cell
// failed.
std::vector<SweepCellResult> run_sweep(const SweepGrid& grid,
                                       unsigned workers = 1);

// Earliest recorded index k (with a full window after it) such that
// every recorded series stays within tol of its value at k across the
// window: |m_j - m_k| < tol for all j in (k, k+window]. Returns nullopt
// if no index qualifies. A constant trajectory yields 0; a noisy one
// with tiny tol yields nullopt.
std::optional<std::size_t> detect_steady_state(const TrajectoryRecord& record,
                                               std::size_t window, double tol);

}  // namespace wocsim
