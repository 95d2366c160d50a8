#include "sweep.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "error.hpp"
#include "rng.hpp"

namespace wocsim {

namespace {

void require_axis(const std::vector<double>& values, const char* name) {
    if (values.empty())
        throw ParameterError(std::string(name) + " axis is empty");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i]) || values[i] < 0.0)
            throw ParameterError(std::string(name) +
                                 " axis values must be finite and >= 0");
        if (i > 0 && !(values[i] > values[i - 1]))
            throw ParameterError(std::string(name) +
                                 " axis must be strictly ascending");
    }
}

}  // namespace

void SweepGrid::validate() const {
    require_axis(alpha_values, "alpha");
    require_axis(beta_values, "beta");
    if (replicates < 1) throw ParameterError("replicates must be >= 1");
    population.validate();
    if (!(truth > 0.0) || !std::isfinite(truth))
        throw ParameterError("truth must be a positive finite real");
    // the largest cell is the binding one for the stability bound
    ModelParams corner = base_params;
    corner.alpha = alpha_values.back();
    corner.beta = beta_values.back();
    corner.validate();
}

std::uint64_t derive_run_seed(std::uint64_t master_seed,
                              std::size_t alpha_index, std::size_t beta_index,
                              std::uint32_t replicate) {
    std::uint64_t h = rng::splitmix64(master_seed ^ 0x8BADF00DDEADBEEFull);
    h = rng::splitmix64(h ^ std::uint64_t(alpha_index));
    h = rng::splitmix64(h ^ (std::uint64_t(beta_index) << 20));
    h = rng::splitmix64(h ^ (std::uint64_t(replicate) << 40));
    return h;
}

std::uint64_t derive_population_seed(std::uint64_t population_seed,
                                     std::uint32_t replicate) {
    return rng::splitmix64(population_seed ^
                           (0xC0FFEE ^ (std::uint64_t(replicate) << 32)));
}

SweepCellResult run_cell(const SweepGrid& grid, std::size_t alpha_index,
                         std::size_t beta_index) {
    grid.validate();
    if (alpha_index >= grid.alpha_values.size() ||
        beta_index >= grid.beta_values.size())
        throw ParameterError("cell index outside the grid");

    ModelParams params = grid.base_params;
    params.alpha = grid.alpha_values[alpha_index];
    params.beta = grid.beta_values[beta_index];
    params.validate();

    SweepCellResult cell;
    cell.alpha = params.alpha;
    cell.beta = params.beta;

    std::vector<double> errors, diversities, wisdoms;
    errors.reserve(grid.replicates);
    diversities.reserve(grid.replicates);
    wisdoms.reserve(grid.replicates);
    for (std::uint32_t rep = 0; rep < grid.replicates; ++rep) {
        PopulationSpec spec = grid.population;
        if (grid.resample_population)
            spec.seed = derive_population_seed(spec.seed, rep);
        const std::uint64_t noise_seed =
            derive_run_seed(grid.master_seed, alpha_index, beta_index, rep);
        try {
            // record_every = steps_total keeps only step 0 and the end
            const TrajectoryRecord record =
                simulate(spec, params, grid.truth,
                         std::uint32_t(std::min<std::uint64_t>(
                             params.steps_total,
                             std::numeric_limits<std::uint32_t>::max())),
                         noise_seed);
            const CrowdMetrics& last = record.rows.back().metrics;
            errors.push_back(last.collective_error);
            diversities.push_back(last.group_diversity);
            wisdoms.push_back(double(last.wisdom_indicator));
        } catch (const PositivityError& err) {
            cell.failed = true;
            cell.diagnostic = "replicate " + std::to_string(rep) + ": " +
                              err.what();
            break;
        }
    }

    if (cell.failed) {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        cell.final_error_mean = nan;
        cell.final_error_sd = nan;
        cell.final_diversity_mean = nan;
        cell.final_wisdom_mean = nan;
        cell.replicates_used = 0;
        return cell;
    }

    const double n = double(errors.size());
    auto mean_of = [n](const std::vector<double>& v) {
        double s = 0.0;
        for (double x : v) s += x;
        return s / n;
    };
    cell.final_error_mean = mean_of(errors);
    cell.final_diversity_mean = mean_of(diversities);
    cell.final_wisdom_mean = mean_of(wisdoms);
    if (errors.size() > 1) {
        double ss = 0.0;
        for (double x : errors) {
            const double d = x - cell.final_error_mean;
            ss += d * d;
        }
        cell.final_error_sd = std::sqrt(ss / (n - 1.0));
    }
    cell.replicates_used = std::uint32_t(errors.size());
    return cell;
}

std::vector<SweepCellResult> run_sweep(const SweepGrid& grid,
                                       unsigned workers) {
    grid.validate();
    if (workers < 1) throw ParameterError("workers must be >= 1");

    const std::size_t n_alpha = grid.alpha_values.size();
    const std::size_t n_beta = grid.beta_values.size();
    const std::size_t n_cells = n_alpha * n_beta;
    std::vector<SweepCellResult> results(n_cells);

    // results land at fixed row-major (beta-fastest) slots, so assembly
    // order never depends on which worker finishes first
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_failure;
    std::mutex failure_mutex;
    auto work = [&] {
        for (;;) {
            const std::size_t cell = next.fetch_add(1);
            if (cell >= n_cells) return;
            try {
                results[cell] =
                    run_cell(grid, cell / n_beta, cell % n_beta);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!first_failure)
                    first_failure = std::current_exception();
                return;
            }
        }
    };

    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        const unsigned count =
            unsigned(std::min<std::size_t>(workers, n_cells));
        pool.reserve(count);
        for (unsigned i = 0; i < count; ++i) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    if (first_failure) std::rethrow_exception(first_failure);

    std::size_t failed = 0;
    for (const auto& cell : results)
        if (cell.failed) ++failed;
    if (failed == n_cells)
        throw Error(ErrorCode::internal,
                    "every sweep cell failed; first diagnostic: " +
                        results.front().diagnostic);
    return results;
}

std::optional<std::size_t> detect_steady_state(const TrajectoryRecord& record,
                                               std::size_t window,
                                               double tol) {
    if (record.rows.empty())
        throw ParameterError("trajectory is empty");
    if (window < 1) throw ParameterError("window must be >= 1");
    if (!(tol > 0.0)) throw ParameterError("tol must be > 0");

    const auto& rows = record.rows;
    if (rows.size() <= window) return std::nullopt;
    auto series = [](const TrajectoryRow& row, int which) {
        switch (which) {
            case 0: return row.metrics.collective_error;
            case 1: return row.metrics.group_diversity;
            case 2: return double(row.metrics.wisdom_indicator);
            case 3: return row.metrics.arithmetic_mean;
            default: return row.metrics.geometric_mean;
        }
    };
    for (std::size_t k = 0; k + window < rows.size(); ++k) {
        bool quiet = true;
        for (std::size_t j = k + 1; j <= k + window && quiet; ++j)
            for (int m = 0; m < 5 && quiet; ++m)
                if (!(std::abs(series(rows[j], m) - series(rows[k], m)) <
                      tol))
                    quiet = false;
        if (quiet) return k;
    }
    return std::nullopt;
}

}  // namespace wocsim
