// C ABI for the wocsim core. Opaque handles wrap the C++ types; every
// boundary catches exceptions and maps them to wocsim_status, stashing
// the message in a thread-local slot for wocsim_last_error().
#include "wocsim.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <fstream>
#include <memory>
#include <new>
#include <sstream>
#include <string>
#include <utility>

#include "config.hpp"
#include "csv.hpp"
#include "error.hpp"
#include "model.hpp"
#include "sweep.hpp"

struct wocsim_config {
    wocsim::RunConfig cfg;
    std::string mode_text;
};

struct wocsim_trajectory {
    wocsim::TrajectoryRecord record;
};

struct wocsim_sweep_result {
    std::vector<wocsim::SweepCellResult> cells;
};

namespace {

thread_local std::string t_last_error;

wocsim_status fail(wocsim_status status, const std::string& message) {
    t_last_error = message;
    return status;
}

wocsim_status fail_current_exception() {
    try {
        throw;
    } catch (const wocsim::Error& e) {
        return fail(static_cast<wocsim_status>(static_cast<int>(e.code())),
                    e.what());
    } catch (const std::bad_alloc&) {
        return fail(WOCSIM_E_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(WOCSIM_E_INTERNAL, e.what());
    } catch (...) {
        return fail(WOCSIM_E_INTERNAL, "unknown error");
    }
}

wocsim_status require(bool ok, const char* message) {
    if (ok) return WOCSIM_OK;
    return fail(WOCSIM_E_INVALID_ARGUMENT, message);
}

// Copies a std::string into a malloc'd buffer for wocsim_string_free.
char* dup_string(const std::string& text) {
    char* out = static_cast<char*>(std::malloc(text.size() + 1));
    if (out == nullptr) throw std::bad_alloc();
    std::memcpy(out, text.c_str(), text.size() + 1);
    return out;
}

}  // namespace

extern "C" {

const char* wocsim_version(void) { return "0.1.0"; }

const char* wocsim_status_name(wocsim_status status) {
    switch (status) {
        case WOCSIM_OK: return "ok";
        case WOCSIM_E_INVALID_ARGUMENT: return "invalid_argument";
        case WOCSIM_E_PARSE: return "parse";
        case WOCSIM_E_POSITIVITY: return "positivity";
        case WOCSIM_E_IO: return "io";
        case WOCSIM_E_INTERNAL: return "internal";
    }
    return "unknown";
}

const char* wocsim_last_error(void) { return t_last_error.c_str(); }

wocsim_status wocsim_config_parse_text(const char* text, wocsim_config** out) {
    if (auto s = require(text != nullptr, "text must not be null")) return s;
    if (auto s = require(out != nullptr, "out must not be null")) return s;
    try {
        auto handle = std::make_unique<wocsim_config>();
        handle->cfg = wocsim::parse_config(text);
        handle->mode_text = wocsim::mode_name(handle->cfg.mode);
        *out = handle.release();
        return WOCSIM_OK;
    } catch (...) {
        return fail_current_exception();
    }
}

wocsim_status wocsim_config_parse_file(const char* path, wocsim_config** out) {
    if (auto s = require(path != nullptr, "path must not be null")) return s;
    if (auto s = require(out != nullptr, "out must not be null")) return s;
    try {
        std::ifstream in(path, std::ios::binary);
        if (!in) {
            throw wocsim::IoError(std::string("cannot open config file `") +
                                  path + "`");
        }
        std::ostringstream text;
        text << in.rdbuf();
        if (in.bad()) {
            throw wocsim::IoError(std::string("failed reading config file `") +
                                  path + "`");
        }
        return wocsim_config_parse_text(text.str().c_str(), out);
    } catch (...) {
        return fail_current_exception();
    }
}

void wocsim_config_free(wocsim_config* config) { delete config; }

const char* wocsim_config_mode(const wocsim_config* config) {
    if (config == nullptr) return "";
    return config->mode_text.c_str();
}

const char* wocsim_config_output(const wocsim_config* config) {
    if (config == nullptr) return "";
    return config->cfg.output_path.c_str();
}

wocsim_status wocsim_config_set_seed(wocsim_config* config, uint64_t seed) {
    if (auto s = require(config != nullptr, "config must not be null"))
        return s;
    config->cfg.population.seed = seed;
    return WOCSIM_OK;
}

wocsim_status wocsim_config_set_output(wocsim_config* config,
                                       const char* path) {
    if (auto s = require(config != nullptr, "config must not be null"))
        return s;
    if (auto s = require(path != nullptr && *path != '\0',
                         "output path must not be empty"))
        return s;
    config->cfg.output_path = path;
    return WOCSIM_OK;
}

wocsim_status wocsim_config_format(const wocsim_config* config,
                                   char** text_out) {
    if (auto s = require(config != nullptr, "config must not be null"))
        return s;
    if (auto s = require(text_out != nullptr, "text_out must not be null"))
        return s;
    try {
        *text_out = dup_string(wocsim::format_config(config->cfg));
        return WOCSIM_OK;
    } catch (...) {
        return fail_current_exception();
    }
}

void wocsim_string_free(char* text) { std::free(text); }

wocsim_status wocsim_simulate(const wocsim_config* config,
                              wocsim_trajectory** out) {
    if (auto s = require(config != nullptr, "config must not be null"))
        return s;
    if (auto s = require(out != nullptr, "out must not be null")) return s;
    if (auto s = require(config->cfg.mode == wocsim::RunMode::simulate,
                         "config mode must be `simulate`"))
        return s;
    try {
        auto handle = std::make_unique<wocsim_trajectory>();
        handle->record =
            wocsim::simulate(config->cfg.population, config->cfg.params,
                             config->cfg.truth, config->cfg.record_every);
        *out = handle.release();
        return WOCSIM_OK;
    } catch (...) {
        return fail_current_exception();
    }
}

size_t wocsim_trajectory_size(const wocsim_trajectory* trajectory) {
    if (trajectory == nullptr) return 0;
    return trajectory->record.rows.size();
}

wocsim_status wocsim_trajectory_row(const wocsim_trajectory* trajectory,
                                    size_t index, wocsim_metrics_row* out) {
    if (auto s = require(trajectory != nullptr, "trajectory must not be null"))
        return s;
    if (auto s = require(out != nullptr, "out must not be null")) return s;
    if (auto s = require(index < trajectory->record.rows.size(),
                         "row index out of range"))
        return s;
    const auto& row = trajectory->record.rows[index];
    out->time = row.time;
    out->collective_error = row.metrics.collective_error;
    out->group_diversity = row.metrics.group_diversity;
    out->wisdom_indicator = row.metrics.wisdom_indicator;
    out->arithmetic_mean = row.metrics.arithmetic_mean;
    out->geometric_mean = row.metrics.geometric_mean;
    return WOCSIM_OK;
}

wocsim_status wocsim_trajectory_write_csv(const wocsim_trajectory* trajectory,
                                          const char* path) {
    if (auto s = require(trajectory != nullptr, "trajectory must not be null"))
        return s;
    if (auto s = require(path != nullptr && *path != '\0',
                         "output path must not be empty"))
        return s;
    try {
        wocsim::write_file_atomic(path, [&](std::ostream& out) {
            wocsim::emit_timeseries_csv(trajectory->record, out);
        });
        return WOCSIM_OK;
    } catch (...) {
        return fail_current_exception();
    }
}

void wocsim_trajectory_free(wocsim_trajectory* trajectory) {
    delete trajectory;
}

wocsim_status wocsim_sweep_run(const wocsim_config* config, int workers,
                               wocsim_sweep_result** out) {
    if (auto s = require(config != nullptr, "config must not be null"))
        return s;
    if (auto s = require(out != nullptr, "out must not be null")) return s;
    if (auto s = require(config->cfg.mode == wocsim::RunMode::sweep,
                         "config mode must be `sweep`"))
        return s;
    if (auto s = require(workers >= 1, "workers must be >= 1")) return s;
    try {
        auto handle = std::make_unique<wocsim_sweep_result>();
        handle->cells = wocsim::run_sweep(config->cfg.to_sweep_grid(),
                                          static_cast<unsigned>(workers));
        *out = handle.release();
        return WOCSIM_OK;
    } catch (...) {
        return fail_current_exception();
    }
}

size_t wocsim_sweep_size(const wocsim_sweep_result* result) {
    if (result == nullptr) return 0;
    return result->cells.size();
}

wocsim_status wocsim_sweep_cell_at(const wocsim_sweep_result* result,
                                   size_t index, wocsim_sweep_cell* out) {
    if (auto s = require(result != nullptr, "result must not be null"))
        return s;
    if (auto s = require(out != nullptr, "out must not be null")) return s;
    if (auto s = require(index < result->cells.size(),
                         "cell index out of range"))
        return s;
    const auto& cell = result->cells[index];
    out->alpha = cell.alpha;
    out->beta = cell.beta;
    out->final_error_mean = cell.final_error_mean;
    out->final_error_sd = cell.final_error_sd;
    out->final_diversity_mean = cell.final_diversity_mean;
    out->final_wisdom_mean = cell.final_wisdom_mean;
    out->replicates = static_cast<int32_t>(cell.replicates_used);
    out->failed = cell.failed ? 1 : 0;
    return WOCSIM_OK;
}

wocsim_status wocsim_sweep_write_csv(const wocsim_sweep_result* result,
                                     const char* path) {
    if (auto s = require(result != nullptr, "result must not be null"))
        return s;
    if (auto s = require(path != nullptr && *path != '\0',
                         "output path must not be empty"))
        return s;
    try {
        wocsim::write_file_atomic(path, [&](std::ostream& out) {
            wocsim::emit_heatmap_csv(result->cells, out);
        });
        return WOCSIM_OK;
    } catch (...) {
        return fail_current_exception();
    }
}

void wocsim_sweep_result_free(wocsim_sweep_result* result) { delete result; }

wocsim_status wocsim_sample_write_csv(const wocsim_config* config,
                                      const char* path) {
    if (auto s = require(config != nullptr, "config must not be null"))
        return s;
    if (auto s = require(path != nullptr && *path != '\0',
                         "output path must not be empty"))
        return s;
    try {
        auto population =
            wocsim::sample_initial_population(config->cfg.population);
        wocsim::write_file_atomic(path, [&](std::ostream& out) {
            wocsim::emit_population_csv(population, out);
        });
        return WOCSIM_OK;
    } catch (...) {
        return fail_current_exception();
    }
}

}  // extern "C"
