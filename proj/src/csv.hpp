#pragma once

#include <filesystem>
#include <functional>
#include <ostream>
#include <span>
#include <string>

#include "model.hpp"
#include "sweep.hpp"

// CSV emission. Bit-exact contract: reals carry 17 significant digits
// (%.17g, parse-exact for doubles), LF line endings, trailing newline.
// File variants write to `<path>.tmp` and rename into place only on
// success, so a failed run never leaves a partial output file.

namespace wocsim {

// One double, 17 significant digits, round-trippable.
std::string format_real(double value);

// header: time,collective_error,group_diversity,wisdom_indicator,
//         arithmetic_mean,geometric_mean
void emit_timeseries_csv(const TrajectoryRecord& record, std::ostream& sink);

// header: alpha,beta,final_error_mean,final_error_sd,
//         final_diversity_mean,final_wisdom_mean,replicates
// Failed cells carry nan aggregates and replicates=0.
void emit_heatmap_csv(std::span<const SweepCellResult> results,
                      std::ostream& sink);

// header: opinion; one initial opinion per line.
void emit_population_csv(const PopulationState& population,
                         std::ostream& sink);

// Runs writer against a temp file next to path, then renames over path.
// Throws IoError (temp removed) if the writer throws or the sink fails.
void write_file_atomic(const std::filesystem::path& path,
                       const std::function<void(std::ostream&)>& writer);

}  // namespace wocsim
