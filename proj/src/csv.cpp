#include "csv.hpp"

#include <cstdio>
#include <fstream>

#include "error.hpp"

namespace wocsim {

std::string format_real(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

void emit_timeseries_csv(const TrajectoryRecord& record, std::ostream& sink) {
    if (record.rows.empty())
        throw ParameterError("refusing to emit an empty trajectory");
    sink << "time,collective_error,group_diversity,wisdom_indicator,"
            "arithmetic_mean,geometric_mean\n";
    for (const TrajectoryRow& row : record.rows) {
        const CrowdMetrics& m = row.metrics;
        sink << format_real(row.time) << ','
             << format_real(m.collective_error) << ','
             << format_real(m.group_diversity) << ','
             << m.wisdom_indicator << ','
             << format_real(m.arithmetic_mean) << ','
             << format_real(m.geometric_mean) << '\n';
    }
    if (!sink) throw IoError("time-series sink write failed");
}

void emit_heatmap_csv(std::span<const SweepCellResult> results,
                      std::ostream& sink) {
    sink << "alpha,beta,final_error_mean,final_error_sd,"
            "final_diversity_mean,final_wisdom_mean,replicates\n";
    for (const SweepCellResult& cell : results) {
        sink << format_real(cell.alpha) << ',' << format_real(cell.beta)
             << ',' << format_real(cell.final_error_mean) << ','
             << format_real(cell.final_error_sd) << ','
             << format_real(cell.final_diversity_mean) << ','
             << format_real(cell.final_wisdom_mean) << ','
             << cell.replicates_used << '\n';
    }
    if (!sink) throw IoError("heatmap sink write failed");
}

void emit_population_csv(const PopulationState& population,
                         std::ostream& sink) {
    sink << "opinion\n";
    for (double x : population.initial_opinions())
        sink << format_real(x) << '\n';
    if (!sink) throw IoError("population sink write failed");
}

void write_file_atomic(const std::filesystem::path& path,
                       const std::function<void(std::ostream&)>& writer) {
    const std::filesystem::path tmp = path.native() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open " + tmp.string() +
                                " for writing");
        try {
            writer(out);
            out.flush();
        } catch (...) {
            out.close();
            std::error_code ignored;
            std::filesystem::remove(tmp, ignored);
            throw;
        }
        if (!out) {
            out.close();
            std::error_code ignored;
            std::filesystem::remove(tmp, ignored);
            throw IoError("write to " + tmp.string() + " failed");
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::error_code ignored;
        std::filesystem::remove(tmp, ignored);
        throw IoError("cannot move " + tmp.string() + " to " +
                      path.string() + ": " + ec.message());
    }
}

}  // namespace wocsim
