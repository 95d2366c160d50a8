#include "config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <vector>

#include "error.hpp"

namespace wocsim {

namespace {

struct Entry {
    std::string value;
    std::size_t line;
};

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

[[noreturn]] void fail(const std::string& what, std::size_t line) {
    throw ParseError("config line " + std::to_string(line) + ": " + what,
                     line);
}

std::map<std::string, Entry, std::less<>> tokenize(std::string_view text) {
    std::map<std::string, Entry, std::less<>> entries;
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const std::size_t eol = text.find('\n');
        std::string_view line = text.substr(0, eol);
        text.remove_prefix(eol == std::string_view::npos ? text.size()
                                                         : eol + 1);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (const std::size_t hash = line.find('#');
            hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos)
            fail("expected `key = value`", line_no);
        const std::string key{trim(line.substr(0, eq))};
        const std::string value{trim(line.substr(eq + 1))};
        if (key.empty()) fail("empty key", line_no);
        if (value.empty()) fail("key `" + key + "` has no value", line_no);
        if (const auto [it, inserted] =
                entries.insert({key, Entry{value, line_no}});
            !inserted)
            fail("duplicate key `" + key + "` (first on line " +
                     std::to_string(it->second.line) + ")",
                 line_no);
    }
    return entries;
}

double parse_real(const Entry& e, const std::string& key) {
    double out = 0.0;
    const char* begin = e.value.data();
    const char* end = begin + e.value.size();
    const auto [ptr, ec] = std::from_chars(begin, end, out);
    if (ec != std::errc{} || ptr != end || !std::isfinite(out))
        fail("key `" + key + "` expects a finite real, got `" + e.value + "`",
             e.line);
    return out;
}

std::uint64_t parse_u64(const Entry& e, const std::string& key) {
    std::uint64_t out = 0;
    const char* begin = e.value.data();
    const char* end = begin + e.value.size();
    const auto [ptr, ec] = std::from_chars(begin, end, out);
    if (ec != std::errc{} || ptr != end)
        fail("key `" + key + "` expects an unsigned integer, got `" +
                 e.value + "`",
             e.line);
    return out;
}

std::uint32_t parse_u32(const Entry& e, const std::string& key) {
    const std::uint64_t wide = parse_u64(e, key);
    if (wide > 0xFFFFFFFFull)
        fail("key `" + key + "` value " + e.value + " is out of range",
             e.line);
    return std::uint32_t(wide);
}

bool parse_bool(const Entry& e, const std::string& key) {
    if (e.value == "true") return true;
    if (e.value == "false") return false;
    fail("key `" + key + "` expects true or false, got `" + e.value + "`",
         e.line);
}

enum class Presence { required, optional, forbidden };

struct KeyRule {
    const char* name;
    Presence in_simulate;
    Presence in_sweep;
    Presence in_sample;
};

constexpr KeyRule kSchema[] = {
    {"mode", Presence::required, Presence::required, Presence::required},
    {"n_agents", Presence::required, Presence::required, Presence::required},
    {"log_mean", Presence::required, Presence::required, Presence::required},
    {"log_variance", Presence::required, Presence::required,
     Presence::required},
    {"seed", Presence::required, Presence::required, Presence::required},
    {"alpha", Presence::required, Presence::forbidden, Presence::forbidden},
    {"beta", Presence::required, Presence::forbidden, Presence::forbidden},
    {"noise_d", Presence::required, Presence::required, Presence::forbidden},
    {"dt", Presence::required, Presence::required, Presence::forbidden},
    {"steps", Presence::required, Presence::required, Presence::forbidden},
    {"truth", Presence::required, Presence::required, Presence::forbidden},
    {"record_every", Presence::optional, Presence::forbidden,
     Presence::forbidden},
    {"alpha_min", Presence::forbidden, Presence::optional,
     Presence::forbidden},
    {"alpha_max", Presence::forbidden, Presence::optional,
     Presence::forbidden},
    {"alpha_points", Presence::forbidden, Presence::optional,
     Presence::forbidden},
    {"beta_min", Presence::forbidden, Presence::optional,
     Presence::forbidden},
    {"beta_max", Presence::forbidden, Presence::optional,
     Presence::forbidden},
    {"beta_points", Presence::forbidden, Presence::optional,
     Presence::forbidden},
    {"replicates", Presence::forbidden, Presence::optional,
     Presence::forbidden},
    {"master_seed", Presence::forbidden, Presence::optional,
     Presence::forbidden},
    {"resample_population", Presence::forbidden, Presence::optional,
     Presence::forbidden},
    {"output", Presence::optional, Presence::optional, Presence::optional},
};

Presence presence_for(const KeyRule& rule, RunMode mode) {
    switch (mode) {
        case RunMode::simulate: return rule.in_simulate;
        case RunMode::sweep: return rule.in_sweep;
        case RunMode::sample: return rule.in_sample;
    }
    return Presence::forbidden;
}

const KeyRule* find_rule(std::string_view key) {
    for (const auto& rule : kSchema)
        if (key == rule.name) return &rule;
    return nullptr;
}

}  // namespace

const char* mode_name(RunMode mode) {
    switch (mode) {
        case RunMode::simulate: return "simulate";
        case RunMode::sweep: return "sweep";
        case RunMode::sample: return "sample";
    }
    return "?";
}

RunConfig parse_config(std::string_view text) {
    auto entries = tokenize(text);

    const auto mode_it = entries.find("mode");
    if (mode_it == entries.end()) {
        std::string missing = "missing required keys:";
        for (const char* key :
             {"mode", "n_agents", "log_mean", "log_variance", "seed"})
            if (!entries.contains(key)) missing += std::string(" ") + key;
        throw ParseError("config: " + missing +
                             " (further requirements depend on mode)",
                         0);
    }
    RunMode mode;
    if (mode_it->second.value == "simulate") mode = RunMode::simulate;
    else if (mode_it->second.value == "sweep") mode = RunMode::sweep;
    else if (mode_it->second.value == "sample") mode = RunMode::sample;
    else
        fail("key `mode` expects simulate, sweep or sample, got `" +
                 mode_it->second.value + "`",
             mode_it->second.line);

    for (const auto& [key, entry] : entries) {
        const KeyRule* rule = find_rule(key);
        if (!rule) fail("unknown key `" + key + "`", entry.line);
        if (presence_for(*rule, mode) == Presence::forbidden)
            fail("key `" + key + "` is not allowed in " +
                     std::string(mode_name(mode)) + " mode",
                 entry.line);
    }

    std::string missing;
    for (const auto& rule : kSchema)
        if (presence_for(rule, mode) == Presence::required &&
            !entries.contains(rule.name))
            missing += std::string(missing.empty() ? "" : " ") + rule.name;
    if (!missing.empty())
        throw ParseError("config: missing required keys: " + missing, 0);

    auto entry = [&](const char* key) -> const Entry& {
        return entries.find(key)->second;
    };
    auto has = [&](const char* key) { return entries.contains(key); };
    auto check = [&](bool ok, const char* key, const std::string& what) {
        if (!ok) fail(std::string("key `") + key + "` " + what,
                      entry(key).line);
    };

    RunConfig config;
    config.mode = mode;
    config.population.n_agents = parse_u32(entry("n_agents"), "n_agents");
    check(config.population.n_agents >= 2, "n_agents", "must be >= 2");
    config.population.log_mean = parse_real(entry("log_mean"), "log_mean");
    config.population.log_variance =
        parse_real(entry("log_variance"), "log_variance");
    check(config.population.log_variance > 0.0, "log_variance",
          "must be > 0");
    config.population.seed = parse_u64(entry("seed"), "seed");

    if (mode != RunMode::sample) {
        config.params.noise_d = parse_real(entry("noise_d"), "noise_d");
        check(config.params.noise_d >= 0.0, "noise_d", "must be >= 0");
        config.params.dt = parse_real(entry("dt"), "dt");
        check(config.params.dt > 0.0, "dt", "must be > 0");
        config.params.steps_total = parse_u64(entry("steps"), "steps");
        check(config.params.steps_total >= 1, "steps", "must be >= 1");
        config.truth = parse_real(entry("truth"), "truth");
        check(config.truth > 0.0, "truth", "must be > 0");
    }

    if (mode == RunMode::simulate) {
        config.params.alpha = parse_real(entry("alpha"), "alpha");
        check(config.params.alpha >= 0.0, "alpha", "must be >= 0");
        config.params.beta = parse_real(entry("beta"), "beta");
        check(config.params.beta >= 0.0, "beta", "must be >= 0");
        if (has("record_every")) {
            config.record_every =
                parse_u32(entry("record_every"), "record_every");
            check(config.record_every >= 1, "record_every", "must be >= 1");
        }
        const double stiffness =
            config.params.dt * (config.params.alpha + config.params.beta);
        if (stiffness > 1.0)
            fail("unstable explicit update: dt*(alpha+beta) = " +
                     std::to_string(stiffness) + " exceeds 1",
                 entry("dt").line);
    }

    if (mode == RunMode::sweep) {
        GridSpec& grid = config.grid;
        if (has("alpha_min"))
            grid.alpha_min = parse_real(entry("alpha_min"), "alpha_min");
        if (has("alpha_max"))
            grid.alpha_max = parse_real(entry("alpha_max"), "alpha_max");
        if (has("alpha_points"))
            grid.alpha_points =
                parse_u32(entry("alpha_points"), "alpha_points");
        if (has("beta_min"))
            grid.beta_min = parse_real(entry("beta_min"), "beta_min");
        if (has("beta_max"))
            grid.beta_max = parse_real(entry("beta_max"), "beta_max");
        if (has("beta_points"))
            grid.beta_points = parse_u32(entry("beta_points"), "beta_points");
        if (has("replicates"))
            grid.replicates = parse_u32(entry("replicates"), "replicates");
        grid.master_seed = has("master_seed")
                               ? parse_u64(entry("master_seed"),
                                           "master_seed")
                               : config.population.seed;
        if (has("resample_population"))
            grid.resample_population =
                parse_bool(entry("resample_population"),
                           "resample_population");

        auto check_axis = [&](double lo, double hi, std::uint32_t points,
                              const char* min_key, const char* points_key) {
            std::size_t line = 0;
            if (has(min_key)) line = entry(min_key).line;
            if (points < 1) fail(std::string("key `") + points_key +
                                     "` must be >= 1",
                                 has(points_key) ? entry(points_key).line
                                                 : line);
            if (lo < 0.0)
                fail(std::string("key `") + min_key + "` must be >= 0",
                     line);
            if (points == 1 ? lo != hi : !(lo < hi))
                fail(std::string("grid axis `") + min_key +
                         "`: need min < max (or min == max with 1 point)",
                     line);
        };
        check_axis(grid.alpha_min, grid.alpha_max, grid.alpha_points,
                   "alpha_min", "alpha_points");
        check_axis(grid.beta_min, grid.beta_max, grid.beta_points,
                   "beta_min", "beta_points");
        check(grid.replicates >= 1, "replicates", "must be >= 1");

        const double stiffness =
            config.params.dt * (grid.alpha_max + grid.beta_max);
        if (stiffness > 1.0)
            fail("unstable explicit update at the grid corner: "
                 "dt*(alpha_max+beta_max) = " +
                     std::to_string(stiffness) + " exceeds 1",
                 entry("dt").line);
    }

    config.output_path =
        has("output") ? entry("output").value
        : mode == RunMode::simulate ? "timeseries.csv"
        : mode == RunMode::sweep    ? "heatmap.csv"
                                    : "population.csv";
    return config;
}

namespace {

std::vector<double> linear_axis(double lo, double hi, std::uint32_t points) {
    std::vector<double> values(points);
    if (points == 1) {
        values[0] = lo;
        return values;
    }
    for (std::uint32_t i = 0; i < points; ++i)
        values[i] = lo + (hi - lo) * double(i) / double(points - 1);
    return values;
}

std::string real_text(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

SweepGrid RunConfig::to_sweep_grid() const {
    SweepGrid sweep;
    sweep.alpha_values =
        linear_axis(grid.alpha_min, grid.alpha_max, grid.alpha_points);
    sweep.beta_values =
        linear_axis(grid.beta_min, grid.beta_max, grid.beta_points);
    sweep.replicates = grid.replicates;
    sweep.master_seed = grid.master_seed;
    sweep.base_params = params;
    sweep.base_params.alpha = 0.0;
    sweep.base_params.beta = 0.0;
    sweep.population = population;
    sweep.truth = truth;
    sweep.resample_population = grid.resample_population;
    return sweep;
}

RunConfig default_config(RunMode mode) {
    RunConfig config;
    config.mode = mode;
    config.population.n_agents = 100;
    config.population.log_mean = -3.0;
    config.population.log_variance = 0.72;
    config.population.seed = 42;
    config.params.alpha = 0.0;
    config.params.beta = 1.0;
    config.params.noise_d = 1e-3;
    config.params.dt = 0.01;
    config.params.steps_total = 3000;
    config.truth = 0.055023220056407226;  // exp(-2.9)
    config.record_every = 10;
    config.grid.master_seed = config.population.seed;
    config.output_path = mode == RunMode::simulate ? "timeseries.csv"
                         : mode == RunMode::sweep  ? "heatmap.csv"
                                                   : "population.csv";
    if (mode == RunMode::sample) {
        config.params = ModelParams{};
        config.truth = 1.0;
        config.grid = GridSpec{};
    }
    if (mode == RunMode::simulate) config.grid = GridSpec{};
    if (mode == RunMode::sweep) {
        // cells own alpha/beta; the scalars stay at their zero defaults
        config.params.alpha = 0.0;
        config.params.beta = 0.0;
    }
    return config;
}

std::string format_config(const RunConfig& config) {
    std::ostringstream out;
    out << "mode = " << mode_name(config.mode) << "\n";
    out << "n_agents = " << config.population.n_agents << "\n";
    out << "log_mean = " << real_text(config.population.log_mean) << "\n";
    out << "log_variance = " << real_text(config.population.log_variance)
        << "\n";
    out << "seed = " << config.population.seed << "\n";
    if (config.mode != RunMode::sample) {
        out << "noise_d = " << real_text(config.params.noise_d) << "\n";
        out << "dt = " << real_text(config.params.dt) << "\n";
        out << "steps = " << config.params.steps_total << "\n";
        out << "truth = " << real_text(config.truth) << "\n";
    }
    if (config.mode == RunMode::simulate) {
        out << "alpha = " << real_text(config.params.alpha) << "\n";
        out << "beta = " << real_text(config.params.beta) << "\n";
        out << "record_every = " << config.record_every << "\n";
    }
    if (config.mode == RunMode::sweep) {
        out << "alpha_min = " << real_text(config.grid.alpha_min) << "\n";
        out << "alpha_max = " << real_text(config.grid.alpha_max) << "\n";
        out << "alpha_points = " << config.grid.alpha_points << "\n";
        out << "beta_min = " << real_text(config.grid.beta_min) << "\n";
        out << "beta_max = " << real_text(config.grid.beta_max) << "\n";
        out << "beta_points = " << config.grid.beta_points << "\n";
        out << "replicates = " << config.grid.replicates << "\n";
        out << "master_seed = " << config.grid.master_seed << "\n";
        out << "resample_population = "
            << (config.grid.resample_population ? "true" : "false") << "\n";
    }
    out << "output = " << config.output_path << "\n";
    return out.str();
}

}  // namespace wocsim
