// wocsim CLI: thin shell over the C API in include/wocsim.h.
// Exit code is 0 on success, otherwise the wocsim_status value, with a
// one-line diagnostic on stderr.
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <memory>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "wocsim.h"

namespace {

int report(wocsim_status status) {
    std::fprintf(stderr, "wocsim: %s: %s\n", wocsim_status_name(status),
                 wocsim_last_error());
    return static_cast<int>(status);
}

int report_usage(const std::string& message) {
    std::fprintf(stderr, "wocsim: invalid_argument: %s\n", message.c_str());
    return static_cast<int>(WOCSIM_E_INVALID_ARGUMENT);
}

using ConfigPtr = std::unique_ptr<wocsim_config, void (*)(wocsim_config*)>;

// Loads the config file and applies CLI overrides shared by all modes.
int load_config(const std::string& path, const std::string& out_override,
                ConfigPtr& config) {
    wocsim_config* raw = nullptr;
    if (auto s = wocsim_config_parse_file(path.c_str(), &raw)) return report(s);
    config = ConfigPtr(raw, &wocsim_config_free);
    if (!out_override.empty()) {
        if (auto s = wocsim_config_set_output(raw, out_override.c_str()))
            return report(s);
    }
    return 0;
}

int require_mode(const wocsim_config* config, const char* subcommand) {
    std::string mode = wocsim_config_mode(config);
    if (mode == subcommand) return 0;
    return report_usage("config has mode=" + mode + "; the `" +
                        std::string(subcommand) + "` subcommand needs mode=" +
                        subcommand);
}

int run_simulate(const std::string& config_path, bool seed_given,
                 std::uint64_t seed, const std::string& out_override) {
    ConfigPtr config(nullptr, &wocsim_config_free);
    if (int rc = load_config(config_path, out_override, config)) return rc;
    if (int rc = require_mode(config.get(), "simulate")) return rc;
    if (seed_given) {
        if (auto s = wocsim_config_set_seed(config.get(), seed))
            return report(s);
    }
    wocsim_trajectory* trajectory = nullptr;
    if (auto s = wocsim_simulate(config.get(), &trajectory)) return report(s);
    std::unique_ptr<wocsim_trajectory, void (*)(wocsim_trajectory*)> guard(
        trajectory, &wocsim_trajectory_free);
    const char* out_path = wocsim_config_output(config.get());
    if (auto s = wocsim_trajectory_write_csv(trajectory, out_path))
        return report(s);
    std::printf("wrote %s (%zu rows)\n", out_path,
                wocsim_trajectory_size(trajectory));
    return 0;
}

// --workers beats WOCSIM_WORKERS beats hardware concurrency.
int resolve_workers(int flag_value, int& workers) {
    if (flag_value > 0) {
        workers = flag_value;
        return 0;
    }
    if (const char* env = std::getenv("WOCSIM_WORKERS")) {
        std::string text(env);
        int value = 0;
        auto [end, ec] =
            std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec != std::errc() || end != text.data() + text.size() ||
            value < 1) {
            return report_usage("WOCSIM_WORKERS must be a positive integer, "
                                "got `" + text + "`");
        }
        workers = value;
        return 0;
    }
    unsigned hw = std::thread::hardware_concurrency();
    workers = hw > 0 ? static_cast<int>(hw) : 1;
    return 0;
}

int run_sweep(const std::string& config_path, int workers_flag,
              const std::string& out_override) {
    ConfigPtr config(nullptr, &wocsim_config_free);
    if (int rc = load_config(config_path, out_override, config)) return rc;
    if (int rc = require_mode(config.get(), "sweep")) return rc;
    int workers = 1;
    if (int rc = resolve_workers(workers_flag, workers)) return rc;
    wocsim_sweep_result* result = nullptr;
    if (auto s = wocsim_sweep_run(config.get(), workers, &result))
        return report(s);
    std::unique_ptr<wocsim_sweep_result, void (*)(wocsim_sweep_result*)> guard(
        result, &wocsim_sweep_result_free);
    const char* out_path = wocsim_config_output(config.get());
    if (auto s = wocsim_sweep_write_csv(result, out_path)) return report(s);
    std::printf("wrote %s (%zu cells)\n", out_path, wocsim_sweep_size(result));
    return 0;
}

int run_sample(const std::string& config_path,
               const std::string& out_override) {
    ConfigPtr config(nullptr, &wocsim_config_free);
    if (int rc = load_config(config_path, out_override, config)) return rc;
    const char* out_path = wocsim_config_output(config.get());
    if (auto s = wocsim_sample_write_csv(config.get(), out_path))
        return report(s);
    std::printf("wrote %s\n", out_path);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"opinion-dynamics simulator (version " +
                 std::string(wocsim_version()) + ")"};
    app.require_subcommand(1);
    app.failure_message(CLI::FailureMessage::simple);

    std::string config_path;
    std::string out_override;
    std::uint64_t seed = 0;
    int workers_flag = 0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "config file (key=value)")
            ->required();
        sub->add_option("--out", out_override,
                        "output CSV path (overrides the config)");
    };

    CLI::App* simulate =
        app.add_subcommand("simulate", "run one trajectory, write metrics CSV");
    add_common(simulate);
    CLI::Option* seed_opt = simulate->add_option(
        "--seed", seed, "population seed override (decimal u64)");

    CLI::App* sweep = app.add_subcommand(
        "sweep", "run a coupling/conviction grid, write heatmap CSV");
    add_common(sweep);
    sweep->add_option("--workers", workers_flag, "concurrent cell workers")
        ->check(CLI::PositiveNumber);

    CLI::App* sample = app.add_subcommand(
        "sample", "write the initial opinion population as CSV");
    add_common(sample);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        // CLI11 returns 0 for --help; map real parse failures onto the
        // invalid-argument status so scripts see a stable code.
        return rc == 0 ? 0 : static_cast<int>(WOCSIM_E_INVALID_ARGUMENT);
    }

    if (simulate->parsed())
        return run_simulate(config_path, seed_opt->count() > 0, seed,
                            out_override);
    if (sweep->parsed()) return run_sweep(config_path, workers_flag,
                                          out_override);
    return run_sample(config_path, out_override);
}
