// Command-line front end.  Talks to the simulator exclusively through the
// shared library's C interface.

#include <cinttypes>
#include <cstdio>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "pwcsim.h"

namespace {

struct RunDeleter {
    void operator()(pwcsim_run* run) const { pwcsim_run_free(run); }
};

std::string scenario_list() {
    std::string out;
    for (size_t i = 0; i < pwcsim_scenario_count(); ++i) {
        if (i) out += ", ";
        out += pwcsim_scenario_name(i);
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pwcsim - partial wavelength converter interferometer "
                 "simulator"};
    app.footer("scenarios: " + scenario_list());

    std::string scenario;
    std::string config_path;
    std::string out_dir = "out";
    std::uint64_t seed = 0;
    int points = 0;
    double duration_s = 0.0;
    int degree = -1;
    bool no_plot = false;

    app.add_option("scenario", scenario, "Scenario to run")->required();
    app.add_option("--config", config_path, "Configuration file (key = value)");
    app.add_option("--seed", seed, "Random seed")->capture_default_str();
    app.add_option("--out", out_dir, "Output directory")->capture_default_str();
    app.add_option("--points", points, "Number of sweep/scan points");
    app.add_option("--duration-s", duration_s, "Accumulation time per point");
    app.add_option("--degree", degree, "Polynomial degree for noise fits");
    app.add_flag("--no-plot", no_plot, "Skip the SVG plot");
    app.set_version_flag("--version", std::string(pwcsim_version()));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : PWCSIM_ERROR_CONFIG;
    }

    std::unique_ptr<pwcsim_run, RunDeleter> run(pwcsim_run_new());
    if (!run) {
        std::fprintf(stderr, "error: out of memory\n");
        return PWCSIM_ERROR_INTERNAL;
    }

    auto fail = [&](pwcsim_status status) -> int {
        std::fprintf(stderr, "error (%s): %s\n", pwcsim_status_name(status),
                     pwcsim_run_last_error(run.get()));
        return static_cast<int>(status);
    };

    pwcsim_status status = pwcsim_run_set_scenario(run.get(), scenario.c_str());
    if (status != PWCSIM_OK) return fail(status);
    if (!config_path.empty()) {
        status = pwcsim_run_set_config_file(run.get(), config_path.c_str());
        if (status != PWCSIM_OK) return fail(status);
    }
    status = pwcsim_run_set_output_dir(run.get(), out_dir.c_str());
    if (status != PWCSIM_OK) return fail(status);
    pwcsim_run_set_seed(run.get(), seed);
    if (points > 0) {
        status = pwcsim_run_set_points(run.get(), points);
        if (status != PWCSIM_OK) return fail(status);
    }
    if (duration_s > 0.0) {
        status = pwcsim_run_set_duration_s(run.get(), duration_s);
        if (status != PWCSIM_OK) return fail(status);
    }
    if (degree >= 0) {
        status = pwcsim_run_set_degree(run.get(), degree);
        if (status != PWCSIM_OK) return fail(status);
    }
    pwcsim_run_set_plot(run.get(), no_plot ? 0 : 1);

    status = pwcsim_run_execute(run.get());
    if (status != PWCSIM_OK) return fail(status);

    std::printf("scenario: %s (seed %" PRIu64 ")\n", scenario.c_str(), seed);
    for (size_t i = 0; i < pwcsim_run_metric_count(run.get()); ++i) {
        std::printf("  %-32s %.6g\n", pwcsim_run_metric_name(run.get(), i),
                    pwcsim_run_metric_value(run.get(), i));
    }
    for (size_t i = 0; i < pwcsim_run_artifact_count(run.get()); ++i) {
        std::printf("  wrote %s/%s\n", out_dir.c_str(),
                    pwcsim_run_artifact_name(run.get(), i));
    }
    return 0;
}
