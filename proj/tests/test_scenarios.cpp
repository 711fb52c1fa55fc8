#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <map>
#include <cmath>
#include <sstream>
#include <string>

#include "errors.hpp"
#include "scenario.hpp"
#include "table.hpp"

using namespace pwcsim;
namespace fs = std::filesystem;

#ifndef PWCSIM_CONFIG_DIR
#define PWCSIM_CONFIG_DIR "."
#endif

namespace {

std::string default_config() {
    return std::string(PWCSIM_CONFIG_DIR) + "/default.cfg";
}

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::path("scenario_test_out") / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

double metric(const RunResult& result, const std::string& name) {
    for (const auto& [key, value] : result.metrics) {
        if (key == name) return value;
    }
    FAIL("missing metric ", name);
    return 0.0;
}

}  // namespace

TEST_CASE("unknown scenarios are rejected before any computation") {
    RunOptions options;
    options.scenario = "does-not-exist";
    options.out_dir = fresh_dir("unknown").string();
    CHECK_THROWS_AS(run_scenario(options), ConfigError);
    CHECK(is_scenario("fringe"));
    CHECK(!is_scenario("Fringe"));
    CHECK(scenario_names().size() == 6);
}

TEST_CASE("fringe scenario reproduces the operating-point visibilities") {
    RunOptions options;
    options.scenario = "fringe";
    options.config_path = default_config();
    options.seed = 42;
    options.out_dir = fresh_dir("fringe").string();
    const auto result = run_scenario(options);

    CHECK(std::abs(metric(result, "v_fit_visible") - 0.98) < 0.01);
    CHECK(std::abs(metric(result, "v_fit_telecom") - 0.99) < 0.01);
    CHECK(std::abs(metric(result, "v_grid_visible") - 0.98) < 0.02);
    CHECK(std::abs(metric(result, "v_grid_telecom") - 0.99) < 0.02);
    CHECK(metric(result, "v_grid_visible_sigma") < 0.01);
    CHECK(metric(result, "v_grid_telecom_sigma") < 0.01);

    // The emitted table re-ingests losslessly.
    const auto table = ingest_csv_file(
        (fs::path(options.out_dir) / "fringe.csv").string());
    CHECK(table.rows.size() == 16);
    require_columns(table, {"scan_phase_rad", "visible_counts", "telecom_counts"});
}

TEST_CASE("identical config and seed give byte-identical outputs") {
    for (const char* scenario : {"fringe", "conversion-curve"}) {
        RunOptions options;
        options.scenario = scenario;
        options.config_path = default_config();
        options.seed = 1234;

        options.out_dir = fresh_dir("det_a").string();
        run_scenario(options);
        options.out_dir = fresh_dir("det_b").string();
        run_scenario(options);

        const std::string stem = std::string(scenario) == "fringe"
                                     ? "fringe"
                                     : "conversion_curve";
        CHECK(slurp(fs::path("scenario_test_out") / "det_a" / (stem + ".csv")) ==
              slurp(fs::path("scenario_test_out") / "det_b" / (stem + ".csv")));
        CHECK(slurp(fs::path("scenario_test_out") / "det_a" /
                    (stem + "_manifest.txt")) ==
              slurp(fs::path("scenario_test_out") / "det_b" /
                    (stem + "_manifest.txt")));
    }
}

TEST_CASE("different seeds give different counts") {
    RunOptions options;
    options.scenario = "fringe";
    options.config_path = default_config();
    options.seed = 1;
    options.out_dir = fresh_dir("seed1").string();
    run_scenario(options);
    options.seed = 2;
    options.out_dir = fresh_dir("seed2").string();
    run_scenario(options);
    CHECK(slurp(fs::path("scenario_test_out") / "seed1" / "fringe.csv") !=
          slurp(fs::path("scenario_test_out") / "seed2" / "fringe.csv"));
}

TEST_CASE("conversion curve peaks near 560 mW") {
    RunOptions options;
    options.scenario = "conversion-curve";
    options.config_path = default_config();
    options.seed = 9;
    options.out_dir = fresh_dir("curve").string();
    const auto result = run_scenario(options);
    CHECK(metric(result, "peak_pump_mw") > 545.0);
    CHECK(metric(result, "peak_pump_mw") < 575.0);
    CHECK(metric(result, "ratio_tt_tv") == doctest::Approx(1.5));
}

TEST_CASE("manifest pins version, seed and resolved config") {
    RunOptions options;
    options.scenario = "fringe";
    options.config_path = default_config();
    options.seed = 7;
    options.out_dir = fresh_dir("manifest").string();
    run_scenario(options);

    const auto manifest =
        slurp(fs::path(options.out_dir) / "fringe_manifest.txt");
    CHECK(manifest.find("tool = pwcsim") != std::string::npos);
    CHECK(manifest.find("seed = 7") != std::string::npos);
    CHECK(manifest.find("config.alpha2 = ") != std::string::npos);
    CHECK(manifest.find("config.pump_power_mw = 165") != std::string::npos);
    CHECK(manifest.find("result.v_grid_visible = ") != std::string::npos);
    CHECK(manifest.find("artifact = fringe.csv") != std::string::npos);
}

TEST_CASE("fit scenario re-ingests an emitted conversion curve") {
    RunOptions curve;
    curve.scenario = "conversion-curve";
    curve.config_path = default_config();
    curve.seed = 11;
    curve.points = 10;
    curve.duration_s = 3.4;  // ~1e4 counts at P = 0
    curve.out_dir = fresh_dir("fit_src").string();
    run_scenario(curve);

    const fs::path fit_dir = fresh_dir("fit_out");
    const fs::path cfg_path = fit_dir / "fit.cfg";
    {
        std::ofstream cfg(cfg_path);
        cfg << "fit_input_csv = "
            << (fs::path(curve.out_dir) / "conversion_curve.csv").string() << "\n"
            << "fit_model = conversion_curve\n";
    }
    RunOptions fit;
    fit.scenario = "fit";
    fit.config_path = cfg_path.string();
    fit.out_dir = fit_dir.string();
    const auto result = run_scenario(fit);
    CHECK(metric(result, "a") == doctest::Approx(0.94).epsilon(0.03));
    CHECK(metric(result, "eta_per_mw") == doctest::Approx(0.0044).epsilon(0.06));
}

TEST_CASE("fit scenario fits noise polynomials from emitted tables") {
    RunOptions noise;
    noise.scenario = "noise-and-net-visibility";
    noise.config_path = default_config();
    noise.seed = 3;
    noise.points = 8;
    noise.duration_s = 20.0;
    noise.out_dir = fresh_dir("noise_src").string();
    run_scenario(noise);

    const fs::path fit_dir = fresh_dir("noise_fit");
    const fs::path cfg_path = fit_dir / "fit.cfg";
    {
        std::ofstream cfg(cfg_path);
        cfg << "fit_input_csv = "
            << (fs::path(noise.out_dir) / "noise_and_net_visibility.csv").string()
            << "\n"
            << "fit_model = noise_polynomial\n";
    }
    RunOptions fit;
    fit.scenario = "fit";
    fit.config_path = cfg_path.string();
    fit.degree = 2;
    fit.out_dir = fit_dir.string();
    const auto result = run_scenario(fit);
    CHECK(metric(result, "series_count") == 2.0);

    const auto table =
        ingest_csv_file((fit_dir / "fit_results.csv").string());
    CHECK(table.rows.size() == 2);
}

TEST_CASE("fit scenario failure modes carry distinct types") {
    RunOptions fit;
    fit.scenario = "fit";
    fit.out_dir = fresh_dir("fit_err").string();
    // No input path configured.
    CHECK_THROWS_AS(run_scenario(fit), ConfigError);

    const fs::path cfg_path = fs::path(fit.out_dir) / "missing.cfg";
    {
        std::ofstream cfg(cfg_path);
        cfg << "fit_input_csv = /no/such/file.csv\n";
    }
    fit.config_path = cfg_path.string();
    CHECK_THROWS_AS(run_scenario(fit), IoError);
}

TEST_CASE("visibility-vs-alpha stays above 0.9 beyond alpha2 = 0.01") {
    RunOptions options;
    options.scenario = "visibility-vs-alpha";
    options.config_path = default_config();
    options.seed = 21;
    options.points = 9;
    options.duration_s = 2.0;
    options.out_dir = fresh_dir("alpha").string();
    const auto result = run_scenario(options);
    CHECK(metric(result, "v_min_visible_above_0p01") > 0.9);
    CHECK(metric(result, "v_min_telecom_above_0p01") > 0.9);
}

TEST_CASE("plots are emitted unless disabled") {
    RunOptions options;
    options.scenario = "fringe";
    options.config_path = default_config();
    options.out_dir = fresh_dir("plot_on").string();
    run_scenario(options);
    CHECK(fs::exists(fs::path(options.out_dir) / "fringe.svg"));

    options.plot = false;
    options.out_dir = fresh_dir("plot_off").string();
    run_scenario(options);
    CHECK(!fs::exists(fs::path(options.out_dir) / "fringe.svg"));
}
