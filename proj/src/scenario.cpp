#include "scenario.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>

#include "analysis.hpp"
#include "errors.hpp"
#include "svg_plot.hpp"
#include "table.hpp"
#include "version.hpp"

namespace pwcsim {

namespace fs = std::filesystem;

const std::vector<std::string>& scenario_names() {
    static const std::vector<std::string> names = {
        "conversion-curve",          "fringe",
        "visibility-vs-power",       "noise-and-net-visibility",
        "visibility-vs-alpha",       "fit",
    };
    return names;
}

bool is_scenario(const std::string& name) {
    const auto& names = scenario_names();
    return std::find(names.begin(), names.end(), name) != names.end();
}

std::vector<double> phase_grid(int points) {
    std::vector<double> deltas(static_cast<std::size_t>(points));
    for (int k = 0; k < points; ++k) {
        deltas[static_cast<std::size_t>(k)] =
            2.0 * std::numbers::pi * k / points;
    }
    return deltas;
}

std::vector<double> linear_grid(double lo, double hi, int points) {
    std::vector<double> grid(static_cast<std::size_t>(points));
    for (int k = 0; k < points; ++k) {
        grid[static_cast<std::size_t>(k)] =
            points == 1 ? lo : lo + (hi - lo) * k / (points - 1);
    }
    return grid;
}

std::vector<double> log_grid(double lo, double hi, int points) {
    std::vector<double> grid(static_cast<std::size_t>(points));
    const double llo = std::log10(lo);
    const double lhi = std::log10(hi);
    for (int k = 0; k < points; ++k) {
        grid[static_cast<std::size_t>(k)] =
            points == 1 ? lo : std::pow(10.0, llo + (lhi - llo) * k / (points - 1));
    }
    return grid;
}

FringeRun simulate_fringe(const CircuitConfig& config,
                          const ConverterParams& params,
                          const std::vector<double>& deltas, const Rng& rng) {
    FringeRun run;
    run.deltas = deltas;
    const double t = config.duration_s;

    const auto scan = fringe_scan(config, params, deltas);
    for (std::size_t i = 0; i < scan.size(); ++i) {
        const auto& rates = scan[i].second;
        const double vis_cps =
            rates.visible.middle_cps + rates.visible.background_cps;
        const double tel_cps =
            rates.telecom.middle_cps + rates.telecom.background_cps;
        Rng vis_rng = rng.stream(0x100 + 4 * i);
        Rng tel_rng = rng.stream(0x100 + 4 * i + 1);
        run.visible_counts.push_back(sample_counts(vis_cps, t, vis_rng));
        run.telecom_counts.push_back(sample_counts(tel_cps, t, tel_rng));
        run.visible_expected_cps.push_back(vis_cps);
        run.telecom_expected_cps.push_back(tel_cps);
    }

    // Background from the gate region away from the three peaks, scaled back
    // to one window.
    const double region_windows =
        (1.0 / config.f_rep_hz - 3.0 * config.window_s) / config.window_s;
    const auto& rates0 = scan.front().second;
    Rng vis_bg_rng = rng.stream(0x200);
    Rng tel_bg_rng = rng.stream(0x201);
    const auto vis_bg = sample_counts(
        rates0.visible.background_cps * region_windows, t, vis_bg_rng);
    const auto tel_bg = sample_counts(
        rates0.telecom.background_cps * region_windows, t, tel_bg_rng);
    run.visible_background_counts = static_cast<double>(vis_bg) / region_windows;
    run.telecom_background_counts = static_cast<double>(tel_bg) / region_windows;
    run.visible_background_cps = run.visible_background_counts / t;
    run.telecom_background_cps = run.telecom_background_counts / t;
    return run;
}

std::vector<std::pair<double, std::uint64_t>> counts_vs_phase(
    const FringeRun& run, Band band) {
    std::vector<std::pair<double, std::uint64_t>> out;
    out.reserve(run.deltas.size());
    for (std::size_t i = 0; i < run.deltas.size(); ++i) {
        out.emplace_back(run.deltas[i], band == Band::visible
                                            ? run.visible_counts[i]
                                            : run.telecom_counts[i]);
    }
    return out;
}

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

std::string file_stem(const std::string& scenario) {
    std::string stem = scenario;
    std::replace(stem.begin(), stem.end(), '-', '_');
    return stem;
}

struct Emitter {
    const RunOptions& options;
    RunResult result;

    std::string path(const std::string& name) const {
        return (fs::path(options.out_dir) / name).string();
    }

    void table(const std::string& name, const Table& t) {
        write_csv(t, path(name));
        result.artifacts.push_back(name);
    }

    void plot(const std::string& name, const std::vector<Plot>& panels) {
        if (!options.plot) return;
        write_svg(panels, path(name));
        result.artifacts.push_back(name);
    }

    void metric(const std::string& name, double value) {
        result.metrics.emplace_back(name, value);
    }
};

int resolve_points(const RunOptions& options, int fallback) {
    const int points = options.points.value_or(fallback);
    if (points < 2) {
        throw ConfigError("points must be >= 2");
    }
    return points;
}

// Visibility of one channel of a fringe run; NaN when undefined (all zero).
struct ChannelVisibility {
    double v_grid = kNan;
    double sigma = kNan;
    double v_fit = kNan;
    std::uint64_t n_max = 0;
    std::uint64_t n_min = 0;
    bool defined = false;
};

// A channel carries fringe information only if its expected signal rate is
// nonzero; a dark detector still counts background, and the visibility of
// pure background is meaningless.
bool has_signal(const CircuitConfig& config, const ConverterParams& params,
                Band band) {
    const auto [t, r] = efficiency(params, config.pump_mw);
    const double base = config.alpha2 * config.t_in * config.f_clock_hz;
    return (band == Band::visible ? base * t * config.t_vis
                                  : base * r * config.t_tel) > 0.0;
}

ChannelVisibility channel_visibility(const FringeRun& run, Band band) {
    ChannelVisibility out;
    const auto scan = counts_vs_phase(run, band);
    try {
        const auto est = estimate_visibility(scan);
        out.v_grid = est.v;
        out.sigma = est.sigma;
        out.n_max = est.n_max;
        out.n_min = est.n_min;
        out.defined = true;
        out.v_fit = fit_fringe(scan).visibility;
    } catch (const std::domain_error&) {
        // Zero counts on every point: visibility undefined.
    }
    return out;
}

void run_conversion_curve(const RunOptions& options, const RunConfig& config,
                          Emitter& em) {
    const int points = resolve_points(options, 141);
    const auto pumps = linear_grid(config.pump_min_mw, config.pump_max_mw, points);
    const auto curve = conversion_curve(config.circuit, config.converter, pumps);
    const double duration = config.circuit.duration_s;
    Rng rng(options.seed);

    Table table;
    table.columns = {"pump_power_mw", "transmittance", "reflectance",
                     "visible_expected_cps", "telecom_expected_cps",
                     "visible_counts", "telecom_counts"};
    table.units = {"mW", "1", "1", "counts_per_s", "counts_per_s", "counts",
                   "counts"};

    double peak_pump = 0.0;
    double peak_rate = -1.0;
    for (std::size_t i = 0; i < curve.size(); ++i) {
        const auto& pt = curve[i];
        const auto [t, r] = efficiency(config.converter, pt.pump_mw);
        Rng vis_rng = rng.stream(4 * i);
        Rng tel_rng = rng.stream(4 * i + 1);
        const auto vis_counts = sample_counts(pt.visible_cps, duration, vis_rng);
        const auto tel_counts = sample_counts(pt.telecom_cps, duration, tel_rng);
        table.add_row({pt.pump_mw, t, r, pt.visible_cps, pt.telecom_cps,
                       static_cast<double>(vis_counts),
                       static_cast<double>(tel_counts)});
        if (pt.telecom_cps > peak_rate) {
            peak_rate = pt.telecom_cps;
            peak_pump = pt.pump_mw;
        }
    }

    const double c0 = config.circuit.f_clock_hz * config.circuit.alpha2 *
                      config.circuit.t_in * config.circuit.t_vis;
    em.metric("peak_pump_mw", peak_pump);
    em.metric("c0_cps", c0);
    em.metric("ratio_tt_tv", config.circuit.t_tel / config.circuit.t_vis);
    em.table(file_stem(options.scenario) + ".csv", table);

    Plot plot;
    plot.title = "Signal counts vs pump power";
    plot.x_label = "pump power (mW)";
    plot.y_label = "counts";
    PlotSeries vis{"unconverted (sampled)", "#c62828", true, false, {}};
    PlotSeries tel{"converted (sampled)", "#2e7d32", true, false, {}};
    PlotSeries vis_model{"unconverted (model)", "#e57373", false, true, {}};
    PlotSeries tel_model{"converted (model)", "#81c784", false, true, {}};
    for (std::size_t i = 0; i < curve.size(); ++i) {
        vis.points.emplace_back(curve[i].pump_mw, table.rows[i][5]);
        tel.points.emplace_back(curve[i].pump_mw, table.rows[i][6]);
        vis_model.points.emplace_back(curve[i].pump_mw,
                                      curve[i].visible_cps * duration);
        tel_model.points.emplace_back(curve[i].pump_mw,
                                      curve[i].telecom_cps * duration);
    }
    plot.series = {vis_model, tel_model, vis, tel};
    em.plot(file_stem(options.scenario) + ".svg", {plot});
}

void run_fringe(const RunOptions& options, const RunConfig& config, Emitter& em) {
    const int points = resolve_points(options, 16);
    const auto run = simulate_fringe(config.circuit, config.converter,
                                     phase_grid(points), Rng(options.seed));

    Table table;
    table.columns = {"scan_phase_rad", "visible_counts", "telecom_counts",
                     "visible_expected_cps", "telecom_expected_cps"};
    table.units = {"rad", "counts", "counts", "counts_per_s", "counts_per_s"};
    for (std::size_t i = 0; i < run.deltas.size(); ++i) {
        table.add_row({run.deltas[i], static_cast<double>(run.visible_counts[i]),
                       static_cast<double>(run.telecom_counts[i]),
                       run.visible_expected_cps[i], run.telecom_expected_cps[i]});
    }

    const auto vis = channel_visibility(run, Band::visible);
    const auto tel = channel_visibility(run, Band::telecom);
    em.metric("v_grid_visible", vis.v_grid);
    em.metric("v_grid_visible_sigma", vis.sigma);
    em.metric("v_fit_visible", vis.v_fit);
    em.metric("v_grid_telecom", tel.v_grid);
    em.metric("v_grid_telecom_sigma", tel.sigma);
    em.metric("v_fit_telecom", tel.v_fit);
    em.metric("noise_visible_cps", run.visible_background_cps);
    em.metric("noise_telecom_cps", run.telecom_background_cps);
    em.table(file_stem(options.scenario) + ".csv", table);

    Plot plot;
    plot.title = "Interference fringes";
    plot.x_label = "scan phase (rad)";
    plot.y_label = "counts";
    PlotSeries vis_s{"unconverted", "#c62828", true, false, {}};
    PlotSeries tel_s{"converted", "#2e7d32", true, false, {}};
    PlotSeries vis_m{"unconverted (model)", "#e57373", false, true, {}};
    PlotSeries tel_m{"converted (model)", "#81c784", false, true, {}};
    const double t = config.circuit.duration_s;
    for (std::size_t i = 0; i < run.deltas.size(); ++i) {
        vis_s.points.emplace_back(run.deltas[i],
                                  static_cast<double>(run.visible_counts[i]));
        tel_s.points.emplace_back(run.deltas[i],
                                  static_cast<double>(run.telecom_counts[i]));
        vis_m.points.emplace_back(run.deltas[i], run.visible_expected_cps[i] * t);
        tel_m.points.emplace_back(run.deltas[i], run.telecom_expected_cps[i] * t);
    }
    plot.series = {vis_m, tel_m, vis_s, tel_s};
    em.plot(file_stem(options.scenario) + ".svg", {plot});
}

void run_visibility_vs_power(const RunOptions& options, const RunConfig& config,
                             Emitter& em) {
    const int points = resolve_points(options, 15);
    const auto pumps = linear_grid(config.pump_min_mw, config.pump_max_mw, points);
    Rng rng(options.seed);

    Table table;
    table.columns = {"pump_power_mw", "v_visible", "v_visible_sigma",
                     "v_fit_visible", "v_telecom", "v_telecom_sigma",
                     "v_fit_telecom"};
    table.units = {"mW", "1", "1", "1", "1", "1", "1"};

    double v_min_vis = std::numeric_limits<double>::infinity();
    double v_min_tel = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < pumps.size(); ++j) {
        CircuitConfig circuit = config.circuit;
        circuit.pump_mw = pumps[j];
        const auto run = simulate_fringe(circuit, config.converter,
                                         phase_grid(16), rng.stream(j));
        auto vis = channel_visibility(run, Band::visible);
        auto tel = channel_visibility(run, Band::telecom);
        if (!has_signal(circuit, config.converter, Band::visible)) {
            vis = ChannelVisibility{};
        }
        if (!has_signal(circuit, config.converter, Band::telecom)) {
            tel = ChannelVisibility{};
        }
        table.add_row({pumps[j], vis.v_grid, vis.sigma, vis.v_fit, tel.v_grid,
                       tel.sigma, tel.v_fit});
        if (vis.defined) v_min_vis = std::min(v_min_vis, vis.v_grid);
        if (tel.defined) v_min_tel = std::min(v_min_tel, tel.v_grid);
    }
    em.metric("v_min_visible", v_min_vis);
    em.metric("v_min_telecom", v_min_tel);
    em.table(file_stem(options.scenario) + ".csv", table);

    Plot plot;
    plot.title = "Visibility vs pump power";
    plot.x_label = "pump power (mW)";
    plot.y_label = "visibility";
    PlotSeries vis_s{"unconverted", "#c62828", true, true, {}};
    PlotSeries tel_s{"converted", "#2e7d32", true, true, {}};
    for (const auto& row : table.rows) {
        vis_s.points.emplace_back(row[0], row[1]);
        tel_s.points.emplace_back(row[0], row[4]);
    }
    plot.series = {vis_s, tel_s};
    em.plot(file_stem(options.scenario) + ".svg", {plot});
}

void run_noise_net_visibility(const RunOptions& options, const RunConfig& config,
                              Emitter& em) {
    const int points = resolve_points(options, 8);
    const auto pumps = linear_grid(config.pump_min_mw, config.pump_max_mw, points);
    Rng rng(options.seed);

    Table table;
    table.columns = {"pump_power_mw", "noise_visible_cps", "noise_telecom_cps",
                     "v_raw_visible", "v_net_visible", "v_raw_telecom",
                     "v_net_telecom"};
    table.units = {"mW", "counts_per_s", "counts_per_s", "1", "1", "1", "1"};

    double net_min_vis = std::numeric_limits<double>::infinity();
    double net_min_tel = std::numeric_limits<double>::infinity();
    double raw_vis_at_max = kNan;
    for (std::size_t j = 0; j < pumps.size(); ++j) {
        CircuitConfig circuit = config.circuit;
        circuit.pump_mw = pumps[j];
        const auto run = simulate_fringe(circuit, config.converter,
                                         phase_grid(16), rng.stream(j));
        auto vis = channel_visibility(run, Band::visible);
        auto tel = channel_visibility(run, Band::telecom);
        if (!has_signal(circuit, config.converter, Band::visible)) {
            vis = ChannelVisibility{};
        }
        if (!has_signal(circuit, config.converter, Band::telecom)) {
            tel = ChannelVisibility{};
        }

        auto net = [](const ChannelVisibility& ch, double bg_counts) {
            if (!ch.defined) return kNan;
            try {
                return net_visibility(ch.n_max, ch.n_min, bg_counts).v;
            } catch (const std::domain_error&) {
                return kNan;
            }
        };
        const double net_vis = net(vis, run.visible_background_counts);
        const double net_tel = net(tel, run.telecom_background_counts);

        table.add_row({pumps[j], run.visible_background_cps,
                       run.telecom_background_cps, vis.v_grid, net_vis,
                       tel.v_grid, net_tel});
        if (!std::isnan(net_vis)) net_min_vis = std::min(net_min_vis, net_vis);
        if (!std::isnan(net_tel)) net_min_tel = std::min(net_min_tel, net_tel);
        if (j + 1 == pumps.size()) raw_vis_at_max = vis.v_grid;
    }
    em.metric("net_v_min_visible", net_min_vis);
    em.metric("net_v_min_telecom", net_min_tel);
    em.metric("raw_v_visible_at_max_pump", raw_vis_at_max);
    em.table(file_stem(options.scenario) + ".csv", table);

    Plot noise_plot;
    noise_plot.title = "Background noise vs pump power";
    noise_plot.x_label = "pump power (mW)";
    noise_plot.y_label = "noise rate (counts/s per window)";
    PlotSeries nv{"visible band", "#2e7d32", true, true, {}};
    PlotSeries nt{"telecom band", "#c62828", true, true, {}};
    Plot net_plot;
    net_plot.title = "Net visibility vs pump power";
    net_plot.x_label = "pump power (mW)";
    net_plot.y_label = "visibility";
    PlotSeries raw_v{"raw, visible", "#ef9a9a", true, true, {}};
    PlotSeries net_v{"net, visible", "#c62828", true, true, {}};
    PlotSeries raw_t{"raw, telecom", "#a5d6a7", true, true, {}};
    PlotSeries net_t{"net, telecom", "#2e7d32", true, true, {}};
    for (const auto& row : table.rows) {
        nv.points.emplace_back(row[0], row[1]);
        nt.points.emplace_back(row[0], row[2]);
        raw_v.points.emplace_back(row[0], row[3]);
        net_v.points.emplace_back(row[0], row[4]);
        raw_t.points.emplace_back(row[0], row[5]);
        net_t.points.emplace_back(row[0], row[6]);
    }
    noise_plot.series = {nv, nt};
    net_plot.series = {raw_v, net_v, raw_t, net_t};
    em.plot(file_stem(options.scenario) + ".svg", {noise_plot, net_plot});
}

void run_visibility_vs_alpha(const RunOptions& options, const RunConfig& config,
                             Emitter& em) {
    const int points = resolve_points(options, 13);
    const auto alphas = log_grid(config.alpha2_min, config.alpha2_max, points);
    Rng rng(options.seed);

    const auto [t_eff, r_eff] =
        efficiency(config.converter, config.circuit.pump_mw);
    const double t_all_vis = config.circuit.t_in * t_eff * config.circuit.t_vis;
    const double t_all_tel = config.circuit.t_in * r_eff * config.circuit.t_tel;

    Table table;
    table.columns = {"alpha2",          "v_visible",      "v_visible_sigma",
                     "v_fit_visible",   "v_pred_visible", "noise_visible_cps",
                     "v_telecom",       "v_telecom_sigma", "v_fit_telecom",
                     "v_pred_telecom",  "noise_telecom_cps"};
    table.units = {"1", "1", "1", "1", "1", "counts_per_s",
                   "1", "1", "1", "1", "counts_per_s"};

    double v_min_vis = std::numeric_limits<double>::infinity();
    double v_min_tel = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < alphas.size(); ++j) {
        CircuitConfig circuit = config.circuit;
        circuit.alpha2 = alphas[j];
        const auto run = simulate_fringe(circuit, config.converter,
                                         phase_grid(16), rng.stream(j));
        const auto vis = channel_visibility(run, Band::visible);
        const auto tel = channel_visibility(run, Band::telecom);

        const double leak = noise_rate_signal_leak(config.converter, alphas[j]);
        const double d_vis =
            noise_rate_visible(config.converter, circuit.pump_mw) + leak +
            circuit.dark_rate_cps;
        const double d_tel =
            noise_rate_telecom(config.converter, circuit.pump_mw) + leak +
            circuit.dark_rate_cps;
        const double pred_vis = predict_visibility(alphas[j], t_all_vis,
                                                   circuit.f_clock_hz, d_vis);
        const double pred_tel = predict_visibility(alphas[j], t_all_tel,
                                                   circuit.f_clock_hz, d_tel);

        table.add_row({alphas[j], vis.v_grid, vis.sigma, vis.v_fit, pred_vis,
                       run.visible_background_cps, tel.v_grid, tel.sigma,
                       tel.v_fit, pred_tel, run.telecom_background_cps});
        if (alphas[j] > 0.01) {
            if (vis.defined) v_min_vis = std::min(v_min_vis, vis.v_grid);
            if (tel.defined) v_min_tel = std::min(v_min_tel, tel.v_grid);
        }
    }
    em.metric("v_min_visible_above_0p01", v_min_vis);
    em.metric("v_min_telecom_above_0p01", v_min_tel);
    em.table(file_stem(options.scenario) + ".csv", table);

    Plot plot;
    plot.title = "Visibility vs mean photon number";
    plot.x_label = "|alpha|^2";
    plot.y_label = "visibility";
    plot.log_x = true;
    PlotSeries vis_s{"unconverted", "#c62828", true, false, {}};
    PlotSeries tel_s{"converted", "#2e7d32", true, false, {}};
    PlotSeries vis_p{"unconverted (model)", "#e57373", false, true, {}};
    PlotSeries tel_p{"converted (model)", "#81c784", false, true, {}};
    for (const auto& row : table.rows) {
        vis_s.points.emplace_back(row[0], row[1]);
        vis_p.points.emplace_back(row[0], row[4]);
        tel_s.points.emplace_back(row[0], row[6]);
        tel_p.points.emplace_back(row[0], row[9]);
    }
    plot.series = {vis_p, tel_p, vis_s, tel_s};
    em.plot(file_stem(options.scenario) + ".svg", {plot});
}

void run_fit(const RunOptions& options, const RunConfig& config, Emitter& em) {
    if (config.fit_input_csv.empty()) {
        throw ConfigError("fit scenario requires fit_input_csv");
    }
    const Table data = ingest_csv_file(config.fit_input_csv);
    const int degree = options.degree.value_or(config.fit_degree);
    if (degree < 0 || degree > 8) {
        throw ConfigError("degree must be in [0,8]");
    }

    if (config.fit_model == "conversion_curve") {
        require_columns(data, {"pump_power_mw", "visible_counts"});
        const auto p_col = data.column_index("pump_power_mw");
        const auto c_col = data.column_index("visible_counts");
        double c0 = 0.0;
        for (const auto& row : data.rows) {
            if (row[p_col] == 0.0) c0 = row[c_col];
        }
        if (!(c0 > 0.0)) {
            throw FitError("conversion-curve fit needs counts at zero pump power");
        }
        std::vector<std::pair<double, double>> pts;
        std::vector<double> weights;
        for (const auto& row : data.rows) {
            const double t_obs = row[c_col] / c0;
            pts.emplace_back(row[p_col], t_obs);
            weights.push_back(c0 / std::max(t_obs, 1e-3));
        }
        const auto fit = fit_conversion_curve(pts, weights);
        if (!fit.converged) {
            throw FitError("conversion-curve fit did not converge");
        }

        Table out;
        out.columns = {"A", "A_sigma", "eta_per_mw", "eta_sigma", "rss",
                       "iterations"};
        out.units = {"1", "1", "per_mw", "per_mw", "1", "1"};
        out.add_row({fit.value("A"), fit.sigma("A"), fit.value("eta"),
                     fit.sigma("eta"), fit.rss,
                     static_cast<double>(fit.iterations)});
        em.metric("a", fit.value("A"));
        em.metric("a_sigma", fit.sigma("A"));
        em.metric("eta_per_mw", fit.value("eta"));
        em.metric("eta_sigma", fit.sigma("eta"));
        em.metric("rss", fit.rss);
        em.table("fit_results.csv", out);

        Plot plot;
        plot.title = "Conversion-curve fit";
        plot.x_label = "pump power (mW)";
        plot.y_label = "T(P)";
        PlotSeries obs{"observed", "#c62828", true, false, {}};
        PlotSeries model{"fit", "#1565c0", false, true, {}};
        for (const auto& [p, t] : pts) obs.points.emplace_back(p, t);
        double p_max = 0.0;
        for (const auto& [p, t] : pts) p_max = std::max(p_max, p);
        for (const double p : linear_grid(0.0, p_max, 200)) {
            model.points.emplace_back(
                p, conversion_model(p, fit.value("A"), fit.value("eta")));
        }
        plot.series = {model, obs};
        em.plot("fit_results.svg", {plot});
        return;
    }

    // noise_polynomial: fit every noise_* column against the first column.
    std::vector<std::size_t> y_cols;
    for (std::size_t i = 0; i < data.columns.size(); ++i) {
        if (data.columns[i].rfind("noise_", 0) == 0) y_cols.push_back(i);
    }
    if (y_cols.empty()) {
        throw FitError("noise fit: no noise_* column in " + config.fit_input_csv);
    }
    Table out;
    out.columns = {"series"};
    out.units = {"1"};
    for (int k = 0; k <= degree; ++k) {
        out.columns.push_back("c" + std::to_string(k));
        out.units.push_back("1");
        out.columns.push_back("c" + std::to_string(k) + "_sigma");
        out.units.push_back("1");
    }
    out.columns.push_back("rss");
    out.units.push_back("1");

    Plot plot;
    plot.title = "Noise polynomial fit";
    plot.x_label = data.columns[0];
    plot.y_label = "noise rate (counts/s)";
    const std::vector<std::string> colors = {"#2e7d32", "#c62828", "#1565c0"};
    for (std::size_t s = 0; s < y_cols.size(); ++s) {
        std::vector<std::pair<double, double>> pts;
        for (const auto& row : data.rows) {
            if (std::isnan(row[0]) || std::isnan(row[y_cols[s]])) continue;
            pts.emplace_back(row[0], row[y_cols[s]]);
        }
        const auto fit = fit_noise_polynomial(pts, degree);
        std::vector<double> row{static_cast<double>(s)};
        for (int k = 0; k <= degree; ++k) {
            row.push_back(fit.value("c" + std::to_string(k)));
            row.push_back(fit.sigma("c" + std::to_string(k)));
            em.metric("s" + std::to_string(s) + "_c" + std::to_string(k),
                      fit.value("c" + std::to_string(k)));
        }
        row.push_back(fit.rss);
        out.rows.push_back(std::move(row));

        PlotSeries obs{data.columns[y_cols[s]], colors[s % colors.size()],
                       true, false, {}};
        PlotSeries model{data.columns[y_cols[s]] + " (fit)",
                         colors[s % colors.size()], false, true, {}};
        double x_lo = pts.front().first, x_hi = pts.front().first;
        for (const auto& [x, y] : pts) {
            obs.points.emplace_back(x, y);
            x_lo = std::min(x_lo, x);
            x_hi = std::max(x_hi, x);
        }
        for (const double x : linear_grid(x_lo, x_hi, 200)) {
            double y = 0.0;
            for (int k = degree; k >= 0; --k) {
                y = y * x + fit.value("c" + std::to_string(k));
            }
            model.points.emplace_back(x, y);
        }
        plot.series.push_back(model);
        plot.series.push_back(obs);
    }
    em.metric("series_count", static_cast<double>(y_cols.size()));
    em.table("fit_results.csv", out);
    em.plot("fit_results.svg", {plot});
}

void write_manifest(const RunOptions& options, const RunConfig& config,
                    const RunResult& result, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open for writing: " + path);
    }
    out << "tool = " << kToolName << "\n";
    out << "version = " << kToolVersion << "\n";
    out << "scenario = " << options.scenario << "\n";
    out << "seed = " << options.seed << "\n";
    if (options.points) out << "points = " << *options.points << "\n";
    if (options.duration_s) {
        out << "duration_s_override = " << format_number(*options.duration_s)
            << "\n";
    }
    if (options.degree) out << "degree = " << *options.degree << "\n";
    for (const auto& [key, value] : config.resolved()) {
        out << "config." << key << " = " << value << "\n";
    }
    for (const auto& [name, value] : result.metrics) {
        out << "result." << name << " = " << format_number(value) << "\n";
    }
    for (const auto& artifact : result.artifacts) {
        out << "artifact = " << artifact << "\n";
    }
    if (!out) {
        throw IoError("write failed: " + path);
    }
}

}  // namespace

RunResult run_scenario(const RunOptions& options) {
    if (!is_scenario(options.scenario)) {
        throw ConfigError("unknown scenario: " + options.scenario);
    }
    RunConfig config = options.config_path.empty()
                           ? RunConfig{}
                           : load_config_file(options.config_path);
    if (options.duration_s) {
        if (!(*options.duration_s > 0.0)) {
            throw ConfigError("duration must be > 0");
        }
        config.circuit.duration_s = *options.duration_s;
    }

    std::error_code ec;
    fs::create_directories(options.out_dir, ec);
    if (ec) {
        throw IoError("cannot create output directory: " + options.out_dir);
    }

    Emitter em{options, {}};
    if (options.scenario == "conversion-curve") {
        run_conversion_curve(options, config, em);
    } else if (options.scenario == "fringe") {
        run_fringe(options, config, em);
    } else if (options.scenario == "visibility-vs-power") {
        run_visibility_vs_power(options, config, em);
    } else if (options.scenario == "noise-and-net-visibility") {
        run_noise_net_visibility(options, config, em);
    } else if (options.scenario == "visibility-vs-alpha") {
        run_visibility_vs_alpha(options, config, em);
    } else {
        run_fit(options, config, em);
    }

    write_manifest(options, config, em.result,
                   em.path(file_stem(options.scenario) + "_manifest.txt"));
    em.result.artifacts.push_back(file_stem(options.scenario) + "_manifest.txt");
    return em.result;
}

}  // namespace pwcsim
