#include "pwcsim.h"

#include <cstring>
#include <new>
#include <stdexcept>
#include <string>
#include <vector>

#include "analysis.hpp"
#include "errors.hpp"
#include "scenario.hpp"
#include "table.hpp"
#include "version.hpp"

using namespace pwcsim;

struct pwcsim_run {
    RunOptions options;
    RunResult result;
    std::string last_error;
    bool executed = false;
};

namespace {

pwcsim_status status_of(const std::exception& e) {
    if (dynamic_cast<const ConfigError*>(&e)) return PWCSIM_ERROR_CONFIG;
    if (dynamic_cast<const FitError*>(&e)) return PWCSIM_ERROR_FIT;
    if (dynamic_cast<const IoError*>(&e)) return PWCSIM_ERROR_IO;
    if (dynamic_cast<const std::domain_error*>(&e) ||
        dynamic_cast<const std::invalid_argument*>(&e)) {
        return PWCSIM_ERROR_DOMAIN;
    }
    return PWCSIM_ERROR_INTERNAL;
}

template <typename Fn>
pwcsim_status guarded(pwcsim_run* run, Fn&& fn) {
    try {
        fn();
        return PWCSIM_OK;
    } catch (const std::exception& e) {
        if (run) run->last_error = e.what();
        return status_of(e);
    } catch (...) {
        if (run) run->last_error = "unknown error";
        return PWCSIM_ERROR_INTERNAL;
    }
}

}  // namespace

extern "C" {

const char* pwcsim_version(void) { return kToolVersion; }

const char* pwcsim_status_name(pwcsim_status status) {
    switch (status) {
        case PWCSIM_OK: return "ok";
        case PWCSIM_ERROR_INTERNAL: return "internal error";
        case PWCSIM_ERROR_CONFIG: return "config error";
        case PWCSIM_ERROR_DOMAIN: return "domain error";
        case PWCSIM_ERROR_FIT: return "fit error";
        case PWCSIM_ERROR_IO: return "io error";
    }
    return "unknown status";
}

size_t pwcsim_scenario_count(void) { return scenario_names().size(); }

const char* pwcsim_scenario_name(size_t index) {
    const auto& names = scenario_names();
    return index < names.size() ? names[index].c_str() : nullptr;
}

pwcsim_run* pwcsim_run_new(void) { return new (std::nothrow) pwcsim_run; }

void pwcsim_run_free(pwcsim_run* run) { delete run; }

pwcsim_status pwcsim_run_set_scenario(pwcsim_run* run, const char* name) {
    if (!run || !name) return PWCSIM_ERROR_CONFIG;
    if (!is_scenario(name)) {
        run->last_error = std::string("unknown scenario: ") + name;
        return PWCSIM_ERROR_CONFIG;
    }
    run->options.scenario = name;
    return PWCSIM_OK;
}

pwcsim_status pwcsim_run_set_config_file(pwcsim_run* run, const char* path) {
    if (!run || !path) return PWCSIM_ERROR_CONFIG;
    run->options.config_path = path;
    return PWCSIM_OK;
}

pwcsim_status pwcsim_run_set_output_dir(pwcsim_run* run, const char* path) {
    if (!run || !path) return PWCSIM_ERROR_CONFIG;
    run->options.out_dir = path;
    return PWCSIM_OK;
}

void pwcsim_run_set_seed(pwcsim_run* run, uint64_t seed) {
    if (run) run->options.seed = seed;
}

pwcsim_status pwcsim_run_set_points(pwcsim_run* run, int points) {
    if (!run) return PWCSIM_ERROR_CONFIG;
    if (points < 2) {
        run->last_error = "points must be >= 2";
        return PWCSIM_ERROR_CONFIG;
    }
    run->options.points = points;
    return PWCSIM_OK;
}

pwcsim_status pwcsim_run_set_duration_s(pwcsim_run* run, double seconds) {
    if (!run) return PWCSIM_ERROR_CONFIG;
    if (!(seconds > 0.0)) {
        run->last_error = "duration must be > 0";
        return PWCSIM_ERROR_CONFIG;
    }
    run->options.duration_s = seconds;
    return PWCSIM_OK;
}

pwcsim_status pwcsim_run_set_degree(pwcsim_run* run, int degree) {
    if (!run) return PWCSIM_ERROR_CONFIG;
    if (degree < 0 || degree > 8) {
        run->last_error = "degree must be in [0,8]";
        return PWCSIM_ERROR_CONFIG;
    }
    run->options.degree = degree;
    return PWCSIM_OK;
}

void pwcsim_run_set_plot(pwcsim_run* run, int enabled) {
    if (run) run->options.plot = enabled != 0;
}

pwcsim_status pwcsim_run_execute(pwcsim_run* run) {
    if (!run) return PWCSIM_ERROR_CONFIG;
    if (run->options.scenario.empty()) {
        run->last_error = "no scenario set";
        return PWCSIM_ERROR_CONFIG;
    }
    if (run->executed) {
        run->last_error = "run already executed";
        return PWCSIM_ERROR_CONFIG;
    }
    return guarded(run, [&] {
        run->result = run_scenario(run->options);
        run->executed = true;
    });
}

const char* pwcsim_run_last_error(const pwcsim_run* run) {
    return run ? run->last_error.c_str() : "";
}

size_t pwcsim_run_metric_count(const pwcsim_run* run) {
    return run ? run->result.metrics.size() : 0;
}

const char* pwcsim_run_metric_name(const pwcsim_run* run, size_t index) {
    if (!run || index >= run->result.metrics.size()) return nullptr;
    return run->result.metrics[index].first.c_str();
}

double pwcsim_run_metric_value(const pwcsim_run* run, size_t index) {
    if (!run || index >= run->result.metrics.size()) return 0.0;
    return run->result.metrics[index].second;
}

pwcsim_status pwcsim_run_metric(const pwcsim_run* run, const char* name,
                                double* value) {
    if (!run || !name || !value) return PWCSIM_ERROR_DOMAIN;
    for (const auto& [metric, metric_value] : run->result.metrics) {
        if (metric == name) {
            *value = metric_value;
            return PWCSIM_OK;
        }
    }
    return PWCSIM_ERROR_DOMAIN;
}

size_t pwcsim_run_artifact_count(const pwcsim_run* run) {
    return run ? run->result.artifacts.size() : 0;
}

const char* pwcsim_run_artifact_name(const pwcsim_run* run, size_t index) {
    if (!run || index >= run->result.artifacts.size()) return nullptr;
    return run->result.artifacts[index].c_str();
}

pwcsim_status pwcsim_validate_table(const char* path, char* message,
                                    size_t message_size) {
    if (message && message_size > 0) message[0] = '\0';
    if (!path) return PWCSIM_ERROR_IO;
    try {
        ingest_csv_file(path);
        return PWCSIM_OK;
    } catch (const std::exception& e) {
        if (message && message_size > 0) {
            std::strncpy(message, e.what(), message_size - 1);
            message[message_size - 1] = '\0';
        }
        return PWCSIM_ERROR_IO;
    }
}

pwcsim_status pwcsim_conversion_efficiency(double saturation_a,
                                           double eta_per_mw, double pump_mw,
                                           double* transmitted,
                                           double* reflected) {
    if (!transmitted || !reflected) return PWCSIM_ERROR_DOMAIN;
    return guarded(nullptr, [&] {
        ConverterParams params;
        params.saturation_a = saturation_a;
        params.eta_per_mw = eta_per_mw;
        params.validate();
        const auto [t, r] = efficiency(params, pump_mw);
        *transmitted = t;
        *reflected = r;
    });
}

pwcsim_status pwcsim_predict_visibility(double alpha2, double t_all,
                                        double f_clock_hz, double noise_cps,
                                        double* visibility) {
    if (!visibility) return PWCSIM_ERROR_DOMAIN;
    return guarded(nullptr, [&] {
        *visibility = predict_visibility(alpha2, t_all, f_clock_hz, noise_cps);
    });
}

pwcsim_status pwcsim_fit_conversion_curve(const double* pump_mw,
                                          const double* t_obs,
                                          const double* weights, size_t n,
                                          double* a, double* a_sigma,
                                          double* eta, double* eta_sigma) {
    if (!pump_mw || !t_obs || !a || !a_sigma || !eta || !eta_sigma) {
        return PWCSIM_ERROR_DOMAIN;
    }
    return guarded(nullptr, [&] {
        std::vector<std::pair<double, double>> pts;
        std::vector<double> w;
        for (size_t i = 0; i < n; ++i) {
            pts.emplace_back(pump_mw[i], t_obs[i]);
            if (weights) w.push_back(weights[i]);
        }
        const auto fit = fit_conversion_curve(pts, w);
        if (!fit.converged) {
            throw FitError("fit did not converge");
        }
        *a = fit.value("A");
        *a_sigma = fit.sigma("A");
        *eta = fit.value("eta");
        *eta_sigma = fit.sigma("eta");
    });
}

}  // extern "C"
