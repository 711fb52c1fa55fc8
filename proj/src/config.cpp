#include "config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <vector>

#include "errors.hpp"

namespace pwcsim {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

struct Key {
    std::string name;
    std::function<void(RunConfig&, const std::string&, int line)> set;
    std::function<std::string(const RunConfig&)> get;
};

double parse_double(const std::string& key, const std::string& value, int line) {
    // std::from_chars for doubles still misses "1e6"-with-spaces cases we
    // trimmed already; strtod with a full-consumption check is enough here.
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (end != value.c_str() + value.size() || value.empty() || !std::isfinite(v)) {
        throw ConfigError("line " + std::to_string(line) + ": key '" + key +
                          "' expects a number, got '" + value + "'");
    }
    return v;
}

int parse_int(const std::string& key, const std::string& value, int line) {
    int v = 0;
    const auto res = std::from_chars(value.data(), value.data() + value.size(), v);
    if (res.ec != std::errc() || res.ptr != value.data() + value.size()) {
        throw ConfigError("line " + std::to_string(line) + ": key '" + key +
                          "' expects an integer, got '" + value + "'");
    }
    return v;
}

Key double_key(const std::string& name, double RunConfig::* field) {
    return {name,
            [name, field](RunConfig& c, const std::string& v, int line) {
                c.*field = parse_double(name, v, line);
            },
            [field](const RunConfig& c) { return format_double(c.*field); }};
}

Key circuit_key(const std::string& name, double CircuitConfig::* field) {
    return {name,
            [name, field](RunConfig& c, const std::string& v, int line) {
                c.circuit.*field = parse_double(name, v, line);
            },
            [field](const RunConfig& c) { return format_double(c.circuit.*field); }};
}

Key converter_key(const std::string& name, double ConverterParams::* field) {
    return {name,
            [name, field](RunConfig& c, const std::string& v, int line) {
                c.converter.*field = parse_double(name, v, line);
            },
            [field](const RunConfig& c) { return format_double(c.converter.*field); }};
}

const std::vector<Key>& schema() {
    static const std::vector<Key> keys = {
        circuit_key("alpha2", &CircuitConfig::alpha2),
        circuit_key("pump_power_mw", &CircuitConfig::pump_mw),
        converter_key("pump_phase_rad", &ConverterParams::pump_phase_rad),
        converter_key("saturation_a", &ConverterParams::saturation_a),
        converter_key("pump_coupling_per_mw", &ConverterParams::eta_per_mw),
        circuit_key("transmittance_in", &CircuitConfig::t_in),
        circuit_key("transmittance_visible", &CircuitConfig::t_vis),
        circuit_key("transmittance_telecom", &CircuitConfig::t_tel),
        circuit_key("clock_frequency_hz", &CircuitConfig::f_clock_hz),
        circuit_key("repetition_rate_hz", &CircuitConfig::f_rep_hz),
        circuit_key("delay_s", &CircuitConfig::delay_s),
        circuit_key("window_s", &CircuitConfig::window_s),
        circuit_key("scan_phase_rad", &CircuitConfig::scan_phase_rad),
        circuit_key("fringe_offset_rad", &CircuitConfig::fringe_offset_rad),
        circuit_key("intrinsic_visibility", &CircuitConfig::intrinsic_visibility),
        circuit_key("dark_rate_cps", &CircuitConfig::dark_rate_cps),
        circuit_key("duration_s", &CircuitConfig::duration_s),
        converter_key("noise_telecom_cps_per_mw", &ConverterParams::noise_tel_cps_per_mw),
        converter_key("noise_visible_cps_per_mw2", &ConverterParams::noise_vis_cps_per_mw2),
        converter_key("noise_visible_cps_per_mw", &ConverterParams::noise_vis_cps_per_mw),
        converter_key("leak_background_cps", &ConverterParams::leak_cps),
        converter_key("leak_background_cps_per_alpha2", &ConverterParams::leak_cps_per_alpha2),
        double_key("pump_min_mw", &RunConfig::pump_min_mw),
        double_key("pump_max_mw", &RunConfig::pump_max_mw),
        double_key("alpha2_min", &RunConfig::alpha2_min),
        double_key("alpha2_max", &RunConfig::alpha2_max),
        {"fit_input_csv",
         [](RunConfig& c, const std::string& v, int) { c.fit_input_csv = v; },
         [](const RunConfig& c) { return c.fit_input_csv; }},
        {"fit_model",
         [](RunConfig& c, const std::string& v, int line) {
             if (v != "conversion_curve" && v != "noise_polynomial") {
                 throw ConfigError("line " + std::to_string(line) +
                                   ": fit_model must be conversion_curve or "
                                   "noise_polynomial");
             }
             c.fit_model = v;
         },
         [](const RunConfig& c) { return c.fit_model; }},
        {"fit_degree",
         [](RunConfig& c, const std::string& v, int line) {
             c.fit_degree = parse_int("fit_degree", v, line);
         },
         [](const RunConfig& c) { return std::to_string(c.fit_degree); }},
    };
    return keys;
}

}  // namespace

std::map<std::string, std::string> RunConfig::resolved() const {
    std::map<std::string, std::string> out;
    for (const auto& key : schema()) {
        out[key.name] = key.get(*this);
    }
    return out;
}

RunConfig parse_config(const std::string& text) {
    RunConfig config;
    std::set<std::string> seen;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(line_no) +
                              ": expected 'key = value'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!seen.insert(key).second) {
            throw ConfigError("line " + std::to_string(line_no) +
                              ": duplicate key '" + key + "'");
        }
        bool matched = false;
        for (const auto& entry : schema()) {
            if (entry.name == key) {
                entry.set(config, value, line_no);
                matched = true;
                break;
            }
        }
        if (!matched) {
            throw ConfigError("line " + std::to_string(line_no) +
                              ": unknown key '" + key + "'");
        }
    }

    // Range validation beyond what the domain types check themselves.
    try {
        config.circuit.validate();
        config.converter.validate();
    } catch (const std::domain_error& e) {
        throw ConfigError(std::string("invalid configuration: ") + e.what());
    }
    if (config.pump_min_mw < 0.0 || config.pump_max_mw < config.pump_min_mw) {
        throw ConfigError("invalid configuration: pump sweep range");
    }
    if (!(config.alpha2_min > 0.0) || config.alpha2_max < config.alpha2_min) {
        throw ConfigError("invalid configuration: alpha2 sweep range");
    }
    if (config.fit_degree < 0 || config.fit_degree > 8) {
        throw ConfigError("invalid configuration: fit_degree must be in [0,8]");
    }
    return config;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file: " + path);
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

}  // namespace pwcsim
