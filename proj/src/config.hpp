#pragma once

#include <map>
#include <string>

#include "circuit.hpp"
#include "converter.hpp"

namespace pwcsim {

// Flat key-value run configuration.  Keys carry explicit units in their
// names; unknown keys are errors.  Every key has a default, so an empty file
// is a valid configuration.
struct RunConfig {
    CircuitConfig circuit;
    ConverterParams converter;

    // Sweep ranges.
    double pump_min_mw = 0.0;
    double pump_max_mw = 700.0;
    double alpha2_min = 1e-3;
    double alpha2_max = 1.0;

    // fit scenario inputs.
    std::string fit_input_csv;
    std::string fit_model = "conversion_curve";  // or "noise_polynomial"
    int fit_degree = 2;

    // Resolved keys in schema order, for the manifest.
    std::map<std::string, std::string> resolved() const;
};

// Parses "key = value" lines ('#' starts a comment).  Throws ConfigError
// with a line number for unknown keys, duplicates, type mismatches and
// range violations.
RunConfig parse_config(const std::string& text);
RunConfig load_config_file(const std::string& path);

}  // namespace pwcsim
