#pragma once

#include <stdexcept>
#include <string>

#include "mrs/evolution.hpp"
#include "mrs/models.hpp"

namespace mrs {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct OutputOptions {
    std::string prefix = "run";
    bool profiles = true;
    bool significance_map = false;
};

struct RunConfig {
    std::string model;
    ModelParams params;
    SolveConfig solve;
    OutputOptions output;
};

// Parses a JSON experiment description; unknown or ill-typed fields raise
// ConfigError.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);

}  // namespace mrs
