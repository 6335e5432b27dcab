#pragma once

#include <ostream>
#include <string>

namespace mrs::cli {

enum ExitCode { kOk = 0, kInstability = 1, kConfigError = 2 };

struct Options {
    std::string config;
    std::string out = ".";
    bool quiet = false;
    bool uniform = false;
    // transform: CSV of samples (last column) instead of the model's initial data
    std::string input;
};

int list_models(std::ostream& out);
int run(const Options& opt, std::ostream& out, std::ostream& err);
int compare(const Options& opt, std::ostream& out, std::ostream& err);
int transform(const Options& opt, std::ostream& out, std::ostream& err);

}  // namespace mrs::cli
