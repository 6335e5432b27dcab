#pragma once

#include <cstddef>
#include <span>

#include "mrs/models.hpp"

namespace mrs {

// mu = N0 / (N0 / 2^L + |D|).
double compression_ratio(std::size_t n0, int levels, std::size_t significant);

struct ErrorNorms {
    double e1 = 0.0;
    double e2 = 0.0;
    double einf = 0.0;
};

// e_p = (1/N sum |a - b|^p)^(1/p), einf = max |a - b|.
ErrorNorms error_norms(std::span<const double> a, std::span<const double> b);

// Flame speed: integral of the reaction term over the cells of width h.
double flame_speed(std::span<const double> cells, double h, const ModelProblem& m);
double total_variation(std::span<const double> u, bool periodic = false);
double mass(std::span<const double> u, double h);
double speedup(double cpu_uniform, double cpu_adaptive);

}  // namespace mrs
