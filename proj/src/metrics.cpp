#include "mrs/metrics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace mrs {

double compression_ratio(std::size_t n0, int levels, std::size_t significant) {
    const double base = static_cast<double>(n0) / std::ldexp(1.0, levels);
    return static_cast<double>(n0) / (base + static_cast<double>(significant));
}

ErrorNorms error_norms(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size() || a.empty()) throw std::invalid_argument("error_norms: size mismatch");
    ErrorNorms e;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = std::fabs(a[i] - b[i]);
        e.e1 += d;
        e.e2 += d * d;
        e.einf = std::max(e.einf, d);
    }
    const double n = static_cast<double>(a.size());
    e.e1 /= n;
    e.e2 = std::sqrt(e.e2 / n);
    return e;
}

double flame_speed(std::span<const double> cells, double h, const ModelProblem& m) {
    if (!m.source) throw std::invalid_argument("flame_speed: model has no source term");
    double s = 0.0;
    for (double u : cells) s += m.source(u);
    return s * h;
}

double total_variation(std::span<const double> u, bool periodic) {
    double tv = 0.0;
    for (std::size_t i = 1; i < u.size(); ++i) tv += std::fabs(u[i] - u[i - 1]);
    if (periodic && u.size() > 1) tv += std::fabs(u.front() - u.back());
    return tv;
}

double mass(std::span<const double> u, double h) {
    double s = 0.0;
    for (double v : u) s += v;
    return s * h;
}

double speedup(double cpu_uniform, double cpu_adaptive) {
    if (cpu_adaptive <= 0.0) return std::numeric_limits<double>::infinity();
    return cpu_uniform / cpu_adaptive;
}

}  // namespace mrs
