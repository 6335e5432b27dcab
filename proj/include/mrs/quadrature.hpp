#pragma once

#include <functional>
#include <vector>

namespace mrs {

// Composite 8-point Gauss-Legendre rule on `panels` equal panels.
double gauss_legendre(const std::function<double(double)>& g, double a, double b, int panels = 1);

// A(u) = int_{lo}^{u} a(s) ds tabulated on n points over [lo, hi] and
// evaluated by cubic Hermite interpolation with the exact slopes a(u).
// A is zero below lo and continued linearly above hi.
class IntegratedTable {
public:
    IntegratedTable() = default;
    IntegratedTable(std::function<double(double)> a, double lo, double hi, int n = 2048);

    double operator()(double u) const;
    double lo() const { return lo_; }
    double hi() const { return hi_; }

private:
    std::function<double(double)> a_;
    double lo_ = 0.0;
    double hi_ = 1.0;
    double du_ = 1.0;
    std::vector<double> A_;
    std::vector<double> dA_;
};

// Zeros of g on [lo, hi] located by sampling and bisection.
std::vector<double> find_roots(const std::function<double(double)>& g, double lo, double hi, int samples = 4000);

}  // namespace mrs
