#include "mrs/quadrature.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace mrs {

namespace {

constexpr std::array<double, 8> kNodes = {
    -0.9602898564975362316835609, -0.7966664774136267395915539, -0.5255324099163289858177390,
    -0.1834346424956498049394761, 0.1834346424956498049394761,  0.5255324099163289858177390,
    0.7966664774136267395915539,  0.9602898564975362316835609};
constexpr std::array<double, 8> kWeights = {
    0.1012285362903762591525314, 0.2223810344533744705443560, 0.3137066458778872873379622,
    0.3626837833783619829651504, 0.3626837833783619829651504, 0.3137066458778872873379622,
    0.2223810344533744705443560, 0.1012285362903762591525314};

}  // namespace

double gauss_legendre(const std::function<double(double)>& g, double a, double b, int panels) {
    if (panels < 1) throw std::invalid_argument("gauss_legendre: panels must be positive");
    const double w = (b - a) / panels;
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double c = a + (p + 0.5) * w;
        double s = 0.0;
        for (std::size_t i = 0; i < kNodes.size(); ++i) s += kWeights[i] * g(c + 0.5 * w * kNodes[i]);
        total += 0.5 * w * s;
    }
    return total;
}

IntegratedTable::IntegratedTable(std::function<double(double)> a, double lo, double hi, int n)
    : a_(std::move(a)), lo_(lo), hi_(hi) {
    if (n < 2 || !(hi > lo)) throw std::invalid_argument("IntegratedTable: bad range");
    du_ = (hi - lo) / (n - 1);
    A_.assign(static_cast<std::size_t>(n), 0.0);
    dA_.assign(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) dA_[static_cast<std::size_t>(i)] = a_(lo + i * du_);
    for (int i = 1; i < n; ++i) {
        const double ul = lo + (i - 1) * du_;
        A_[static_cast<std::size_t>(i)] = A_[static_cast<std::size_t>(i - 1)] + gauss_legendre(a_, ul, ul + du_, 2);
    }
}

double IntegratedTable::operator()(double u) const {
    if (A_.empty()) return 0.0;
    if (u <= lo_) return 0.0;
    if (u >= hi_) return A_.back() + dA_.back() * (u - hi_);
    const double s = (u - lo_) / du_;
    auto i = static_cast<std::size_t>(s);
    if (i >= A_.size() - 1) i = A_.size() - 2;
    const double t = s - static_cast<double>(i);
    const double t2 = t * t;
    const double t3 = t2 * t;
    const double h00 = 2 * t3 - 3 * t2 + 1;
    const double h10 = t3 - 2 * t2 + t;
    const double h01 = -2 * t3 + 3 * t2;
    const double h11 = t3 - t2;
    return h00 * A_[i] + h10 * du_ * dA_[i] + h01 * A_[i + 1] + h11 * du_ * dA_[i + 1];
}

std::vector<double> find_roots(const std::function<double(double)>& g, double lo, double hi, int samples) {
    std::vector<double> roots;
    double xa = lo;
    double ga = g(xa);
    for (int i = 1; i <= samples; ++i) {
        const double xb = lo + (hi - lo) * i / samples;
        const double gb = g(xb);
        if (ga == 0.0 && i > 1) roots.push_back(xa);
        if (ga * gb < 0.0) {
            double a = xa, b = xb, fa = ga;
            for (int it = 0; it < 200 && b - a > 1e-15 * (1.0 + std::fabs(a)); ++it) {
                const double m = 0.5 * (a + b);
                const double fm = g(m);
                if ((fm < 0) == (fa < 0)) {
                    a = m;
                    fa = fm;
                } else {
                    b = m;
                }
            }
            roots.push_back(0.5 * (a + b));
        }
        xa = xb;
        ga = gb;
    }
    return roots;
}

}  // namespace mrs
