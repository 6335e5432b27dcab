#include "mrs/coefficients.hpp"

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace mrs {

namespace {

struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational reduced() const {
        const std::int64_t g = std::gcd(num, den);
        Rational q{num / g, den / g};
        if (q.den < 0) q = {-q.num, -q.den};
        return q;
    }
    long double value() const { return static_cast<long double>(num) / static_cast<long double>(den); }
};

Rational operator-(Rational a, Rational b) {
    return Rational{a.num * b.den - b.num * a.den, a.den * b.den}.reduced();
}

std::int64_t factorial(int n) {
    std::int64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

std::vector<Rational> exact_beta(int r) {
    const int s = r / 2;
    std::vector<Rational> beta;
    for (int l = 1; l <= s; ++l) {
        std::int64_t num = 2 * l - 1;
        for (int i = 1; i <= s; ++i)
            if (i != l) num *= (2 * i - 1) * (2 * i - 1);
        const std::int64_t den = (std::int64_t{1} << (2 * s - 1)) * factorial(s + l - 1) * factorial(s - l);
        beta.push_back(Rational{(l % 2 == 1) ? num : -num, den}.reduced());
    }
    return beta;
}

}  // namespace

InterpCoefficients interp_coeffs(int r) {
    if (r != 2 && r != 4 && r != 6)
        throw std::invalid_argument("interp_coeffs: unsupported order r=" + std::to_string(r));
    InterpCoefficients c;
    c.kind = DataKind::PointValue;
    c.order = r;
    for (const Rational& b : exact_beta(r)) c.beta.push_back(static_cast<double>(b.value()));
    return c;
}

InterpCoefficients cell_avg_coeffs(int rbar) {
    if (rbar != 3 && rbar != 5)
        throw std::invalid_argument("cell_avg_coeffs: unsupported order rbar=" + std::to_string(rbar));
    const auto beta = exact_beta(rbar + 1);
    InterpCoefficients c;
    c.kind = DataKind::CellAverage;
    c.order = rbar;
    for (const Rational& b : beta) c.beta.push_back(static_cast<double>(b.value()));
    // gamma_l = -(2 beta_l - gamma_{l-1}), gamma_0 = 1
    Rational prev{1, 1};
    const int s = (rbar + 1) / 2;
    for (int l = 1; l < s; ++l) {
        const Rational two_beta = Rational{2 * beta[l - 1].num, beta[l - 1].den}.reduced();
        const Rational g = prev - two_beta;
        c.gamma.push_back(static_cast<double>(g.value()));
        prev = g;
    }
    return c;
}

InterpCoefficients make_coeffs(DataKind kind, int order) {
    return kind == DataKind::PointValue ? interp_coeffs(order) : cell_avg_coeffs(order);
}

std::vector<long double> lagrange_weights(int n, long double x) {
    std::vector<long double> w(static_cast<std::size_t>(n), 1.0L);
    for (int i = 0; i < n; ++i)
        for (int m = 0; m < n; ++m)
            if (m != i) w[static_cast<std::size_t>(i)] *= (x - m) / static_cast<long double>(i - m);
    return w;
}

}  // namespace mrs
