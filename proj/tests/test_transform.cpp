#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "mrs/transform.hpp"

using namespace mrs;

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

std::vector<double> random_vector(std::size_t n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    std::vector<double> v(n);
    for (auto& x : v) x = U(rng);
    return v;
}

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::fabs(a[i] - b[i]));
    return m;
}

// Point values of g on n0 intervals of [0, 1].
std::vector<double> nodes_of(double (*g)(double), std::size_t n0, bool periodic) {
    std::vector<double> v(periodic ? n0 : n0 + 1);
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = g(static_cast<double>(j) / static_cast<double>(n0));
    return v;
}

// Exact cell averages from a primitive G.
std::vector<double> cells_of(double (*G)(double), std::size_t n0) {
    std::vector<double> v(n0);
    const double h = 1.0 / static_cast<double>(n0);
    for (std::size_t j = 0; j < n0; ++j) v[j] = (G(static_cast<double>(j + 1) * h) - G(static_cast<double>(j) * h)) / h;
    return v;
}

}  // namespace

TEST_CASE("encode then decode reproduces random data") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        for (int r : {2, 4}) {
            const Predictor P(interp_coeffs(r));
            for (bool periodic : {true, false}) {
                const auto u = random_vector(periodic ? 256 : 257, rng);
                CHECK(max_diff(decode(encode(u, P, 6, periodic), P), u) < 10 * kEps);
            }
        }
        for (int rbar : {3, 5}) {
            const Predictor P(cell_avg_coeffs(rbar));
            for (bool periodic : {true, false}) {
                const auto u = random_vector(256, rng);
                CHECK(max_diff(decode(encode(u, P, 6, periodic), P), u) < 10 * kEps);
            }
        }
    }
}

TEST_CASE("hand-computed linear-interpolation details") {
    const std::vector<double> u{0, 1, 4, 9, 16, 9, 4, 1};
    const Predictor P(interp_coeffs(2));
    const auto rep = encode(u, P, 1, true);
    REQUIRE(rep.coarse == std::vector<double>{0, 4, 16, 4});
    // odd node 2j-1 minus the mean of its neighbours
    CHECK(rep.details[0] == std::vector<double>{1 - 2.0, 9 - 10.0, 9 - 10.0, 1 - 2.0});
}

TEST_CASE("polynomials below the order give zero details") {
    auto cubic = [](double x) { return 1.0 - 2.0 * x + 0.5 * x * x + 3.0 * x * x * x; };
    auto quad_primitive = [](double x) { return x * (1.0 + x * (-0.75 + x * 0.4)); };
    static auto c = cubic;
    static auto q = quad_primitive;
    const Predictor P4(interp_coeffs(4));
    const auto rp = encode(nodes_of([](double x) { return c(x); }, 128, false), P4, 5, false);
    for (const auto& level : rp.details)
        for (double d : level) CHECK(std::fabs(d) <= 1e-13);
    // degree 2 averages under rbar = 3
    const Predictor P3(cell_avg_coeffs(3));
    const auto rc = encode(cells_of([](double x) { return q(x); }, 128), P3, 5, false);
    for (const auto& level : rc.details)
        for (double d : level) CHECK(std::fabs(d) <= 1e-13);
}

TEST_CASE("cell-average details equal primitive details over the fine spacing") {
    std::mt19937_64 rng(3);
    const std::size_t n0 = 128;
    const int L = 4;
    const auto ubar = random_vector(n0, rng);
    const double h = 1.0 / static_cast<double>(n0);
    std::vector<double> U(n0 + 1, 0.0);
    for (std::size_t j = 0; j < n0; ++j) U[j + 1] = U[j] + h * ubar[j];
    const auto dc = encode(ubar, Predictor(cell_avg_coeffs(3)), L, false);
    const auto dp = encode(U, Predictor(interp_coeffs(4)), L, false);
    for (int k = 1; k <= L; ++k) {
        const double hk1 = h * std::ldexp(1.0, k - 1);
        const std::size_t nk = n0 >> k;
        // interior details where both stencils are central
        for (std::size_t j = 3; j + 2 <= nk; ++j)
            CHECK(dc.details[static_cast<std::size_t>(k - 1)][j - 1] ==
                  doctest::Approx(dp.details[static_cast<std::size_t>(k - 1)][j - 1] / hk1).epsilon(1e-9));
    }
}

TEST_CASE("encode and decode use O(N0) predictions") {
    std::mt19937_64 rng(11);
    const auto u = random_vector(1024, rng);
    const Predictor P(interp_coeffs(4));
    TransformStats st;
    const auto rep = encode(u, P, 8, true, &st);
    CHECK(st.predictions <= 3 * u.size());
    TransformStats st2;
    decode(rep, P, &st2);
    CHECK(st2.predictions <= 3 * u.size());
}

TEST_CASE("threshold is inclusive and level dependent") {
    ThresholdPolicy pol;
    pol.eps = 1e-3;
    CHECK(pol.level_tol(5, 5) == 1e-3);
    CHECK(pol.level_tol(3, 5) == 0.25e-3);
    MRRepresentation rep;
    rep.kind = DataKind::PointValue;
    rep.n0 = 8;
    rep.levels = 1;
    rep.coarse = {0, 0, 0, 0};
    rep.details = {{1e-3, -1e-3, 1.0000001e-3, 0.0}};
    const auto m = significance_mask(rep, pol);
    CHECK(m[0] == std::vector<std::uint8_t>{0, 0, 1, 0});
    const auto t = truncate(rep, pol);
    CHECK(t.details[0] == std::vector<double>{0, 0, 1.0000001e-3, 0});
    CHECK(t.coarse == rep.coarse);
    CHECK(count_mask(m) == 1);
}

TEST_CASE("eps zero keeps every nonzero detail") {
    std::mt19937_64 rng(5);
    const auto u = random_vector(256, rng);
    const Predictor P(interp_coeffs(4));
    ThresholdPolicy pol;
    pol.eps = 0.0;
    const auto rep = encode(u, P, 5, true);
    CHECK(decode(truncate(rep, pol), P) == decode(rep, P));
}

TEST_CASE("truncation error scales linearly with eps on smooth data") {
    const auto u = nodes_of([](double x) { return std::sin(std::numbers::pi * x); }, 256, false);
    const Predictor P(interp_coeffs(4));
    const auto rep = encode(u, P, 5, false);
    for (double eps : {1e-2, 1e-3, 1e-4, 1e-5, 1e-6}) {
        ThresholdPolicy pol;
        pol.eps = eps;
        CHECK(max_diff(decode(truncate(rep, pol), P), u) <= 10 * eps);
    }
}

TEST_CASE("detail decay on smooth and step data") {
    const Predictor P3(cell_avg_coeffs(3));
    const auto smooth = encode(cells_of([](double x) { return -std::cos(std::numbers::pi * x) / std::numbers::pi; }, 1024),
                               P3, 6, false);
    const auto ds = detail_decay_probe(smooth);
    REQUIRE(ds.size() == 6);
    for (int k = 2; k <= 6; ++k) {
        const double ratio = ds[static_cast<std::size_t>(k - 2)] / ds[static_cast<std::size_t>(k - 1)];
        CHECK(ratio >= 0.125 / 1.5);
        CHECK(ratio <= 1.5 * 0.125);
    }
    const auto step = encode(nodes_of([](double x) { return x < 0.3 ? 1.0 : 0.0; }, 1024, false),
                             Predictor(interp_coeffs(4)), 6, false);
    const auto dj = detail_decay_probe(step);
    for (int k = 2; k <= 6; ++k) {
        const double ratio = dj[static_cast<std::size_t>(k - 2)] / dj[static_cast<std::size_t>(k - 1)];
        CHECK(ratio >= 0.5);
        CHECK(ratio <= 2.0);
    }
}

TEST_CASE("apply_mask zeroes unmarked details only") {
    std::mt19937_64 rng(9);
    const auto u = random_vector(64, rng);
    const auto rep = encode(u, Predictor(interp_coeffs(2)), 2, true);
    LevelMask keep{std::vector<std::uint8_t>(32, 0), std::vector<std::uint8_t>(16, 1)};
    keep[0][4] = 1;
    const auto out = apply_mask(rep, keep);
    for (std::size_t j = 0; j < 32; ++j) CHECK(out.details[0][j] == (j == 4 ? rep.details[0][4] : 0.0));
    CHECK(out.details[1] == rep.details[1]);
}

TEST_CASE("sample counts") {
    CHECK(sample_count(DataKind::PointValue, true, 64) == 64);
    CHECK(sample_count(DataKind::PointValue, false, 64) == 65);
    CHECK(sample_count(DataKind::CellAverage, false, 64) == 64);
}
