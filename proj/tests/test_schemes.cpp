#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "mrs/schemes.hpp"

using namespace mrs;

TEST_CASE("Lax-Friedrichs splitting") {
    const auto [p, m] = lf_split(2.0, 1.0, 3.0);
    CHECK(p == 2.5);
    CHECK(m == -0.5);
    CHECK(p + m == 2.0);
}

TEST_CASE("ENO stencil selection follows the smaller difference") {
    // V smooth on the left, kinked on the right of node 3
    const std::vector<double> V{0, 1, 2, 3, 10, 30};
    CHECK(eno_stencil_select(V, 2, 1) == 2);
    CHECK(eno_stencil_select(V, 2, 2) == 1);
    CHECK(eno_stencil_select(V, 2, 3) == 0);
    // ties go left
    const std::vector<double> W{0, 1, 2, 3, 4, 5};
    CHECK(eno_stencil_select(W, 2, 2) == 1);
    CHECK_THROWS(eno_stencil_select(W, 5, 2));
}

TEST_CASE("ENO reconstruction is exact for polynomial averages") {
    // cell averages of x^2 on unit cells [i, i+1]
    std::vector<double> g(6);
    for (int i = 0; i < 6; ++i) g[static_cast<std::size_t>(i)] = (std::pow(i + 1.0, 3) - std::pow(i, 3)) / 3.0;
    // right edge of cell 2 is x = 3
    for (std::size_t start : {0u, 1u, 2u}) CHECK(eno_reconstruct_right(g, 2, start, 3) == doctest::Approx(9.0));
    CHECK(eno_reconstruct_right(g, 2, 2, 1) == g[2]);
}

TEST_CASE("LF-ENO flux is consistent") {
    ModelProblem m;
    m.f = [](double u) { return 0.5 * u * u; };
    for (int order : {1, 2, 3}) {
        std::vector<double> w(static_cast<std::size_t>(2 * order), 0.7);
        CHECK(lf_eno_numerical_flux(m, w, order, 1.0) == doctest::Approx(0.245));
    }
    // first order reduces to the local Lax-Friedrichs flux
    const std::vector<double> w{0.2, 0.9};
    const double ref = 0.5 * (m.f(0.2) + m.f(0.9)) - 0.5 * 1.0 * (0.9 - 0.2);
    CHECK(lf_eno_numerical_flux(m, w, 1, 1.0) == doctest::Approx(ref));
}

TEST_CASE("Roe flux upwinds and is consistent") {
    ModelProblem m;
    m.f = [](double u) { return 0.5 * u * u; };
    m.df = [](double u) { return u; };
    CHECK(roe_flux(m, 0.4, 0.4) == doctest::Approx(0.08));
    CHECK(roe_flux(m, 1.0, 0.5) == doctest::Approx(m.f(1.0)));
    CHECK(roe_flux(m, -1.0, -0.5) == doctest::Approx(m.f(-0.5)));
}

TEST_CASE("ENO2 minmod reconstruction") {
    CHECK(eno_minmod(1.0, -2.0) == 1.0);
    CHECK(eno_minmod(-3.0, 2.0) == 2.0);
    CHECK(eno_minmod(2.0, -2.0) == 2.0);
    // linear data: both states hit the interface value
    const auto [l, r] = eno2_reconstruct(1.0, 2.0, 3.0, 4.0);
    CHECK(l == 2.5);
    CHECK(r == 2.5);
}

TEST_CASE("Engquist-Osher flux") {
    ModelProblem m;
    m.f = [](double u) { return u * (1.0 - u); };
    m.df = [](double u) { return 1.0 - 2.0 * u; };
    m.flux_critical = {0.5};
    const EngquistOsher eo(m);
    for (double u : {0.0, 0.2, 0.5, 0.8, 1.0}) CHECK(eo(u, u) == doctest::Approx(m.f(u)));
    // f+ nondecreasing, f- nonincreasing
    double prev_p = -1e9, prev_m = 1e9;
    for (int i = 0; i <= 50; ++i) {
        const double u = i / 50.0;
        CHECK(eo.plus(u) >= prev_p - 1e-15);
        CHECK(eo.minus(u) <= prev_m + 1e-15);
        prev_p = eo.plus(u);
        prev_m = eo.minus(u);
    }
    // closed form: f+ = f(min(u, 1/2)), f- = f(max(u, 1/2)) - 1/4
    CHECK(eo(0.8, 0.1) == doctest::Approx(0.25 + (0.25 - 0.25)));
    CHECK(eo(0.3, 0.9) == doctest::Approx(m.f(0.3) + m.f(0.9) - 0.25));
    CHECK(eo_flux(m, 0.3, 0.9) == eo(0.3, 0.9));
}

TEST_CASE("MUSCL limiter") {
    CHECK(minmod3(1, 2, 3) == 1);
    CHECK(minmod3(-1, -2, -3) == -1);
    CHECK(minmod3(1, -2, 3) == 0);
    CHECK(muscl_slope(0.0, 1.0, 2.0, 0.5, 1.0) == doctest::Approx(2.0));
    CHECK(muscl_slope(0.0, 1.0, 1.0, 0.5, 1.0) == 0.0);
    CHECK(muscl_slope(0.0, 1.0, 4.0, 1.0, 2.0) == doctest::Approx(2.0));
}

TEST_CASE("periodic uniform right-hand side conserves") {
    const ModelProblem m = viscous_burgers_smooth(10.0);
    const auto s = make_scheme(m, {});
    const Discretization d(m, *s, true);
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> U(-1, 1);
    std::vector<double> u(64), out(64), F(65);
    for (auto& x : u) x = U(rng);
    uniform_rhs(d, u, 2.0 / 64, FluxContext{}, out, F);
    double total = 0.0;
    for (double r : out) total += r;
    CHECK(std::fabs(total) < 1e-10);
}

TEST_CASE("closed settling column conserves") {
    const ModelProblem m = copper_batch();
    std::vector<double> u(65);
    for (std::size_t j = 0; j < u.size(); ++j) u[j] = 0.15 + 0.1 * std::sin(0.2 * static_cast<double>(j));
    const auto r = degenerate_rhs(m, u, 1.0 / 64, 0.0, 0.0);
    double total = 0.0;
    for (double x : r) total += x;
    CHECK(std::fabs(total) < 1e-15);
}

TEST_CASE("discharge and feed boundaries") {
    const ModelProblem m = ict_thickener();
    const auto s = make_scheme(m, {});
    const Discretization d(m, *s, false);
    const std::vector<double> u{0.2, 0.1, 0.05, 0.05};
    auto get = [&](long i) { return u[static_cast<std::size_t>(i)]; };
    FluxContext c;
    c.q = -5e-6;
    c.psi = -8.55e-7;
    CHECK(d.interface_flux(-1, 4, get, 0.5, c) == doctest::Approx(-1e-6));
    CHECK(d.interface_flux(3, 4, get, 0.5, c) == c.psi);
    CHECK(d.interface_flux(1, 4, get, 0.5, c) == d.scheme_flux(1, 4, get, 0.5, c));
}

TEST_CASE("step sizes") {
    const ModelProblem m = convection_diffusion(100.0);
    CHECK(cfl_dt(m, 0.01, 0.5) == doctest::Approx(0.5 * 0.01 / (1.0 + 2.0 * 0.01 / 0.01)));
    CHECK(tvd_cfl_bound(4.0) == 0.5);
    CHECK(lf_alpha(viscous_burgers_smooth(1.0), -0.3, 0.8) == doctest::Approx(0.8).epsilon(1e-3));
}

TEST_CASE("scheme factory") {
    CHECK(make_scheme(inviscid_burgers_box(), {})->kind() == SchemeKind::LfEno);
    CHECK(make_scheme(convection_diffusion(10.0), {})->kind() == SchemeKind::RoeEno2);
    CHECK(make_scheme(kaolin_batch(), {})->kind() == SchemeKind::EoMuscl);
    SchemeOptions bad;
    bad.eno_order = 4;
    CHECK_THROWS(make_scheme(inviscid_burgers_box(), bad));
}
