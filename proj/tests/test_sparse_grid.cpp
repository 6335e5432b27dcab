#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "mrs/sparse_grid.hpp"

using namespace mrs;

namespace {

std::vector<double> step_nodes(std::size_t n0, double jump_at) {
    std::vector<double> v(n0 + 1);
    for (std::size_t j = 0; j <= n0; ++j) v[j] = static_cast<double>(j) / static_cast<double>(n0) < jump_at ? 1.0 : 0.0;
    return v;
}

}  // namespace

TEST_CASE("detail positions and their inverse") {
    CHECK(SparseGrid::position(1, 1) == 1);
    CHECK(SparseGrid::position(1, 3) == 5);
    CHECK(SparseGrid::position(3, 2) == 12);
    for (int k = 1; k <= 5; ++k)
        for (std::size_t j = 1; j <= (std::size_t{256} >> k); ++j) {
            const auto [kk, jj] = SparseGrid::locate(SparseGrid::position(k, j), 5);
            CHECK(kk == k);
            CHECK(jj == j);
        }
    CHECK(SparseGrid::locate(0, 5).first == 0);
    CHECK(SparseGrid::locate(64, 5) == std::pair<int, std::size_t>{0, 2});
}

TEST_CASE("coarse nodes are always active") {
    const std::vector<double> flat(129, 2.0);
    const auto rep = encode(flat, Predictor(interp_coeffs(4)), 4, false);
    const auto g = make_sparse_grid(rep, ThresholdPolicy{});
    CHECK(g.significant_count() == 0);
    CHECK(g.active_count() == g.coarse_count());
    CHECK(g.coarse_count() == 9);
    for (std::size_t p = 0; p <= 128; p += 16) CHECK(g.active[p] == 1);
}

TEST_CASE("safety adds same-level neighbours and children of large details") {
    MRRepresentation rep;
    rep.kind = DataKind::PointValue;
    rep.periodic = true;
    rep.n0 = 64;
    rep.levels = 3;
    rep.coarse.assign(8, 0.0);
    rep.details = {std::vector<double>(32, 0.0), std::vector<double>(16, 0.0), std::vector<double>(8, 0.0)};
    ThresholdPolicy pol;
    pol.eps = 1e-3;
    rep.details[2][4] = 1.5e-3;  // level 3, j=5: above eps but below 2 eps
    rep.details[1][0] = 1.0;     // level 2, j=1: large, periodic neighbour wraps
    const auto g = make_sparse_grid(rep, pol);
    CHECK(g.significant[2][4] == 1);
    CHECK(g.safety[2][3] == 1);
    CHECK(g.safety[2][5] == 1);
    // below the child factor: no level-2 children
    CHECK(g.safety[1][8] == 0);
    CHECK(g.safety[1][9] == 0);
    CHECK(g.safety[1][15] == 1);
    CHECK(g.safety[1][1] == 1);
    CHECK(g.safety[0][0] == 1);
    CHECK(g.safety[0][1] == 1);
    CHECK(g.active[SparseGrid::position(3, 5)] == 1);
    CHECK(g.active[SparseGrid::position(1, 2)] == 1);
}

TEST_CASE("significant details cluster at a jump") {
    const auto u = step_nodes(256, 0.4);
    const auto rep = encode(u, Predictor(interp_coeffs(4)), 5, false);
    ThresholdPolicy pol;
    pol.eps = 1e-4;
    const auto g = make_sparse_grid(rep, pol);
    const double jump = 0.4 * 256;
    for (int k = 1; k <= 5; ++k)
        for (std::size_t j = 1; j <= (std::size_t{256} >> k); ++j)
            if (g.significant[static_cast<std::size_t>(k - 1)][j - 1])
                CHECK(std::fabs(static_cast<double>(SparseGrid::position(k, j)) - jump) <= 4.0 * std::ldexp(1.0, k));
}

TEST_CASE("reconstruction from the active set matches decode of the kept details") {
    std::vector<double> u(257);
    for (std::size_t j = 0; j <= 256; ++j) {
        const double x = static_cast<double>(j) / 256.0;
        u[j] = std::tanh(40.0 * (x - 0.3)) + 0.2 * std::sin(2 * std::numbers::pi * x);
    }
    const Predictor P(interp_coeffs(4));
    const auto rep = encode(u, P, 5, false);
    ThresholdPolicy pol;
    pol.eps = 1e-3;
    const auto g = make_sparse_grid(rep, pol);
    const auto a = reconstruct_uniform(g, u, P);
    const auto b = reconstruct_uniform(g, rep, P);
    double err = 0.0, gap = 0.0;
    for (std::size_t j = 0; j <= 256; ++j) {
        err = std::max(err, std::fabs(a[j] - u[j]));
        gap = std::max(gap, std::fabs(a[j] - b[j]));
        if (g.active[j]) CHECK(a[j] == u[j]);
    }
    CHECK(err <= 10 * pol.eps);
    CHECK(gap <= 10 * pol.eps);
}

TEST_CASE("full grid activates every position") {
    const auto g = full_sparse_grid(64, 3, false);
    CHECK(g.active_count() == 65);
    std::vector<double> u(65, 0.5);
    const auto r = reconstruct_uniform(g, u, Predictor(interp_coeffs(2)));
    CHECK(r == u);
}

TEST_CASE("unified mask is the union") {
    const LevelMask a{{1, 0, 0}, {0}};
    const LevelMask b{{0, 0, 1}, {1}};
    CHECK(unified_mask({a, b}) == LevelMask{{1, 0, 1}, {1}});
    CHECK(unified_mask({}).empty());
}
