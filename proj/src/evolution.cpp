#include "mrs/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <chrono>

#include "mrs/metrics.hpp"

namespace mrs {

void rk_step(int order, std::vector<double>& u, double dt, const RhsFn& L, std::span<const std::size_t> idx) {
    if (order < 1 || order > 3) throw std::invalid_argument("rk_step: order must be 1, 2 or 3");
    const std::size_t n = u.size();
    std::vector<double> k(n, 0.0);
    auto each = [&](auto&& fn) {
        if (idx.empty()) {
            for (std::size_t i = 0; i < n; ++i) fn(i);
        } else {
            for (std::size_t i : idx) fn(i);
        }
    };
    L(u, k);
    if (order == 1) {
        each([&](std::size_t i) { u[i] += dt * k[i]; });
        return;
    }
    std::vector<double> u1 = u;
    each([&](std::size_t i) { u1[i] = u[i] + dt * k[i]; });
    L(u1, k);
    if (order == 2) {
        each([&](std::size_t i) { u[i] = 0.5 * u[i] + 0.5 * (u1[i] + dt * k[i]); });
        return;
    }
    std::vector<double> u2 = u1;
    each([&](std::size_t i) { u2[i] = 0.75 * u[i] + 0.25 * (u1[i] + dt * k[i]); });
    L(u2, k);
    each([&](std::size_t i) { u[i] = u[i] / 3.0 + 2.0 / 3.0 * (u2[i] + dt * k[i]); });
}

void rk2_step(std::vector<double>& u, double dt, const RhsFn& L) { rk_step(2, u, dt, L); }
void rk3_step(std::vector<double>& u, double dt, const RhsFn& L) { rk_step(3, u, dt, L); }

DataKind data_kind(const ModelProblem& m) {
    return m.family == ModelFamily::ConvectionDiffusion ? DataKind::CellAverage : DataKind::PointValue;
}

std::vector<double> initial_data(const ModelProblem& m, std::size_t n0) {
    return data_kind(m) == DataKind::CellAverage ? sample_cells(m, n0) : sample_nodes(m, n0);
}

double step_size(const ModelProblem& m, const SolveConfig& cfg) {
    if (cfg.n0 == 0) throw std::invalid_argument("solver: n0 must be positive");
    return cfl_dt(m, (m.hi - m.lo) / static_cast<double>(cfg.n0), cfg.cfl);
}

long final_step(const SolveConfig& cfg, double dt) {
    long n = static_cast<long>(std::floor(cfg.t_final / dt + 1e-9));
    for (long s : cfg.snapshot_steps) n = std::max(n, s);
    return std::min(n, cfg.max_steps);
}

std::vector<long> snapshot_plan(const SolveConfig& cfg, double dt) {
    std::vector<long> plan;
    const long last = final_step(cfg, dt);
    for (double t : cfg.snapshot_times) plan.push_back(std::min(last, static_cast<long>(std::floor(t / dt + 1e-9))));
    for (long s : cfg.snapshot_steps) plan.push_back(std::min(last, s));
    std::sort(plan.begin(), plan.end());
    plan.erase(std::unique(plan.begin(), plan.end()), plan.end());
    return plan;
}

namespace detail {

void check_finite(std::span<const double> u, double bound, long step, double t) {
    for (double v : u)
        if (!std::isfinite(v) || std::fabs(v) > bound)
            throw InstabilityError("solution left the admissible range at step " + std::to_string(step), step, t);
}

double wall_seconds() {
    return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch()).count();
}

}  // namespace detail

SolveResult solve_uniform(std::span<const double> u0, const ModelProblem& m, const SolveConfig& cfg,
                          const SnapshotSink& sink) {
    const DataKind kind = data_kind(m);
    if (u0.size() != sample_count(kind, m.periodic(), cfg.n0))
        throw std::invalid_argument("solve_uniform: initial data size does not match n0");
    const auto scheme = make_scheme(m, cfg.scheme);
    const Discretization d(m, *scheme, kind == DataKind::CellAverage);
    const double h0 = (m.hi - m.lo) / static_cast<double>(cfg.n0);
    const double dt = step_size(m, cfg);
    const long last = final_step(cfg, dt);
    const auto plan = snapshot_plan(cfg, dt);
    const double bound = cfg.blowup_bound * (1.0 + std::fabs(m.u_max) + std::fabs(m.u_min));

    std::vector<double> u(u0.begin(), u0.end());
    std::vector<double> F(u.size() + 1);
    detail::Control ctl{m.feed};
    SolveResult res;
    res.dt = dt;
    const std::uint64_t per_eval = d.periodic() ? u.size() : u.size() + 1;
    double cpu = 0.0;
    auto emit = [&](long step) {
        Snapshot s;
        s.step = step;
        s.t = static_cast<double>(step) * dt;
        s.u = u;
        s.significant = cfg.n0 - (cfg.n0 >> cfg.levels);
        s.active = u.size();
        s.mu = 1.0;
        s.flux_evals = res.flux_evals;
        s.cpu_s = cpu;
        s.q = ctl.context(1.0).q;
        if (sink) sink(s);
        res.snapshots.push_back(std::move(s));
    };
    auto next = plan.begin();
    if (next != plan.end() && *next == 0) emit(*next++);
    for (long step = 1; step <= last; ++step) {
        const double c0 = detail::wall_seconds();
        double alpha = 1.0;
        if (m.family == ModelFamily::Hyperbolic) {
            const auto [mn, mx] = std::minmax_element(u.begin(), u.end());
            alpha = lf_alpha(m, *mn, *mx);
        }
        const FluxContext ctx = ctl.context(alpha);
        RhsFn L = [&](std::vector<double>& v, std::vector<double>& out) {
            uniform_rhs(d, v, h0, ctx, out, F);
            res.flux_evals += per_eval;
        };
        rk_step(cfg.rk_order, u, dt, L);
        detail::check_finite(u, bound, step, static_cast<double>(step) * dt);
        ctl.update(u.front(), step);
        cpu += detail::wall_seconds() - c0;
        while (next != plan.end() && *next == step) emit(*next++);
    }
    res.u = std::move(u);
    res.steps = last;
    res.t = static_cast<double>(last) * dt;
    res.cpu_s = cpu;
    res.mu = 1.0;
    res.switch_step = ctl.switch_step;
    const FluxContext fc = ctl.context(1.0);
    res.q = fc.q;
    res.psi = fc.psi;
    return res;
}

SolveResult solve_adaptive(std::span<const double> u0, const ModelProblem& m, const SolveConfig& cfg,
                           const SnapshotSink& sink) {
    if (data_kind(m) == DataKind::CellAverage) return detail::solve_adaptive_tree(u0, m, cfg, sink);
    return detail::solve_adaptive_points(u0, m, cfg, sink);
}

}  // namespace mrs
