#include <algorithm>
#include <cmath>
#include <string>

#include "mrs/evolution.hpp"
#include "mrs/metrics.hpp"
#include "mrs/sparse_grid.hpp"

namespace mrs::detail {

namespace {

// A face flux predicted from coarser faces.
struct PredictedFace {
    std::size_t m;
    StencilPlan plan;
};

}  // namespace

SolveResult solve_adaptive_points(std::span<const double> u0, const ModelProblem& m, const SolveConfig& cfg,
                                  const SnapshotSink& sink) {
    const bool periodic = m.periodic();
    if (u0.size() != sample_count(DataKind::PointValue, periodic, cfg.n0))
        throw std::invalid_argument("solve_adaptive: initial data size does not match n0");
    const auto scheme = make_scheme(m, cfg.scheme);
    const Discretization d(m, *scheme, false);
    const Predictor P(interp_coeffs(cfg.mr_order));
    const double h0 = (m.hi - m.lo) / static_cast<double>(cfg.n0);
    const double dt = step_size(m, cfg);
    const long last = final_step(cfg, dt);
    const auto plan = snapshot_plan(cfg, dt);
    const double bound = cfg.blowup_bound * (1.0 + std::fabs(m.u_max) + std::fabs(m.u_min));
    const long n = static_cast<long>(u0.size());
    const std::size_t un = static_cast<std::size_t>(n);
    const int remesh = std::max(1, cfg.remesh_interval);
    const std::size_t coarse = std::size_t{1} << cfg.levels;
    const long reach = scheme->radius();
    // samples a boundary can influence within one step
    const std::size_t edge = static_cast<std::size_t>((cfg.rk_order + 1) * reach);

    std::vector<double> v(u0.begin(), u0.end());
    SparseGrid g;
    std::vector<std::size_t> upd;
    std::vector<std::uint8_t> exact(un);
    std::vector<std::size_t> exact_faces;
    // ordered coarse to fine so that every source is ready when used
    std::vector<PredictedFace> predicted;
    std::uint64_t predictions = 0;
    // F[m] is the flux through face m; for bounded data F[n] is the right end.
    std::vector<double> F(un + 1);
    TransformStats stats;
    SolveResult res;
    res.dt = dt;
    detail::Control ctl{m.feed};
    FluxContext ctx = ctl.context(1.0);
    const std::vector<double>* stage = nullptr;
    auto getv = [&](long i) { return (*stage)[static_cast<std::size_t>(i)]; };
    // The left end face enters predictions with its scheme flux so that a
    // boundary flux condition does not leak into the interior.
    auto eval = [&](long face) {
        if (face == 0 && !periodic) return d.scheme_flux(-1, n, getv, h0, ctx);
        return d.interface_flux(face - 1, n, getv, h0, ctx);
    };

    auto rebuild = [&]() {
        const MRRepresentation rep = encode(v, P, cfg.levels, periodic, &stats);
        g = make_sparse_grid(rep, cfg.policy);
        upd.clear();
        std::fill(exact.begin(), exact.end(), 0);
        for (std::size_t m = 0; m < un; m += coarse) exact[m] = 1;
        // faces whose stencil reaches a boundary ghost
        if (!periodic)
            for (std::size_t m = 0; m <= edge && m < un; ++m) exact[m] = exact[un - 1 - m] = 1;
        for (std::size_t j = 0; j < un; ++j) {
            if (!d.fixed(static_cast<long>(j), n)) upd.push_back(j);
            if (!g.active[j]) continue;
            // every face whose stencil holds an active sample
            for (long o = 1 - reach; o <= reach; ++o) {
                long f = static_cast<long>(j) + o;
                if (periodic) f = ((f % n) + n) % n;
                if (f >= 0 && f < n) exact[static_cast<std::size_t>(f)] = 1;
            }
        }
        exact_faces.clear();
        predicted.clear();
        for (std::size_t m = 0; m < un; ++m)
            if (exact[m]) exact_faces.push_back(m);
        for (int k = cfg.levels; k >= 1; --k) {
            const std::size_t nk = static_cast<std::size_t>(cfg.n0) >> k;
            for (std::size_t jj = 1; jj <= nk; ++jj) {
                const std::size_t m = SparseGrid::position(k, jj);
                if (m >= un || exact[m]) continue;
                PredictedFace pf{m, P.plan(nk, jj, periodic)};
                bool near_edge = false;
                for (int t = 0; t < pf.plan.count; ++t) {
                    std::size_t& src = pf.plan.idx[static_cast<std::size_t>(t)];
                    src <<= k;
                    near_edge = near_edge || (!periodic && (src <= edge || src + 1 + edge >= un));
                }
                // sources next to a boundary move within the step
                if (near_edge) {
                    exact[m] = 1;
                    exact_faces.push_back(m);
                } else {
                    predicted.push_back(pf);
                }
            }
        }
    };

    double c0 = detail::wall_seconds();
    rebuild();
    double cpu_total = detail::wall_seconds() - c0;

    auto emit = [&](long step) {
        Snapshot s;
        s.step = step;
        s.t = static_cast<double>(step) * dt;
        s.u = v;
        s.significant = g.significant_count();
        for (int k = 1; k <= g.levels; ++k)
            for (std::size_t j = 1; j <= g.significant[static_cast<std::size_t>(k - 1)].size(); ++j)
                if (g.significant[static_cast<std::size_t>(k - 1)][j - 1]) s.significant_details.emplace_back(k, j);
        s.active = g.active_count();
        s.mu = compression_ratio(cfg.n0, cfg.levels, s.significant);
        s.flux_evals = res.flux_evals;
        s.cpu_s = cpu_total;
        s.q = ctl.context(1.0).q;
        if (sink) sink(s);
        res.snapshots.push_back(std::move(s));
    };

    auto next = plan.begin();
    if (next != plan.end() && *next == 0) emit(*next++);
    for (long step = 1; step <= last; ++step) {
        c0 = detail::wall_seconds();
        if ((step - 1) % remesh == 0 && step > 1) rebuild();
        double alpha = 1.0;
        if (m.family == ModelFamily::Hyperbolic) {
            const auto [mn, mx] = std::minmax_element(v.begin(), v.end());
            alpha = lf_alpha(m, *mn, *mx);
        }
        ctx = ctl.context(alpha);
        RhsFn L = [&](std::vector<double>& w, std::vector<double>& out) {
            stage = &w;
            for (std::size_t f : exact_faces) F[f] = eval(static_cast<long>(f));
            for (const PredictedFace& pf : predicted) {
                double acc = 0.0;
                for (int t = 0; t < pf.plan.count; ++t) acc += pf.plan.w[t] * F[pf.plan.idx[static_cast<std::size_t>(t)]];
                F[pf.m] = acc;
            }
            res.flux_evals += exact_faces.size();
            predictions += predicted.size();
            if (periodic) {
                F[un] = F[0];
            } else {
                F[0] = d.interface_flux(-1, n, getv, h0, ctx);
                F[un] = d.interface_flux(n - 1, n, getv, h0, ctx);
                ++res.flux_evals;
            }
            for (std::size_t j : upd) {
                double r = -(F[j + 1] - F[j]) / h0;
                if (m.source) r += m.source(w[j]);
                out[j] = r;
            }
        };
        rk_step(cfg.rk_order, v, dt, L, upd);
        for (std::size_t j : upd)
            if (!std::isfinite(v[j]) || std::fabs(v[j]) > bound)
                throw InstabilityError("solution left the admissible range at step " + std::to_string(step), step,
                                       static_cast<double>(step) * dt);
        ctl.update(v.front(), step);
        cpu_total += detail::wall_seconds() - c0;
        while (next != plan.end() && *next == step) emit(*next++);
    }
    res.u = std::move(v);
    res.steps = last;
    res.t = static_cast<double>(last) * dt;
    res.cpu_s = cpu_total;
    res.significant = g.significant_count();
    res.mu = compression_ratio(cfg.n0, cfg.levels, res.significant);
    res.predictions = stats.predictions + predictions;
    res.switch_step = ctl.switch_step;
    const FluxContext fc = ctl.context(1.0);
    res.q = fc.q;
    res.psi = fc.psi;
    return res;
}

}  // namespace mrs::detail
