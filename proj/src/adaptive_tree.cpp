#include <cmath>

#include "mrs/evolution.hpp"
#include "mrs/graded_tree.hpp"
#include "mrs/metrics.hpp"

namespace mrs::detail {

SolveResult solve_adaptive_tree(std::span<const double> u0, const ModelProblem& m, const SolveConfig& cfg,
                                const SnapshotSink& sink) {
    const bool periodic = m.periodic();
    if (u0.size() != cfg.n0) throw std::invalid_argument("solve_adaptive: initial data size does not match n0");
    const auto scheme = make_scheme(m, cfg.scheme);
    const Discretization d(m, *scheme, true);
    const Predictor P(cell_avg_coeffs(cfg.mr_order));
    const double length = m.hi - m.lo;
    const double dt = step_size(m, cfg);
    const long last = final_step(cfg, dt);
    const auto plan = snapshot_plan(cfg, dt);
    const double bound = cfg.blowup_bound * (1.0 + std::fabs(m.u_max) + std::fabs(m.u_min));
    const int remesh = std::max(1, cfg.remesh_interval);

    GradedTree tree(cfg.n0, cfg.levels, periodic, P);
    for (std::size_t j = 1; j <= cfg.n0; j += 2) tree.ensure(0, static_cast<long>(j));
    tree.load_fine(u0);

    std::vector<GradedTree::Node> leaves;
    std::vector<LeafInterface> faces;
    std::vector<double> F;
    std::size_t significant = 0;
    std::vector<std::pair<int, std::size_t>> sig_nodes;
    SolveResult res;
    res.dt = dt;
    detail::Control ctl{m.feed};
    double cpu = 0.0;

    auto rebuild = [&]() {
        AdaptResult ar = tree_adapt(tree, cfg.policy);
        significant = ar.significant;
        sig_nodes = std::move(ar.significant_nodes);
        leaves = tree.leaves();
        faces = leaf_interfaces(tree, leaves);
        F.assign(faces.size(), 0.0);
    };
    auto store = [&](const std::vector<double>& lv) {
        for (std::size_t i = 0; i < leaves.size(); ++i) tree.set_value(leaves[i].k, leaves[i].j, lv[i]);
        tree.project();
    };
    auto emit = [&](long step) {
        Snapshot s;
        s.step = step;
        s.t = static_cast<double>(step) * dt;
        s.u = tree.to_fine();
        s.significant = significant;
        s.significant_details = sig_nodes;
        s.active = leaves.size();
        s.mu = compression_ratio(cfg.n0, cfg.levels, significant);
        s.flux_evals = res.flux_evals;
        s.cpu_s = cpu;
        if (sink) sink(s);
        res.snapshots.push_back(std::move(s));
    };

    double c0 = detail::wall_seconds();
    rebuild();
    cpu += detail::wall_seconds() - c0;
    auto next = plan.begin();
    if (next != plan.end() && *next == 0) emit(*next++);

    std::vector<double> lv;
    for (long step = 1; step <= last; ++step) {
        c0 = detail::wall_seconds();
        if ((step - 1) % remesh == 0 && step > 1) rebuild();
        const FluxContext ctx = ctl.context(1.0);
        lv.resize(leaves.size());
        for (std::size_t i = 0; i < leaves.size(); ++i) lv[i] = tree.value(leaves[i].k, leaves[i].j);
        RhsFn L = [&](std::vector<double>& w, std::vector<double>& out) {
            store(w);
            for (std::size_t f = 0; f < faces.size(); ++f) {
                const int l = faces[f].level;
                const long nl = static_cast<long>(tree.intervals(l));
                auto get = [&](long i) { return tree.value_at(l, i + 1); };
                F[f] = d.interface_flux(faces[f].cell_left - 1, nl, get, length / static_cast<double>(nl), ctx);
            }
            res.flux_evals += faces.size();
            const auto rate = leaf_fluxes_conservative(tree, leaves, faces, F, length);
            for (std::size_t i = 0; i < leaves.size(); ++i) out[i] = rate[i] + (m.source ? m.source(w[i]) : 0.0);
        };
        rk_step(cfg.rk_order, lv, dt, L);
        store(lv);
        detail::check_finite(lv, bound, step, static_cast<double>(step) * dt);
        cpu += detail::wall_seconds() - c0;
        while (next != plan.end() && *next == step) emit(*next++);
    }
    res.u = tree.to_fine();
    res.steps = last;
    res.t = static_cast<double>(last) * dt;
    res.cpu_s = cpu;
    res.significant = significant;
    res.mu = compression_ratio(cfg.n0, cfg.levels, significant);
    return res;
}

}  // namespace mrs::detail
