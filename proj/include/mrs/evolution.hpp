#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mrs/models.hpp"
#include "mrs/schemes.hpp"
#include "mrs/transform.hpp"

namespace mrs {

// Raised when the solution stops being finite or bounded.
class InstabilityError : public std::runtime_error {
public:
    InstabilityError(const std::string& what, long step, double t)
        : std::runtime_error(what), step_(step), t_(t) {}
    long step() const { return step_; }
    double time() const { return t_; }

private:
    long step_;
    double t_;
};

// Evaluates L(u) into out; may complete u (e.g. fill inactive samples).
using RhsFn = std::function<void(std::vector<double>& u, std::vector<double>& out)>;

// One explicit SSP Runge-Kutta step of order 1, 2 (Heun) or 3 (Shu-Osher).
// When idx is non-empty only those entries are advanced.
void rk_step(int order, std::vector<double>& u, double dt, const RhsFn& L, std::span<const std::size_t> idx = {});
void rk2_step(std::vector<double>& u, double dt, const RhsFn& L);
void rk3_step(std::vector<double>& u, double dt, const RhsFn& L);

struct SolveConfig {
    std::size_t n0 = 256;
    int levels = 5;
    ThresholdPolicy policy;
    int mr_order = 4;  // r for point values, rbar for cell averages
    int remesh_interval = 1;
    double cfl = 0.5;
    int rk_order = 2;
    SchemeOptions scheme;
    double t_final = 0.0;
    // Snapshot at the last step not exceeding each time, and at listed steps.
    std::vector<double> snapshot_times;
    std::vector<long> snapshot_steps;
    long max_steps = 100000000;
    double blowup_bound = 1e6;
};

struct Snapshot {
    long step = 0;
    double t = 0.0;
    std::vector<double> u;  // uniform fine data (reconstructed on the adaptive path)
    std::size_t significant = 0;
    std::size_t active = 0;
    double mu = 0.0;
    std::uint64_t flux_evals = 0;
    double cpu_s = 0.0;
    double q = 0.0;
    // (k, j) of the significant details
    std::vector<std::pair<int, std::size_t>> significant_details;
};

using SnapshotSink = std::function<void(const Snapshot&)>;

struct SolveResult {
    std::vector<double> u;
    double t = 0.0;
    long steps = 0;
    double dt = 0.0;
    std::uint64_t flux_evals = 0;
    std::uint64_t predictions = 0;
    double cpu_s = 0.0;
    std::vector<Snapshot> snapshots;
    std::size_t significant = 0;
    double mu = 0.0;
    long switch_step = -1;
    double q = 0.0;
    double psi = 0.0;
};

// Point values for hyperbolic and degenerate models, cell averages otherwise.
DataKind data_kind(const ModelProblem& m);
std::vector<double> initial_data(const ModelProblem& m, std::size_t n0);
double step_size(const ModelProblem& m, const SolveConfig& cfg);
// Step numbers at which snapshots are taken.
std::vector<long> snapshot_plan(const SolveConfig& cfg, double dt);
long final_step(const SolveConfig& cfg, double dt);

SolveResult solve_uniform(std::span<const double> u0, const ModelProblem& m, const SolveConfig& cfg,
                          const SnapshotSink& sink = {});
SolveResult solve_adaptive(std::span<const double> u0, const ModelProblem& m, const SolveConfig& cfg,
                           const SnapshotSink& sink = {});

namespace detail {

// Tracks the feed switch of a thickener and the instability guard.
struct Control {
    FeedControl feed;
    bool switched = false;
    long switch_step = -1;

    FluxContext context(double alpha) const {
        FluxContext c;
        c.alpha = alpha;
        c.q = switched ? feed.q1 : feed.q0;
        c.psi = switched ? feed.psi1 : feed.psi0;
        return c;
    }
    void update(double u_bottom, long step) {
        if (feed.has_switch && !switched && u_bottom >= feed.switch_u) {
            switched = true;
            switch_step = step;
        }
    }
};

void check_finite(std::span<const double> u, double bound, long step, double t);
double wall_seconds();

SolveResult solve_adaptive_points(std::span<const double> u0, const ModelProblem& m, const SolveConfig& cfg,
                                  const SnapshotSink& sink);
SolveResult solve_adaptive_tree(std::span<const double> u0, const ModelProblem& m, const SolveConfig& cfg,
                                const SnapshotSink& sink);

}  // namespace detail

}  // namespace mrs
