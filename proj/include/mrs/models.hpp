#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace mrs {

enum class BcType { Periodic, Dirichlet, Neumann, Discharge, Feed };

// Discharge: bottom of a settling column, boundary flux q*u.
// Feed: top of a column, prescribed boundary flux psi (zero for a closed top).
struct BoundaryCondition {
    BcType type = BcType::Periodic;
    double value = 0.0;
};

// Bulk velocity and feed flux of a continuous thickener; q and psi switch
// once u(0, t) reaches switch_u.
struct FeedControl {
    double q0 = 0.0;
    double psi0 = 0.0;
    bool has_switch = false;
    double switch_u = 0.0;
    double q1 = 0.0;
    double psi1 = 0.0;
};

enum class ModelFamily { Hyperbolic, ConvectionDiffusion, Degenerate };

struct ModelProblem {
    std::string name;
    ModelFamily family = ModelFamily::Hyperbolic;
    double lo = 0.0;
    double hi = 1.0;
    BoundaryCondition left;
    BoundaryCondition right;

    std::function<double(double)> f;
    std::function<double(double)> df;
    // Degenerate diffusion a(u) and A(u) = int_0^u a.
    std::function<double(double)> a;
    std::function<double(double)> A;
    // Constant viscosity of convection-diffusion models.
    double nu = 0.0;
    std::function<double(double)> source;

    std::function<double(double)> u0;
    // Exact cell average of u0 over [xl, xr].
    std::function<double(double, double)> average0;
    std::function<double(double, double)> exact;

    // Range of physically admissible values, used for max |f'| and max a.
    double u_min = 0.0;
    double u_max = 1.0;
    // Critical points of f in [u_min, u_max], ascending.
    std::vector<double> flux_critical;
    FeedControl feed;

    bool periodic() const { return left.type == BcType::Periodic; }
    bool has_source() const { return static_cast<bool>(source); }
    double max_abs_df(double lo_u, double hi_u) const;
    double max_diffusion() const;
};

using ModelParams = std::map<std::string, double>;

ModelProblem inviscid_burgers_box();
ModelProblem convection_diffusion(double peclet);
ModelProblem viscous_burgers_smooth(double reynolds);
ModelProblem viscous_burgers_step(double reynolds);
ModelProblem reaction_diffusion(double alpha = 0.8, double beta = 10.0);
ModelProblem shannon_ideal();
ModelProblem copper_batch(bool closed_top = true);
ModelProblem kaolin_batch(bool closed_top = true);
ModelProblem ict_thickener();

// Closed-form integrated diffusion for fluxes v u (1 - u/umax)^C with the
// power-law effective stress sigma0 (u/uc)^n.
double power_law_integrated_diffusion(double u, double vinf, double C, double umax, double sigma0, int n, double uc,
                                      double drho, double g);

struct ModelInfo {
    std::string name;
    std::string summary;
    std::vector<std::string> params;
};

const std::vector<ModelInfo>& model_catalog();
// Throws std::invalid_argument for unknown names or parameters.
ModelProblem make_model(const std::string& name, const ModelParams& params = {});

// Point values at the nodes x_j or cell averages over the fine cells.
std::vector<double> sample_nodes(const ModelProblem& m, std::size_t n0);
std::vector<double> sample_cells(const ModelProblem& m, std::size_t n0);

}  // namespace mrs
