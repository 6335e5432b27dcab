#include "mrs/models.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>

#include "mrs/quadrature.hpp"

namespace mrs {

namespace {

constexpr double kGravity = 9.81;

double step_average(double xl, double xr, double x0, double left, double right) {
    if (xr <= x0) return left;
    if (xl >= x0) return right;
    return (left * (x0 - xl) + right * (xr - x0)) / (xr - xl);
}

void finish_flux(ModelProblem& m) {
    m.flux_critical = find_roots(m.df, m.u_min, m.u_max);
}

double param(const ModelParams& p, const std::string& key, double fallback) {
    auto it = p.find(key);
    return it == p.end() ? fallback : it->second;
}

}  // namespace

double ModelProblem::max_abs_df(double lo_u, double hi_u) const {
    if (hi_u < lo_u) std::swap(lo_u, hi_u);
    double mx = std::max(std::fabs(df(lo_u)), std::fabs(df(hi_u)));
    constexpr int n = 1000;
    for (int i = 1; i < n; ++i) mx = std::max(mx, std::fabs(df(lo_u + (hi_u - lo_u) * i / n)));
    return mx;
}

double ModelProblem::max_diffusion() const {
    if (family != ModelFamily::Degenerate) return nu;
    double mx = 0.0;
    constexpr int n = 4000;
    for (int i = 0; i <= n; ++i) mx = std::max(mx, a(u_min + (u_max - u_min) * i / n));
    return mx;
}

ModelProblem inviscid_burgers_box() {
    ModelProblem m;
    m.name = "burgers_box";
    m.family = ModelFamily::Hyperbolic;
    m.lo = -1.0;
    m.hi = 1.0;
    m.f = [](double u) { return 0.5 * u * u; };
    m.df = [](double u) { return u; };
    m.u0 = [](double x) { return std::fabs(x) <= 0.5 ? 1.0 : 0.0; };
    m.average0 = [](double xl, double xr) {
        const double a = std::max(xl, -0.5), b = std::min(xr, 0.5);
        return b > a ? (b - a) / (xr - xl) : 0.0;
    };
    // rarefaction from x = -1/2, shock from x = 1/2 moving at speed 1/2; valid for t < 1
    m.exact = [](double x, double t) {
        if (t <= 0.0) return std::fabs(x) <= 0.5 ? 1.0 : 0.0;
        const double shock = 0.5 + 0.5 * t;
        if (x < -0.5 || x >= shock) return 0.0;
        if (x < -0.5 + t) return (x + 0.5) / t;
        return 1.0;
    };
    m.u_min = 0.0;
    m.u_max = 1.0;
    finish_flux(m);
    return m;
}

ModelProblem convection_diffusion(double peclet) {
    if (!(peclet > 0)) throw std::invalid_argument("convection_diffusion: Pe must be positive");
    ModelProblem m;
    m.name = "convection_diffusion";
    m.family = ModelFamily::ConvectionDiffusion;
    m.lo = -1.0;
    m.hi = 1.0;
    m.left = {BcType::Dirichlet, 1.0};
    m.right = {BcType::Dirichlet, 0.0};
    m.nu = 1.0 / peclet;
    m.f = [](double u) { return u; };
    m.df = [](double) { return 1.0; };
    m.u0 = [](double x) { return x < 0.0 ? 1.0 : 0.0; };
    m.average0 = [](double xl, double xr) { return step_average(xl, xr, 0.0, 1.0, 0.0); };
    m.exact = [peclet](double x, double t) {
        if (t <= 0.0) return x < 0.0 ? 1.0 : 0.0;
        return 0.5 * std::erfc((x - t) / 2.0 * std::sqrt(peclet / t));
    };
    m.u_min = 0.0;
    m.u_max = 1.0;
    return m;
}

ModelProblem viscous_burgers_smooth(double reynolds) {
    if (!(reynolds > 0)) throw std::invalid_argument("viscous_burgers_smooth: Re must be positive");
    ModelProblem m;
    m.name = "viscous_burgers_smooth";
    m.family = ModelFamily::ConvectionDiffusion;
    m.lo = -1.0;
    m.hi = 1.0;
    m.nu = 1.0 / reynolds;
    m.f = [](double u) { return 0.5 * u * u; };
    m.df = [](double u) { return u; };
    m.u0 = [](double x) { return std::sin(std::numbers::pi * x); };
    m.average0 = [](double xl, double xr) {
        const double pi = std::numbers::pi;
        return (std::cos(pi * xl) - std::cos(pi * xr)) / (pi * (xr - xl));
    };
    m.u_min = -1.0;
    m.u_max = 1.0;
    finish_flux(m);
    return m;
}

ModelProblem viscous_burgers_step(double reynolds) {
    if (!(reynolds > 0)) throw std::invalid_argument("viscous_burgers_step: Re must be positive");
    ModelProblem m;
    m.name = "viscous_burgers_step";
    m.family = ModelFamily::ConvectionDiffusion;
    m.lo = -1.0;
    m.hi = 1.0;
    m.left = {BcType::Dirichlet, 1.0};
    m.right = {BcType::Dirichlet, 0.0};
    m.nu = 1.0 / reynolds;
    m.f = [](double u) { return 0.5 * u * u; };
    m.df = [](double u) { return u; };
    m.u0 = [](double x) { return x < 0.0 ? 1.0 : 0.0; };
    m.average0 = [](double xl, double xr) { return step_average(xl, xr, 0.0, 1.0, 0.0); };
    m.exact = [reynolds](double x, double t) { return 0.5 * (1.0 - std::tanh((x - 0.5 * t) * reynolds / 4.0)); };
    m.u_min = 0.0;
    m.u_max = 1.0;
    finish_flux(m);
    return m;
}

ModelProblem reaction_diffusion(double alpha, double beta) {
    ModelProblem m;
    m.name = "reaction_diffusion";
    m.family = ModelFamily::ConvectionDiffusion;
    m.lo = 0.0;
    m.hi = 20.0;
    m.left = {BcType::Neumann, 0.0};
    m.right = {BcType::Dirichlet, 0.0};
    m.nu = 1.0;
    m.f = [](double) { return 0.0; };
    m.df = [](double) { return 0.0; };
    m.source = [alpha, beta](double u) {
        const double w = 1.0 - u;
        return 0.5 * beta * beta * w * std::exp(beta * w / (alpha * w - 1.0));
    };
    m.u0 = [](double x) { return x <= 1.0 ? 1.0 : std::exp(1.0 - x); };
    m.average0 = [](double xl, double xr) {
        double s = 0.0;
        if (xl < 1.0) s += std::min(xr, 1.0) - xl;
        if (xr > 1.0) {
            const double a = std::max(xl, 1.0);
            s += std::exp(1.0 - a) - std::exp(1.0 - xr);
        }
        return s / (xr - xl);
    };
    m.u_min = 0.0;
    m.u_max = 1.0;
    return m;
}

ModelProblem shannon_ideal() {
    ModelProblem m;
    m.name = "shannon_ideal";
    m.family = ModelFamily::Degenerate;
    m.lo = 0.0;
    m.hi = 1.0;
    m.left = {BcType::Dirichlet, 0.642};
    m.right = {BcType::Dirichlet, 0.0};
    m.f = [](double u) {
        return (u * (-0.33843 + u * (1.37672 + u * (-1.62275 + u * (-0.11264 + u * 0.902253))))) * 1e-2;
    };
    m.df = [](double u) {
        return (-0.33843 + u * (2 * 1.37672 + u * (-3 * 1.62275 + u * (-4 * 0.11264 + u * 5 * 0.902253)))) * 1e-2;
    };
    m.a = [](double) { return 0.0; };
    m.A = [](double) { return 0.0; };
    m.u0 = [](double x) {
        if (x <= 0.0) return 0.642;
        if (x >= 1.0) return 0.0;
        return 0.25;
    };
    m.u_min = 0.0;
    m.u_max = 0.642;
    finish_flux(m);
    return m;
}

ModelProblem copper_batch(bool closed_top) {
    ModelProblem m;
    m.name = "copper_batch";
    m.family = ModelFamily::Degenerate;
    m.lo = 0.0;
    m.hi = 1.0;
    constexpr double v = -6.05e-4, C = 12.59, uc = 0.23, rho_g = 1500.0 * kGravity;
    const double K = 0.484 / (std::pow(uc, 8) * rho_g);
    m.left = {BcType::Discharge, 0.0};
    m.right = closed_top ? BoundaryCondition{BcType::Feed, 0.0} : BoundaryCondition{BcType::Dirichlet, 0.0};
    m.f = [](double u) {
        if (u <= 0.0) return v * u;
        if (u >= 1.0) return 0.0;
        return v * u * std::pow(1.0 - u, C);
    };
    m.df = [](double u) {
        if (u <= 0.0) return v;
        if (u >= 1.0) return 0.0;
        return v * std::pow(1.0 - u, C - 1.0) * (1.0 - u - C * u);
    };
    m.a = [K](double u) {
        if (u <= uc || u >= 1.0) return 0.0;
        return K * std::pow(u, 7) * std::pow(1.0 - u, C);
    };
    auto table = std::make_shared<IntegratedTable>(m.a, uc, 1.0, 2048);
    m.A = [table](double u) { return (*table)(std::min(u, 1.0)); };
    m.u0 = [closed_top](double x) { return (!closed_top && x >= 1.0) ? 0.0 : 0.15; };
    m.u_min = 0.0;
    m.u_max = 1.0;
    finish_flux(m);
    return m;
}

double power_law_integrated_diffusion(double u, double vinf, double C, double umax, double sigma0, int n, double uc,
                                      double drho, double g) {
    auto calA = [&](double w) {
        double sum = 0.0;
        double prod = 1.0;
        const double ratio = umax / w - 1.0;
        double pw = 1.0;
        for (int j = 1; j <= n; ++j) {
            prod *= (n + 1 - j) / (C + j);
            pw *= ratio;
            sum += prod * pw;
        }
        return vinf * sigma0 / (drho * g * std::pow(uc, n)) * std::pow(1.0 - w / umax, C) * std::pow(w, n) * sum;
    };
    if (u <= uc) return 0.0;
    return calA(std::min(u, umax)) - calA(uc);
}

ModelProblem kaolin_batch(bool closed_top) {
    ModelProblem m;
    m.name = "kaolin_batch";
    m.family = ModelFamily::Degenerate;
    constexpr double vinf = -2.7e-4, C = 21.5, umax = 0.5, sigma0 = 5.7, uc = 0.07, drho = 1690.0;
    constexpr int n = 5;
    m.lo = 0.0;
    m.hi = 0.16;
    m.left = {BcType::Discharge, 0.0};
    m.right = closed_top ? BoundaryCondition{BcType::Feed, 0.0} : BoundaryCondition{BcType::Dirichlet, 0.0};
    m.f = [](double u) {
        if (u <= 0.0) return vinf * u;
        if (u >= umax) return 0.0;
        return vinf * u * std::pow(1.0 - u / umax, C);
    };
    m.df = [](double u) {
        if (u <= 0.0) return vinf;
        if (u >= umax) return 0.0;
        return vinf * std::pow(1.0 - u / umax, C - 1.0) * (1.0 - u / umax - C * u / umax);
    };
    m.a = [](double u) {
        if (u <= uc || u >= umax) return 0.0;
        return -vinf * sigma0 * n * std::pow(u, n - 1) * std::pow(1.0 - u / umax, C) /
               (drho * kGravity * std::pow(uc, n));
    };
    m.A = [](double u) {
        return power_law_integrated_diffusion(u, vinf, C, umax, sigma0, n, uc, drho, kGravity);
    };
    m.u0 = [closed_top](double x) { return (!closed_top && x >= 0.16) ? 0.0 : 0.05; };
    m.u_min = 0.0;
    m.u_max = umax;
    finish_flux(m);
    return m;
}

ModelProblem ict_thickener() {
    ModelProblem m;
    m.name = "ict_thickener";
    m.family = ModelFamily::Degenerate;
    constexpr double v = -1.98e-4, C = 5.647, umax = 0.3, uc = 0.1, K = 612.67;
    m.lo = 0.0;
    m.hi = 2.0;
    m.left = {BcType::Discharge, 0.0};
    m.right = {BcType::Feed, -8.55e-7};
    m.feed = {0.0, -8.55e-7, true, 0.171, -5e-6, 0.171 * -5e-6};
    m.f = [](double u) {
        if (u <= 0.0) return v * u;
        if (u >= umax) return 0.0;
        return v * u * std::pow(1.0 - u / umax, C);
    };
    m.df = [](double u) {
        if (u <= 0.0) return v;
        if (u >= umax) return 0.0;
        return v * std::pow(1.0 - u / umax, C - 1.0) * (1.0 - u / umax - C * u / umax);
    };
    m.a = [](double u) {
        if (u <= uc || u >= umax) return 0.0;
        return K * std::pow(u, 8) * std::pow(1.0 - u / umax, C);
    };
    auto table = std::make_shared<IntegratedTable>(m.a, uc, umax, 2048);
    m.A = [table](double u) { return (*table)(std::min(u, 0.3)); };
    m.u0 = [](double) { return 0.052; };
    m.u_min = 0.0;
    m.u_max = umax;
    finish_flux(m);
    return m;
}

const std::vector<ModelInfo>& model_catalog() {
    static const std::vector<ModelInfo> catalog = {
        {"burgers_box", "inviscid Burgers, periodic box initial data on [-1,1]", {}},
        {"convection_diffusion", "u_t + u_x = u_xx/Pe, step data, Dirichlet 1/0 on [-1,1]", {"Pe"}},
        {"viscous_burgers_smooth", "viscous Burgers, sin(pi x), periodic on [-1,1]", {"Re"}},
        {"viscous_burgers_step", "viscous Burgers, step data, Dirichlet 1/0 on [-1,1]", {"Re"}},
        {"reaction_diffusion", "flame front u_t = u_xx + S(u) on [0,20]", {"alpha", "beta"}},
        {"shannon_ideal", "ideal sedimentation with the Shannon flux, H=1", {}},
        {"copper_batch", "batch settling of copper ore, H=1, u0=0.15", {"closed_top"}},
        {"kaolin_batch", "batch settling of kaolin, H=0.16, u0=0.05", {"closed_top"}},
        {"ict_thickener", "continuous thickener with feed switch, H=2, u0=0.052", {}},
    };
    return catalog;
}

ModelProblem make_model(const std::string& name, const ModelParams& params) {
    const auto& cat = model_catalog();
    auto it = std::find_if(cat.begin(), cat.end(), [&](const ModelInfo& i) { return i.name == name; });
    if (it == cat.end()) throw std::invalid_argument("unknown model '" + name + "'");
    for (const auto& [key, value] : params) {
        (void)value;
        if (std::find(it->params.begin(), it->params.end(), key) == it->params.end())
            throw std::invalid_argument("model '" + name + "' has no parameter '" + key + "'");
    }
    if (name == "burgers_box") return inviscid_burgers_box();
    if (name == "convection_diffusion") return convection_diffusion(param(params, "Pe", 100.0));
    if (name == "viscous_burgers_smooth") return viscous_burgers_smooth(param(params, "Re", 10.0));
    if (name == "viscous_burgers_step") return viscous_burgers_step(param(params, "Re", 1000.0));
    if (name == "reaction_diffusion") return reaction_diffusion(param(params, "alpha", 0.8), param(params, "beta", 10.0));
    if (name == "shannon_ideal") return shannon_ideal();
    if (name == "copper_batch") return copper_batch(param(params, "closed_top", 1.0) != 0.0);
    if (name == "kaolin_batch") return kaolin_batch(param(params, "closed_top", 1.0) != 0.0);
    return ict_thickener();
}

std::vector<double> sample_nodes(const ModelProblem& m, std::size_t n0) {
    const std::size_t n = m.periodic() ? n0 : n0 + 1;
    std::vector<double> u(n);
    const double h = (m.hi - m.lo) / static_cast<double>(n0);
    for (std::size_t j = 0; j < n; ++j) u[j] = m.u0(j == n0 ? m.hi : m.lo + static_cast<double>(j) * h);
    if (!m.periodic()) {
        if (m.left.type == BcType::Dirichlet) u.front() = m.left.value;
        if (m.right.type == BcType::Dirichlet) u.back() = m.right.value;
    }
    return u;
}

std::vector<double> sample_cells(const ModelProblem& m, std::size_t n0) {
    std::vector<double> u(n0);
    const double h = (m.hi - m.lo) / static_cast<double>(n0);
    for (std::size_t j = 0; j < n0; ++j) {
        const double xl = m.lo + static_cast<double>(j) * h;
        const double xr = j + 1 == n0 ? m.hi : xl + h;
        u[j] = m.average0 ? m.average0(xl, xr) : gauss_legendre(m.u0, xl, xr, 4) / (xr - xl);
    }
    return u;
}

}  // namespace mrs
