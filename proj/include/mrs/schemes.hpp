#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "mrs/models.hpp"

namespace mrs {

// Lax-Friedrichs splitting f+- = (f +- alpha u)/2.
std::pair<double, double> lf_split(double fu, double u, double alpha);

// ENO stencil growth on the primitive V (nodes 0..n, cell j between nodes j
// and j+1). Returns the first node of the m+1 selected nodes; ties go left.
std::size_t eno_stencil_select(std::span<const double> V, std::size_t j, int m);

// Reconstruction at the right edge of cell j from the cell values g on the
// m cells starting at cell `start`.
double eno_reconstruct_right(std::span<const double> g, std::size_t j, std::size_t start, int m);

// Flux-split ENO numerical flux at the interface between window entries
// m-1 and m of w (2m point values).
double lf_eno_numerical_flux(const ModelProblem& model, std::span<const double> w, int m, double alpha);

double roe_flux(const ModelProblem& model, double ul, double ur);

// M(a, b): the argument of smaller modulus (a on ties).
double eno_minmod(double a, double b);
// States at i+1/2 from cells i-1, i, i+1, i+2.
std::pair<double, double> eno2_reconstruct(double um1, double u0, double u1, double u2);

// Engquist-Osher flux f+(a) + f-(b) with f+(u) = f(0) + int_0^u max(f',0).
class EngquistOsher {
public:
    EngquistOsher() = default;
    explicit EngquistOsher(const ModelProblem& m);

    double plus(double u) const;
    double minus(double u) const;
    double operator()(double a, double b) const { return plus(a) + minus(b); }

private:
    std::pair<double, double> split(double u) const;

    const ModelProblem* m_ = nullptr;
    double f0_ = 0.0;
    std::vector<double> brk_;
    std::vector<double> fbrk_;
    std::vector<double> pos_;
    std::vector<double> neg_;
};

double eo_flux(const ModelProblem& m, double a, double b);

// MM: min if all positive, max if all negative, else 0.
double minmod3(double a, double b, double c);
double muscl_slope(double um, double u, double up, double dx, double theta);

enum class SchemeKind { LfEno, RoeEno2, EoMuscl };

struct FluxContext {
    double alpha = 1.0;
    double q = 0.0;
    double psi = 0.0;
};

// Numerical flux from a window of 2*radius() values centred on an interface.
class Scheme {
public:
    virtual ~Scheme() = default;
    virtual SchemeKind kind() const = 0;
    virtual int radius() const = 0;
    virtual double flux(const double* w, double h, const FluxContext& c) const = 0;
};

class LfEnoScheme final : public Scheme {
public:
    LfEnoScheme(const ModelProblem& m, int order) : m_(&m), order_(order) {}
    SchemeKind kind() const override { return SchemeKind::LfEno; }
    int radius() const override { return order_; }
    double flux(const double* w, double h, const FluxContext& c) const override;

private:
    const ModelProblem* m_;
    int order_;
};

class RoeEno2Scheme final : public Scheme {
public:
    explicit RoeEno2Scheme(const ModelProblem& m) : m_(&m) {}
    SchemeKind kind() const override { return SchemeKind::RoeEno2; }
    int radius() const override { return 2; }
    double flux(const double* w, double h, const FluxContext& c) const override;

private:
    const ModelProblem* m_;
};

class EoMusclScheme final : public Scheme {
public:
    EoMusclScheme(const ModelProblem& m, double theta) : m_(&m), eo_(m), theta_(theta) {}
    SchemeKind kind() const override { return SchemeKind::EoMuscl; }
    int radius() const override { return 2; }
    double flux(const double* w, double h, const FluxContext& c) const override;

private:
    const ModelProblem* m_;
    EngquistOsher eo_;
    double theta_;
};

struct SchemeOptions {
    int eno_order = 2;
    double theta = 1.0;
};

// LF-ENO for hyperbolic, Roe-ENO2 with central diffusion for
// convection-diffusion, EO-MUSCL for degenerate models.
std::unique_ptr<Scheme> make_scheme(const ModelProblem& m, const SchemeOptions& opt);

// Interface fluxes with boundary treatment. Samples are nodes (point values)
// or cells; interface i lies between samples i and i+1, i = -1 .. n-1.
class Discretization {
public:
    Discretization(const ModelProblem& m, const Scheme& s, bool cell_average);

    const ModelProblem& model() const { return *m_; }
    const Scheme& scheme() const { return *s_; }
    bool periodic() const { return periodic_; }
    bool cell_average() const { return cells_; }
    // Samples with a fixed (Dirichlet) value.
    bool fixed(long i, long n) const;

    template <class Get>
    double interface_flux(long i, long n, Get&& get, double h, const FluxContext& c) const {
        if (!periodic_) {
            if (i == -1 && m_->left.type == BcType::Discharge) return c.q * get(0);
            if (i == n - 1 && m_->right.type == BcType::Feed) return c.psi;
        }
        return scheme_flux(i, n, get, h, c);
    }

    // Scheme flux at interface i with ghost samples, ignoring flux boundary
    // conditions.
    template <class Get>
    double scheme_flux(long i, long n, Get&& get, double h, const FluxContext& c) const {
        const int R = s_->radius();
        double w[8];
        for (int k = 0; k < 2 * R; ++k) w[k] = sample(i - R + 1 + k, n, get);
        return s_->flux(w, h, c);
    }

    template <class Get>
    double sample(long idx, long n, Get&& get) const {
        if (idx >= 0 && idx < n) return get(idx);
        if (periodic_) return get(((idx % n) + n) % n);
        const bool left = idx < 0;
        const BoundaryCondition& bc = left ? m_->left : m_->right;
        const long mirror = left ? -1 - idx : 2 * n - 1 - idx;  // reflected sample index
        const long clamped = left ? 0 : n - 1;
        if (!cells_) return get(clamped);
        const long mi = mirror < 0 ? 0 : (mirror >= n ? n - 1 : mirror);
        if (bc.type == BcType::Dirichlet) return 2.0 * bc.value - get(mi);
        return get(mi);
    }

private:
    const ModelProblem* m_;
    const Scheme* s_;
    bool cells_;
    bool periodic_;
};

// Right-hand side on a uniform grid of n samples with spacing h.
void uniform_rhs(const Discretization& d, std::span<const double> u, double h, const FluxContext& c,
                 std::span<double> out, std::span<double> flux_scratch);

// Degenerate parabolic right-hand side on nodes 0..N0 (EO-MUSCL scheme).
std::vector<double> degenerate_rhs(const ModelProblem& m, std::span<const double> u, double dx, double q, double psi,
                                   double theta = 1.0);

// Largest stable step: cfl * h0 / (max|f'| + max|q| + 2 D / h0), D the
// largest diffusion coefficient.
double cfl_dt(const ModelProblem& m, double h0, double cfl);
// TVD restriction sigma <= Re / (Re + 4) on the CFL number.
double tvd_cfl_bound(double cell_reynolds);
// Splitting speed max|f'| over the range of u.
double lf_alpha(const ModelProblem& m, double umin, double umax);

}  // namespace mrs
