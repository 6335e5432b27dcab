#include "mrs/schemes.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace mrs {

namespace {

// c[k][r+1][l]: reconstruction weights at the right edge of cell j from cells
// j-r .. j-r+k-1, k = 1..3, r = -1..k-1.
struct EnoTable {
    std::array<std::array<std::array<double, 3>, 4>, 4> c{};

    EnoTable() {
        for (int k = 1; k <= 3; ++k) {
            for (int r = -1; r <= k - 1; ++r) {
                for (int j = 0; j < k; ++j) {
                    double s = 0.0;
                    for (int m = j + 1; m <= k; ++m) {
                        double num = 0.0;
                        for (int l = 0; l <= k; ++l) {
                            if (l == m) continue;
                            double p = 1.0;
                            for (int q = 0; q <= k; ++q)
                                if (q != m && q != l) p *= r - q + 1;
                            num += p;
                        }
                        double den = 1.0;
                        for (int l = 0; l <= k; ++l)
                            if (l != m) den *= m - l;
                        s += num / den;
                    }
                    c[static_cast<std::size_t>(k)][static_cast<std::size_t>(r + 1)][static_cast<std::size_t>(j)] = s;
                }
            }
        }
    }
};

const EnoTable& eno_table() {
    static const EnoTable t;
    return t;
}

}  // namespace

std::pair<double, double> lf_split(double fu, double u, double alpha) {
    return {0.5 * (fu + alpha * u), 0.5 * (fu - alpha * u)};
}

std::size_t eno_stencil_select(std::span<const double> V, std::size_t j, int m) {
    if (m < 1 || m > 3) throw std::invalid_argument("eno_stencil_select: order must be 1..3");
    if (j + 1 >= V.size()) throw std::out_of_range("eno_stencil_select: cell outside the data");
    const std::size_t last = V.size() - 1;
    std::size_t lo = j, hi = j + 1;
    // undivided differences of V over consecutive equally spaced nodes
    auto diff = [&](std::size_t a, std::size_t b) {
        std::array<double, 5> t{};
        const std::size_t n = b - a + 1;
        for (std::size_t i = 0; i < n; ++i) t[i] = V[a + i];
        for (std::size_t o = 1; o < n; ++o)
            for (std::size_t i = 0; i + o < n; ++i) t[i] = t[i + 1] - t[i];
        return std::fabs(t[0]);
    };
    for (int n = 2; n <= m; ++n) {
        const bool can_left = lo > 0;
        const bool can_right = hi < last;
        if (can_left && (!can_right || diff(lo - 1, hi) <= diff(lo, hi + 1)))
            --lo;
        else if (can_right)
            ++hi;
        else
            throw std::out_of_range("eno_stencil_select: not enough data for the requested order");
    }
    return lo;
}

double eno_reconstruct_right(std::span<const double> g, std::size_t j, std::size_t start, int m) {
    const long r = static_cast<long>(j) - static_cast<long>(start);
    if (m < 1 || m > 3 || r < -1 || r > m - 1) throw std::out_of_range("eno_reconstruct_right: bad stencil");
    const auto& c = eno_table().c[static_cast<std::size_t>(m)][static_cast<std::size_t>(r + 1)];
    double s = 0.0;
    for (int l = 0; l < m; ++l) s += c[static_cast<std::size_t>(l)] * g[start + static_cast<std::size_t>(l)];
    return s;
}

double lf_eno_numerical_flux(const ModelProblem& model, std::span<const double> w, int m, double alpha) {
    if (w.size() != static_cast<std::size_t>(2 * m)) throw std::invalid_argument("lf_eno: window must hold 2m values");
    std::array<double, 6> gp{}, gm{};
    std::array<double, 7> Vp{}, Vm{};
    for (std::size_t i = 0; i < w.size(); ++i) {
        const auto [p, q] = lf_split(model.f(w[i]), w[i], alpha);
        gp[i] = p;
        gm[i] = q;
        Vp[i + 1] = Vp[i] + p;
        Vm[i + 1] = Vm[i] + q;
    }
    const std::size_t n = w.size();
    const std::size_t j = static_cast<std::size_t>(m - 1);
    const std::size_t sp = eno_stencil_select(std::span<const double>(Vp.data(), n + 1), j, m);
    const std::size_t sm = eno_stencil_select(std::span<const double>(Vm.data(), n + 1), j + 1, m);
    return eno_reconstruct_right(std::span<const double>(gp.data(), n), j, sp, m) +
           eno_reconstruct_right(std::span<const double>(gm.data(), n), j, sm, m);
}

double roe_flux(const ModelProblem& model, double ul, double ur) {
    const double fl = model.f(ul);
    const double fr = model.f(ur);
    const double du = ur - ul;
    const double a = std::fabs(du) > 1e-14 ? (fr - fl) / du : model.df(ul);
    return 0.5 * (fl + fr - std::fabs(a) * du);
}

double eno_minmod(double a, double b) { return std::fabs(a) <= std::fabs(b) ? a : b; }

std::pair<double, double> eno2_reconstruct(double um1, double u0, double u1, double u2) {
    const double left = u0 + 0.5 * eno_minmod(u1 - u0, u0 - um1);
    const double right = u1 - 0.5 * eno_minmod(u2 - u1, u1 - u0);
    return {left, right};
}

EngquistOsher::EngquistOsher(const ModelProblem& m) : m_(&m), f0_(m.f(0.0)) {
    brk_.push_back(0.0);
    for (double c : m.flux_critical)
        if (c > 0.0) brk_.push_back(c);
    fbrk_.reserve(brk_.size());
    for (double b : brk_) fbrk_.push_back(m.f(b));
    pos_.assign(brk_.size(), 0.0);
    neg_.assign(brk_.size(), 0.0);
    for (std::size_t i = 1; i < brk_.size(); ++i) {
        const double df = fbrk_[i] - fbrk_[i - 1];
        pos_[i] = pos_[i - 1] + std::max(df, 0.0);
        neg_[i] = neg_[i - 1] + std::min(df, 0.0);
    }
}

// (int_0^u max(f',0), int_0^u min(f',0))
std::pair<double, double> EngquistOsher::split(double u) const {
    const double fu = m_->f(u);
    if (u < 0.0) {
        const double d = f0_ - fu;
        return {-std::max(d, 0.0), -std::min(d, 0.0)};
    }
    const auto it = std::upper_bound(brk_.begin(), brk_.end(), u);
    const std::size_t i = static_cast<std::size_t>(it - brk_.begin()) - 1;
    const double d = fu - fbrk_[i];
    return {pos_[i] + std::max(d, 0.0), neg_[i] + std::min(d, 0.0)};
}

double EngquistOsher::plus(double u) const { return f0_ + split(u).first; }
double EngquistOsher::minus(double u) const { return split(u).second; }

double eo_flux(const ModelProblem& m, double a, double b) { return EngquistOsher(m)(a, b); }

double minmod3(double a, double b, double c) {
    if (a > 0 && b > 0 && c > 0) return std::min({a, b, c});
    if (a < 0 && b < 0 && c < 0) return std::max({a, b, c});
    return 0.0;
}

double muscl_slope(double um, double u, double up, double dx, double theta) {
    return minmod3(theta * (u - um) / dx, (up - um) / (2.0 * dx), theta * (up - u) / dx);
}

double LfEnoScheme::flux(const double* w, double, const FluxContext& c) const {
    return lf_eno_numerical_flux(*m_, std::span<const double>(w, static_cast<std::size_t>(2 * order_)), order_, c.alpha);
}

double RoeEno2Scheme::flux(const double* w, double h, const FluxContext&) const {
    const auto [ul, ur] = eno2_reconstruct(w[0], w[1], w[2], w[3]);
    return roe_flux(*m_, ul, ur) - m_->nu * (w[2] - w[1]) / h;
}

double EoMusclScheme::flux(const double* w, double h, const FluxContext& c) const {
    const double si = muscl_slope(w[0], w[1], w[2], h, theta_);
    const double sj = muscl_slope(w[1], w[2], w[3], h, theta_);
    const double ur = w[1] + 0.5 * h * si;
    const double ul = w[2] - 0.5 * h * sj;
    return c.q * ul + eo_(ur, ul) - (m_->A(w[2]) - m_->A(w[1])) / h;
}

std::unique_ptr<Scheme> make_scheme(const ModelProblem& m, const SchemeOptions& opt) {
    switch (m.family) {
        case ModelFamily::Hyperbolic:
            if (opt.eno_order < 1 || opt.eno_order > 3) throw std::invalid_argument("ENO order must be 1..3");
            return std::make_unique<LfEnoScheme>(m, opt.eno_order);
        case ModelFamily::ConvectionDiffusion:
            return std::make_unique<RoeEno2Scheme>(m);
        case ModelFamily::Degenerate:
            if (opt.theta < 0.0 || opt.theta > 2.0) throw std::invalid_argument("MUSCL theta must lie in [0,2]");
            return std::make_unique<EoMusclScheme>(m, opt.theta);
    }
    throw std::invalid_argument("unknown model family");
}

Discretization::Discretization(const ModelProblem& m, const Scheme& s, bool cell_average)
    : m_(&m), s_(&s), cells_(cell_average), periodic_(m.periodic()) {
    if (periodic_ != (m.right.type == BcType::Periodic))
        throw std::invalid_argument("periodic boundary conditions must be set on both ends");
}

bool Discretization::fixed(long i, long n) const {
    if (cells_ || periodic_) return false;
    return (i == 0 && m_->left.type == BcType::Dirichlet) || (i == n - 1 && m_->right.type == BcType::Dirichlet);
}

void uniform_rhs(const Discretization& d, std::span<const double> u, double h, const FluxContext& c,
                 std::span<double> out, std::span<double> F) {
    const long n = static_cast<long>(u.size());
    auto get = [&](long i) { return u[static_cast<std::size_t>(i)]; };
    // F[i+1] holds the flux at interface i
    if (d.periodic()) {
        for (long i = 0; i < n; ++i) F[static_cast<std::size_t>(i + 1)] = d.interface_flux(i, n, get, h, c);
        F[0] = F[static_cast<std::size_t>(n)];
    } else {
        for (long i = -1; i < n; ++i) F[static_cast<std::size_t>(i + 1)] = d.interface_flux(i, n, get, h, c);
    }
    const ModelProblem& m = d.model();
    for (long j = 0; j < n; ++j) {
        const auto ju = static_cast<std::size_t>(j);
        if (d.fixed(j, n)) {
            out[ju] = 0.0;
            continue;
        }
        double r = -(F[ju + 1] - F[ju]) / h;
        if (m.source) r += m.source(u[ju]);
        out[ju] = r;
    }
}

std::vector<double> degenerate_rhs(const ModelProblem& m, std::span<const double> u, double dx, double q, double psi,
                                   double theta) {
    EoMusclScheme s(m, theta);
    Discretization d(m, s, false);
    std::vector<double> out(u.size()), F(u.size() + 1);
    FluxContext c;
    c.q = q;
    c.psi = psi;
    uniform_rhs(d, u, dx, c, out, F);
    return out;
}

double cfl_dt(const ModelProblem& m, double h0, double cfl) {
    const double speed = m.max_abs_df(m.u_min, m.u_max) +
                         std::max({std::fabs(m.feed.q0), std::fabs(m.feed.has_switch ? m.feed.q1 : 0.0)});
    const double denom = speed + 2.0 * m.max_diffusion() / h0;
    if (!(denom > 0)) throw std::invalid_argument("cfl_dt: model has no propagation speed");
    return cfl * h0 / denom;
}

double tvd_cfl_bound(double cell_reynolds) { return cell_reynolds / (cell_reynolds + 4.0); }

double lf_alpha(const ModelProblem& m, double umin, double umax) {
    return std::max(m.max_abs_df(umin, umax), 1e-12);
}

}  // namespace mrs
