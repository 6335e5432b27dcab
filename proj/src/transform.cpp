#include "mrs/transform.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace mrs {

namespace {

// Cell weights for the left half of cell j, derived from interpolating the
// primitive on nodes 0..m-1 at x; cells are numbered 1..m-1 between nodes.
std::vector<double> cell_weights(int m, long double x, int left_node) {
    const auto lam = lagrange_weights(m, x);
    std::vector<long double> w(static_cast<std::size_t>(m - 1), 0.0L);
    // primitive relative to node left_node, in units of h * ubar
    for (int node = 0; node < m; ++node) {
        if (node > left_node)
            for (int c = left_node + 1; c <= node; ++c) w[static_cast<std::size_t>(c - 1)] += 2.0L * lam[static_cast<std::size_t>(node)];
        else
            for (int c = node + 1; c <= left_node; ++c) w[static_cast<std::size_t>(c - 1)] -= 2.0L * lam[static_cast<std::size_t>(node)];
    }
    return {w.begin(), w.end()};
}

std::size_t wrap(long i, std::size_t n) {
    const long nn = static_cast<long>(n);
    long r = i % nn;
    if (r < 0) r += nn;
    return static_cast<std::size_t>(r);
}

}  // namespace

Predictor::Predictor(const InterpCoefficients& c) : c_(c) {
    const int r = c.kind == DataKind::PointValue ? c.order : c.order + 1;  // nodes in the stencil
    tables_.resize(static_cast<std::size_t>(r + 1));
    for (int m = 2; m <= r; ++m) {
        auto& tab = tables_[static_cast<std::size_t>(m)];
        tab.resize(static_cast<std::size_t>(m));
        for (int t = 1; t < m; ++t) {
            const long double x = static_cast<long double>(t) - 0.5L;
            if (c.kind == DataKind::PointValue) {
                const auto w = lagrange_weights(m, x);
                tab[static_cast<std::size_t>(t)].assign(w.begin(), w.end());
            } else {
                tab[static_cast<std::size_t>(t)] = cell_weights(m, x, t - 1);
            }
        }
    }
    const int s = r / 2;
    if (c.kind == DataKind::PointValue) {
        central_.assign(static_cast<std::size_t>(r), 0.0);
        for (int l = 1; l <= s; ++l) {
            central_[static_cast<std::size_t>(s - l)] = c.beta[static_cast<std::size_t>(l - 1)];
            central_[static_cast<std::size_t>(s + l - 1)] = c.beta[static_cast<std::size_t>(l - 1)];
        }
    } else {
        // cells j-(s-1) .. j+(s-1)
        central_.assign(static_cast<std::size_t>(2 * s - 1), 0.0);
        central_[static_cast<std::size_t>(s - 1)] = 1.0;
        for (int l = 1; l < s; ++l) {
            central_[static_cast<std::size_t>(s - 1 + l)] = c.gamma[static_cast<std::size_t>(l - 1)];
            central_[static_cast<std::size_t>(s - 1 - l)] = -c.gamma[static_cast<std::size_t>(l - 1)];
        }
    }
}

StencilPlan Predictor::plan(std::size_t n_k, std::size_t j, bool periodic) const {
    StencilPlan p;
    const bool pv = c_.kind == DataKind::PointValue;
    const int r = pv ? c_.order : c_.order + 1;
    const int s = r / 2;
    const long jl = static_cast<long>(j);
    if (periodic) {
        p.w = central_.data();
        if (pv) {
            p.count = r;
            for (int i = 0; i < r; ++i) p.idx[static_cast<std::size_t>(i)] = wrap(jl - s + i, n_k);
        } else {
            p.count = r - 1;
            for (int i = 0; i < r - 1; ++i) p.idx[static_cast<std::size_t>(i)] = wrap(jl - s + i, n_k) + 1;
        }
        return p;
    }
    const int m = std::min<long>(r, static_cast<long>(n_k) + 1);
    const int sm = m / 2;
    long a = jl - sm;
    a = std::clamp<long>(a, 0, static_cast<long>(n_k) + 1 - m);
    const int t = static_cast<int>(jl - a);
    const bool central = m == r && t == s;
    if (pv) {
        p.count = m;
        p.w = central ? central_.data() : tables_[static_cast<std::size_t>(m)][static_cast<std::size_t>(t)].data();
        for (int i = 0; i < m; ++i) p.idx[static_cast<std::size_t>(i)] = static_cast<std::size_t>(a + i);
    } else {
        p.count = m - 1;
        p.w = central ? central_.data() : tables_[static_cast<std::size_t>(m)][static_cast<std::size_t>(t)].data();
        for (int i = 0; i < m - 1; ++i) p.idx[static_cast<std::size_t>(i)] = static_cast<std::size_t>(a + 1 + i);
    }
    return p;
}

std::size_t sample_count(DataKind kind, bool periodic, std::size_t n0) {
    return (kind == DataKind::PointValue && !periodic) ? n0 + 1 : n0;
}

MRRepresentation encode(std::span<const double> u0, const Predictor& p, int levels, bool periodic,
                        TransformStats* stats) {
    const DataKind kind = p.kind();
    const std::size_t n0 = (kind == DataKind::PointValue && !periodic) ? u0.size() - 1 : u0.size();
    if (u0.empty() || levels < 0 || levels >= 62 || (n0 >> levels) < 2 || (n0 % (std::size_t{1} << levels)) != 0)
        throw std::invalid_argument("encode: data size " + std::to_string(u0.size()) +
                                    " incompatible with " + std::to_string(levels) + " levels");
    MRRepresentation rep;
    rep.kind = kind;
    rep.periodic = periodic;
    rep.n0 = n0;
    rep.levels = levels;
    rep.details.resize(static_cast<std::size_t>(levels));

    std::vector<double> fine(u0.begin(), u0.end());
    std::vector<double> coarse;
    std::uint64_t count = 0;
    for (int k = 1; k <= levels; ++k) {
        const std::size_t nk = n0 >> k;
        auto& d = rep.details[static_cast<std::size_t>(k - 1)];
        d.assign(nk, 0.0);
        if (kind == DataKind::PointValue) {
            coarse.assign(sample_count(kind, periodic, nk), 0.0);
            for (std::size_t j = 0; j < coarse.size(); ++j) coarse[j] = fine[2 * j];
            for (std::size_t j = 1; j <= nk; ++j) {
                const double u = fine[2 * j - 1];
                const double pr = p.predict([&](std::size_t i) { return coarse[i]; }, nk, j, periodic);
                double dj = u - pr;
                // nudge the rounded detail so that pr + d gives u back exactly
                for (int t = 0; t < 4 && pr + dj != u; ++t)
                    dj = std::nextafter(dj, pr + dj < u ? HUGE_VAL : -HUGE_VAL);
                d[j - 1] = pr + dj == u ? dj : u - pr;
            }
        } else {
            coarse.assign(nk, 0.0);
            for (std::size_t j = 1; j <= nk; ++j) coarse[j - 1] = 0.5 * (fine[2 * j - 2] + fine[2 * j - 1]);
            for (std::size_t j = 1; j <= nk; ++j)
                d[j - 1] = fine[2 * j - 2] - p.predict([&](std::size_t i) { return coarse[i - 1]; }, nk, j, periodic);
        }
        count += nk;
        fine.swap(coarse);
    }
    rep.coarse = std::move(fine);
    if (stats) stats->predictions += count;
    return rep;
}

std::vector<double> decode(const MRRepresentation& rep, const Predictor& p, TransformStats* stats) {
    if (rep.kind != p.kind()) throw std::invalid_argument("decode: predictor kind mismatch");
    std::vector<double> coarse = rep.coarse;
    std::vector<double> fine;
    std::uint64_t count = 0;
    for (int k = rep.levels; k >= 1; --k) {
        const std::size_t nk = rep.n0 >> k;
        const auto& d = rep.details[static_cast<std::size_t>(k - 1)];
        if (rep.kind == DataKind::PointValue) {
            fine.assign(sample_count(rep.kind, rep.periodic, 2 * nk), 0.0);
            for (std::size_t j = 0; j < coarse.size(); ++j) fine[2 * j] = coarse[j];
            for (std::size_t j = 1; j <= nk; ++j)
                fine[2 * j - 1] = p.predict([&](std::size_t i) { return coarse[i]; }, nk, j, rep.periodic) + d[j - 1];
        } else {
            fine.assign(2 * nk, 0.0);
            for (std::size_t j = 1; j <= nk; ++j) {
                const double c = coarse[j - 1];
                const double delta =
                    p.predict([&](std::size_t i) { return coarse[i - 1]; }, nk, j, rep.periodic) - c + d[j - 1];
                fine[2 * j - 2] = c + delta;
                fine[2 * j - 1] = c - delta;
            }
        }
        count += nk;
        coarse.swap(fine);
    }
    if (stats) stats->predictions += count;
    return coarse;
}

double ThresholdPolicy::level_tol(int k, int levels) const {
    return std::ldexp(eps, -(levels - k));
}

LevelMask significance_mask(const MRRepresentation& rep, const ThresholdPolicy& pol) {
    LevelMask m(static_cast<std::size_t>(rep.levels));
    for (int k = 1; k <= rep.levels; ++k) {
        const double tol = pol.level_tol(k, rep.levels);
        const auto& d = rep.details[static_cast<std::size_t>(k - 1)];
        auto& mk = m[static_cast<std::size_t>(k - 1)];
        mk.resize(d.size());
        for (std::size_t j = 0; j < d.size(); ++j) mk[j] = std::fabs(d[j]) > tol ? 1 : 0;
    }
    return m;
}

MRRepresentation apply_mask(const MRRepresentation& rep, const LevelMask& keep) {
    MRRepresentation out = rep;
    for (std::size_t k = 0; k < out.details.size(); ++k)
        for (std::size_t j = 0; j < out.details[k].size(); ++j)
            if (!keep[k][j]) out.details[k][j] = 0.0;
    return out;
}

MRRepresentation truncate(const MRRepresentation& rep, const ThresholdPolicy& pol) {
    return apply_mask(rep, significance_mask(rep, pol));
}

std::size_t count_mask(const LevelMask& m) {
    std::size_t n = 0;
    for (const auto& level : m)
        for (auto b : level) n += b ? 1 : 0;
    return n;
}

std::vector<double> detail_decay_probe(const MRRepresentation& rep) {
    std::vector<double> out;
    for (const auto& d : rep.details) {
        double mx = 0.0;
        for (double v : d) mx = std::max(mx, std::fabs(v));
        out.push_back(mx);
    }
    return out;
}

}  // namespace mrs
