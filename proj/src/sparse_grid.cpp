#include "mrs/sparse_grid.hpp"

#include <cmath>
#include <stdexcept>

namespace mrs {

std::size_t SparseGrid::coarse_count() const {
    const std::size_t nl = n0 >> levels;
    return periodic ? nl : nl + 1;
}

std::size_t SparseGrid::active_count() const {
    std::size_t n = 0;
    for (auto a : active) n += a ? 1 : 0;
    return n;
}

std::pair<int, std::size_t> SparseGrid::locate(std::size_t pos, int levels) {
    if (pos == 0) return {0, 0};
    int k = 1;
    std::size_t p = pos;
    while ((p & 1U) == 0 && k <= levels) {
        p >>= 1;
        ++k;
    }
    if (k > levels) return {0, pos >> levels};
    return {k, (p + 1) / 2};
}

namespace {

SparseGrid empty_grid(const MRRepresentation& rep) {
    if (rep.kind != DataKind::PointValue) throw std::invalid_argument("sparse grid: point-value data required");
    SparseGrid g;
    g.periodic = rep.periodic;
    g.n0 = rep.n0;
    g.levels = rep.levels;
    g.significant.resize(static_cast<std::size_t>(rep.levels));
    g.safety.resize(static_cast<std::size_t>(rep.levels));
    for (int k = 1; k <= rep.levels; ++k) {
        g.significant[static_cast<std::size_t>(k - 1)].assign(rep.n0 >> k, 0);
        g.safety[static_cast<std::size_t>(k - 1)].assign(rep.n0 >> k, 0);
    }
    return g;
}

void fill_active(SparseGrid& g) {
    g.active.assign(sample_count(DataKind::PointValue, g.periodic, g.n0), 0);
    const std::size_t stride = std::size_t{1} << g.levels;
    for (std::size_t p = 0; p < g.active.size(); p += stride) g.active[p] = 1;
    for (int k = 1; k <= g.levels; ++k) {
        const auto& s = g.significant[static_cast<std::size_t>(k - 1)];
        const auto& f = g.safety[static_cast<std::size_t>(k - 1)];
        for (std::size_t j = 1; j <= s.size(); ++j)
            if (s[j - 1] || f[j - 1]) g.active[SparseGrid::position(k, j)] = 1;
    }
}

}  // namespace

SparseGrid extend_with_safety(const LevelMask& significant, const MRRepresentation& rep, const ThresholdPolicy& pol) {
    SparseGrid g = empty_grid(rep);
    if (significant.size() != static_cast<std::size_t>(rep.levels))
        throw std::invalid_argument("extend_with_safety: mask level count mismatch");
    g.significant = significant;
    auto mark = [&](int k, long j) {
        const long nk = static_cast<long>(rep.n0 >> k);
        if (g.periodic) {
            j = ((j - 1) % nk + nk) % nk + 1;
        } else if (j < 1 || j > nk) {
            return;
        }
        const auto jj = static_cast<std::size_t>(j - 1);
        if (!g.significant[static_cast<std::size_t>(k - 1)][jj]) g.safety[static_cast<std::size_t>(k - 1)][jj] = 1;
    };
    for (int k = 1; k <= rep.levels; ++k) {
        const auto& s = significant[static_cast<std::size_t>(k - 1)];
        const auto& d = rep.details[static_cast<std::size_t>(k - 1)];
        const double tol2 = pol.child_factor * pol.level_tol(k, rep.levels);
        for (std::size_t j = 1; j <= s.size(); ++j) {
            if (!s[j - 1]) continue;
            const long jl = static_cast<long>(j);
            for (int r = 1; r <= pol.safety_radius; ++r) {
                mark(k, jl - r);
                mark(k, jl + r);
            }
            if (k > 1 && std::fabs(d[j - 1]) > tol2) {
                mark(k - 1, 2 * jl - 1);
                mark(k - 1, 2 * jl);
            }
        }
    }
    fill_active(g);
    return g;
}

SparseGrid make_sparse_grid(const MRRepresentation& rep, const ThresholdPolicy& pol) {
    return extend_with_safety(significance_mask(rep, pol), rep, pol);
}

SparseGrid full_sparse_grid(std::size_t n0, int levels, bool periodic) {
    MRRepresentation shape;
    shape.periodic = periodic;
    shape.n0 = n0;
    shape.levels = levels;
    SparseGrid g = empty_grid(shape);
    for (auto& level : g.significant) level.assign(level.size(), 1);
    fill_active(g);
    return g;
}

void reconstruct_in_place(const SparseGrid& g, std::vector<double>& values, const Predictor& p, TransformStats* stats) {
    if (values.size() != g.active.size()) throw std::invalid_argument("reconstruct: size mismatch");
    std::uint64_t count = 0;
    for (int k = g.levels; k >= 1; --k) {
        const std::size_t nk = g.n0 >> k;
        const std::size_t stride = std::size_t{1} << k;
        for (std::size_t j = 1; j <= nk; ++j) {
            const std::size_t pos = SparseGrid::position(k, j);
            if (g.active[pos]) continue;
            values[pos] = p.predict(
                [&](std::size_t i) { return values[g.periodic ? (i * stride) % g.n0 : i * stride]; }, nk, j,
                g.periodic);
            ++count;
        }
    }
    if (stats) stats->predictions += count;
}

std::vector<double> reconstruct_uniform(const SparseGrid& g, std::span<const double> values, const Predictor& p,
                                        TransformStats* stats) {
    std::vector<double> out(values.begin(), values.end());
    reconstruct_in_place(g, out, p, stats);
    return out;
}

LevelMask active_detail_mask(const SparseGrid& g) {
    LevelMask m = g.significant;
    for (std::size_t k = 0; k < m.size(); ++k)
        for (std::size_t j = 0; j < m[k].size(); ++j) m[k][j] = (m[k][j] || g.safety[k][j]) ? 1 : 0;
    return m;
}

std::vector<double> reconstruct_uniform(const SparseGrid& g, const MRRepresentation& rep, const Predictor& p) {
    return decode(apply_mask(rep, active_detail_mask(g)), p);
}

LevelMask unified_mask(const std::vector<LevelMask>& components) {
    if (components.empty()) return {};
    LevelMask out = components.front();
    for (std::size_t c = 1; c < components.size(); ++c) {
        if (components[c].size() != out.size()) throw std::invalid_argument("unified_mask: level count mismatch");
        for (std::size_t k = 0; k < out.size(); ++k)
            for (std::size_t j = 0; j < out[k].size(); ++j) out[k][j] = (out[k][j] || components[c][k][j]) ? 1 : 0;
    }
    return out;
}

}  // namespace mrs
