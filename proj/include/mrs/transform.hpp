#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mrs/coefficients.hpp"

namespace mrs {

// Indices and weights of one prediction. For point values idx are node
// indices (0-based); for cell averages idx are 1-based cell indices.
struct StencilPlan {
    int count = 0;
    std::array<std::size_t, 8> idx{};
    const double* w = nullptr;
};

// Predicts odd node 2j-1 (point values) or the left child of cell j (cell
// averages) at level k-1 from level-k data. Near the ends of a bounded
// domain the stencil is shifted to stay inside, keeping the order when
// enough data exist.
class Predictor {
public:
    explicit Predictor(const InterpCoefficients& c);

    const InterpCoefficients& coeffs() const { return c_; }
    DataKind kind() const { return c_.kind; }

    // n_k: number of intervals at the coarse level, j in 1..n_k.
    StencilPlan plan(std::size_t n_k, std::size_t j, bool periodic) const;

    template <class Get>
    double predict(Get&& get, std::size_t n_k, std::size_t j, bool periodic) const {
        const StencilPlan p = plan(n_k, j, periodic);
        double acc = 0.0;
        for (int i = 0; i < p.count; ++i) acc += p.w[i] * get(p.idx[static_cast<std::size_t>(i)]);
        return acc;
    }

private:
    InterpCoefficients c_;
    // tables_[m][t]: weights for a stencil of m nodes with target at t - 1/2.
    std::vector<std::vector<std::vector<double>>> tables_;
    std::vector<double> central_;
};

// Coarse data plus per-level details; details[k-1][j-1] is d_j^k.
struct MRRepresentation {
    DataKind kind = DataKind::PointValue;
    bool periodic = true;
    std::size_t n0 = 0;
    int levels = 0;
    std::vector<double> coarse;
    std::vector<std::vector<double>> details;

    std::size_t intervals(int k) const { return n0 >> k; }
};

struct TransformStats {
    std::uint64_t predictions = 0;
};

// Number of samples of fine data: point values on a bounded domain carry
// both end nodes.
std::size_t sample_count(DataKind kind, bool periodic, std::size_t n0);

MRRepresentation encode(std::span<const double> u0, const Predictor& p, int levels, bool periodic,
                        TransformStats* stats = nullptr);
std::vector<double> decode(const MRRepresentation& rep, const Predictor& p, TransformStats* stats = nullptr);

struct ThresholdPolicy {
    double eps = 1e-3;
    double child_factor = 2.0;
    int safety_radius = 1;

    double level_tol(int k, int levels) const;
};

using LevelMask = std::vector<std::vector<std::uint8_t>>;

// mask[k-1][j-1] = 1 iff |d_j^k| > eps_k.
LevelMask significance_mask(const MRRepresentation& rep, const ThresholdPolicy& pol);
MRRepresentation truncate(const MRRepresentation& rep, const ThresholdPolicy& pol);
MRRepresentation apply_mask(const MRRepresentation& rep, const LevelMask& keep);
std::size_t count_mask(const LevelMask& m);

// Per-level max |d^k|, k = 1..L.
std::vector<double> detail_decay_probe(const MRRepresentation& rep);

}  // namespace mrs
