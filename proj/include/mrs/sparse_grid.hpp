#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mrs/transform.hpp"

namespace mrs {

// Sparse point-value representation: significant details, safety points and
// the resulting set of active fine-grid positions. Detail (k, j) lives at fine
// position (2j-1) * 2^(k-1); the coarsest nodes are always active.
struct SparseGrid {
    bool periodic = true;
    std::size_t n0 = 0;
    int levels = 0;
    LevelMask significant;
    LevelMask safety;
    std::vector<std::uint8_t> active;

    std::size_t samples() const { return active.size(); }
    std::size_t coarse_count() const;
    std::size_t significant_count() const { return count_mask(significant); }
    std::size_t active_count() const;

    static std::size_t position(int k, std::size_t j) { return (2 * j - 1) << (k - 1); }
    // Level and 1-based index of the detail stored at fine position pos
    // (level 0 means a coarsest node).
    static std::pair<int, std::size_t> locate(std::size_t pos, int levels);
};

SparseGrid extend_with_safety(const LevelMask& significant, const MRRepresentation& rep, const ThresholdPolicy& pol);
SparseGrid make_sparse_grid(const MRRepresentation& rep, const ThresholdPolicy& pol);
// Every position active; reduces the adaptive path to the uniform one.
SparseGrid full_sparse_grid(std::size_t n0, int levels, bool periodic);

// Fills inactive positions of values by interpolation, coarse to fine; values
// at active positions are kept.
void reconstruct_in_place(const SparseGrid& g, std::vector<double>& values, const Predictor& p,
                          TransformStats* stats = nullptr);
std::vector<double> reconstruct_uniform(const SparseGrid& g, std::span<const double> values, const Predictor& p,
                                        TransformStats* stats = nullptr);
// Decode of rep with every detail outside the active set dropped.
std::vector<double> reconstruct_uniform(const SparseGrid& g, const MRRepresentation& rep, const Predictor& p);

LevelMask unified_mask(const std::vector<LevelMask>& components);
LevelMask active_detail_mask(const SparseGrid& g);

}  // namespace mrs
