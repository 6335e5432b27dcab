#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mrs/transform.hpp"

namespace mrs {

// Graded dyadic tree of cell averages. Level L is the complete root level,
// level 0 the finest grid. Nodes are addressed by (k, j) with j 1-based.
// Invariants: siblings exist together; every node below the root level has
// its parent and the parent's two neighbours (so that the two near-cousins
// per side of any leaf are either nodes or predictable virtual leaves).
struct AdaptResult;

class GradedTree {
public:
    struct Node {
        int k = 0;
        std::size_t j = 0;
        bool operator==(const Node&) const = default;
    };

    GradedTree() = default;
    GradedTree(std::size_t n0, int levels, bool periodic, const Predictor& p);

    std::size_t n0() const { return n0_; }
    int levels() const { return levels_; }
    bool periodic() const { return periodic_; }
    std::size_t intervals(int k) const { return n0_ >> k; }
    const Predictor& predictor() const { return *pred_; }

    bool exists(int k, long j) const;
    bool is_leaf(int k, std::size_t j) const;
    double value(int k, std::size_t j) const { return val_[static_cast<std::size_t>(k)][j - 1]; }
    void set_value(int k, std::size_t j, double v) { val_[static_cast<std::size_t>(k)][j - 1] = v; }

    // Stored value, or prediction from the coarser level for a virtual cell.
    double value_at(int k, long j) const;
    // Wraps (periodic) or returns 0 for indices outside 1..N_k.
    long normalize(int k, long j) const;

    // Leaves ordered by position.
    std::vector<Node> leaves() const;
    std::size_t leaf_count() const;
    std::size_t node_count() const;
    std::size_t internal_count() const;

    // Creates (k, j) with its sibling, ancestors and grading neighbours;
    // values of new nodes are predicted from the coarser level.
    void ensure(int k, long j);
    void refine(int k, std::size_t j);
    // Removes the two children of (k, j); false if that would break grading
    // or the children are not leaves.
    bool coarsen(int k, std::size_t j);

    // Internal values become averages of their children, finest first.
    void project();
    // Node values from fine cell averages (size n0).
    void load_fine(std::span<const double> fine);
    // Fine cell averages obtained by predicting below the leaves.
    std::vector<double> to_fine() const;

    // Detail of internal node (k, j), k >= 1.
    double detail(int k, std::size_t j) const;

    std::vector<std::string> violations() const;

private:
    friend GradedTree tree_from_mask(const LevelMask&, std::size_t, int, bool, const Predictor&);
    friend AdaptResult tree_adapt(GradedTree&, const ThresholdPolicy&);

    void ensure_node(int k, long j, bool predict);
    bool required_by_finer(int k, std::size_t j) const;
    double predict_child(int k_parent, std::size_t p, bool left) const;

    std::size_t n0_ = 0;
    int levels_ = 0;
    bool periodic_ = true;
    const Predictor* pred_ = nullptr;
    std::vector<std::vector<std::uint8_t>> ex_;
    std::vector<std::vector<double>> val_;
};

// Smallest graded tree containing the children of every marked detail
// (mask[k-1][j-1] marks node (k, j) as refined). Values are left at zero.
GradedTree tree_from_mask(const LevelMask& mask, std::size_t n0, int levels, bool periodic, const Predictor& p);

struct AdaptResult {
    std::size_t significant = 0;
    // (k, j) of every significant detail
    std::vector<std::pair<int, std::size_t>> significant_nodes;
    std::size_t leaves_before = 0;
    std::size_t leaves_after = 0;
};

// Rebuilds the tree from the details of its internal nodes: significant
// nodes keep their children, same-level neighbours of significant nodes are
// refined as safety, and |d| > child_factor * eps_k also refines the children.
AdaptResult tree_adapt(GradedTree& tree, const ThresholdPolicy& pol);

// Interface between consecutive leaves, seen from the finer side. cell_left
// is the level-`level` cell left of the interface (0 or N+1 denote ghosts).
struct LeafInterface {
    int level = 0;
    long cell_left = 0;
    long leaf_left = -1;   // index into leaves(), -1 for the left boundary
    long leaf_right = -1;  // -1 for the right boundary
};

std::vector<LeafInterface> leaf_interfaces(const GradedTree& tree, const std::vector<GradedTree::Node>& leaves);

// Net rate -(F_right - F_left)/|cell| for every leaf given one flux per
// interface; a coarse leaf receives the flux computed on the finer side.
std::vector<double> leaf_fluxes_conservative(const GradedTree& tree, const std::vector<GradedTree::Node>& leaves,
                                             const std::vector<LeafInterface>& faces, std::span<const double> flux,
                                             double domain_length);

}  // namespace mrs
