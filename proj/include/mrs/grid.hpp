#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace mrs {

// Dyadic hierarchy over [lo, hi]. Level 0 is the finest grid (n0 intervals),
// level k has n0 / 2^k intervals. Nodes are 0-based (0..N_k), cells are
// 1-based (1..N_k) so that children of cell j at level k are 2j-1, 2j.
class GridHierarchy {
public:
    GridHierarchy() = default;
    GridHierarchy(double lo, double hi, std::size_t n0, int levels);

    double lo() const { return lo_; }
    double hi() const { return hi_; }
    std::size_t n0() const { return n0_; }
    int levels() const { return levels_; }

    // Number of intervals at level k.
    std::size_t intervals(int k) const;
    // Node spacing at level k.
    double h(int k) const;
    // Coordinate of node j at level k; shares storage with the fine grid.
    double node(int k, std::size_t j) const;
    // Width of cell j (1-based) at level k.
    double cell_width(int k, std::size_t j) const;
    double cell_center(int k, std::size_t j) const;

    const std::vector<double>& fine_nodes() const { return x_; }

    // Node j at level k-1 whose coordinate coincides with a level-k node.
    std::size_t parent_node(std::size_t j_fine, int k_fine) const;
    std::size_t parent_cell(std::size_t j, int k) const;
    std::pair<std::size_t, std::size_t> children_cells(std::size_t j, int k) const;

private:
    void check_level(int k) const;

    double lo_ = 0.0;
    double hi_ = 1.0;
    std::size_t n0_ = 0;
    int levels_ = 0;
    std::vector<double> x_;
};

GridHierarchy build_hierarchy(double lo, double hi, std::size_t n0, int levels);

}  // namespace mrs
