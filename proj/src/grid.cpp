#include "mrs/grid.hpp"

#include <stdexcept>
#include <string>

namespace mrs {

GridHierarchy::GridHierarchy(double lo, double hi, std::size_t n0, int levels)
    : lo_(lo), hi_(hi), n0_(n0), levels_(levels) {
    if (!(hi > lo)) throw std::invalid_argument("grid: hi must exceed lo");
    if (levels < 0) throw std::invalid_argument("grid: negative level count");
    if (levels >= 62 || n0 == 0 || (n0 >> levels) < 2 || (n0 % (std::size_t{1} << levels)) != 0)
        throw std::invalid_argument("grid: n0=" + std::to_string(n0) +
                                    " not divisible by 2^L with at least 2 coarse intervals");
    x_.resize(n0 + 1);
    const double h0 = (hi - lo) / static_cast<double>(n0);
    for (std::size_t j = 0; j <= n0; ++j) x_[j] = lo + static_cast<double>(j) * h0;
    x_[n0] = hi;
}

void GridHierarchy::check_level(int k) const {
    if (k < 0 || k > levels_) throw std::out_of_range("grid: level " + std::to_string(k) + " out of range");
}

std::size_t GridHierarchy::intervals(int k) const {
    check_level(k);
    return n0_ >> k;
}

double GridHierarchy::h(int k) const {
    check_level(k);
    return (hi_ - lo_) / static_cast<double>(n0_ >> k);
}

double GridHierarchy::node(int k, std::size_t j) const {
    if (j > intervals(k)) throw std::out_of_range("grid: node index out of range");
    return x_[j << k];
}

double GridHierarchy::cell_width(int k, std::size_t j) const {
    if (j < 1 || j > intervals(k)) throw std::out_of_range("grid: cell index out of range");
    return x_[j << k] - x_[(j - 1) << k];
}

double GridHierarchy::cell_center(int k, std::size_t j) const {
    if (j < 1 || j > intervals(k)) throw std::out_of_range("grid: cell index out of range");
    return 0.5 * (x_[j << k] + x_[(j - 1) << k]);
}

std::size_t GridHierarchy::parent_node(std::size_t j_fine, int k_fine) const {
    check_level(k_fine + 1);
    if (j_fine > intervals(k_fine) || (j_fine % 2) != 0)
        throw std::out_of_range("grid: node has no coarse counterpart");
    return j_fine / 2;
}

std::size_t GridHierarchy::parent_cell(std::size_t j, int k) const {
    check_level(k + 1);
    if (j < 1 || j > intervals(k)) throw std::out_of_range("grid: cell index out of range");
    return (j + 1) / 2;
}

std::pair<std::size_t, std::size_t> GridHierarchy::children_cells(std::size_t j, int k) const {
    if (k < 1) throw std::out_of_range("grid: finest level has no children");
    if (j < 1 || j > intervals(k)) throw std::out_of_range("grid: cell index out of range");
    return {2 * j - 1, 2 * j};
}

GridHierarchy build_hierarchy(double lo, double hi, std::size_t n0, int levels) {
    return GridHierarchy(lo, hi, n0, levels);
}

}  // namespace mrs
