#include "mrs/graded_tree.hpp"

#include <cmath>
#include <stdexcept>

namespace mrs {

GradedTree::GradedTree(std::size_t n0, int levels, bool periodic, const Predictor& p)
    : n0_(n0), levels_(levels), periodic_(periodic), pred_(&p) {
    if (p.kind() != DataKind::CellAverage) throw std::invalid_argument("graded tree: cell-average predictor required");
    if (levels < 0 || levels >= 62 || (n0 >> levels) < 2 || (n0 % (std::size_t{1} << levels)) != 0)
        throw std::invalid_argument("graded tree: n0 incompatible with level count");
    ex_.resize(static_cast<std::size_t>(levels + 1));
    val_.resize(static_cast<std::size_t>(levels + 1));
    for (int k = 0; k <= levels; ++k) {
        ex_[static_cast<std::size_t>(k)].assign(n0 >> k, 0);
        val_[static_cast<std::size_t>(k)].assign(n0 >> k, 0.0);
    }
    ex_[static_cast<std::size_t>(levels)].assign(n0 >> levels, 1);
}

long GradedTree::normalize(int k, long j) const {
    const long n = static_cast<long>(intervals(k));
    if (periodic_) return ((j - 1) % n + n) % n + 1;
    return (j < 1 || j > n) ? 0 : j;
}

bool GradedTree::exists(int k, long j) const {
    if (k < 0 || k > levels_) return false;
    const long jj = normalize(k, j);
    return jj != 0 && ex_[static_cast<std::size_t>(k)][static_cast<std::size_t>(jj - 1)] != 0;
}

bool GradedTree::is_leaf(int k, std::size_t j) const {
    const long jl = static_cast<long>(j);
    return exists(k, jl) && (k == 0 || !exists(k - 1, 2 * jl - 1));
}

double GradedTree::predict_child(int kp, std::size_t p, bool left) const {
    const double pred =
        pred_->predict([&](std::size_t i) { return value_at(kp, static_cast<long>(i)); }, intervals(kp), p, periodic_);
    return left ? pred : 2.0 * value_at(kp, static_cast<long>(p)) - pred;
}

double GradedTree::value_at(int k, long j) const {
    const long jj = normalize(k, j);
    if (jj == 0) throw std::out_of_range("graded tree: cell outside the domain");
    if (ex_[static_cast<std::size_t>(k)][static_cast<std::size_t>(jj - 1)]) return val_[static_cast<std::size_t>(k)][static_cast<std::size_t>(jj - 1)];
    return predict_child(k + 1, static_cast<std::size_t>((jj + 1) / 2), (jj % 2) == 1);
}

std::vector<GradedTree::Node> GradedTree::leaves() const {
    std::vector<Node> out;
    std::vector<Node> stack;
    for (std::size_t j = intervals(levels_); j >= 1; --j) stack.push_back({levels_, j});
    while (!stack.empty()) {
        const Node n = stack.back();
        stack.pop_back();
        if (is_leaf(n.k, n.j)) {
            out.push_back(n);
        } else {
            stack.push_back({n.k - 1, 2 * n.j});
            stack.push_back({n.k - 1, 2 * n.j - 1});
        }
    }
    return out;
}

std::size_t GradedTree::node_count() const {
    std::size_t n = 0;
    for (const auto& level : ex_)
        for (auto e : level) n += e ? 1 : 0;
    return n;
}

std::size_t GradedTree::internal_count() const {
    std::size_t n = 0;
    for (int k = 1; k <= levels_; ++k) {
        const auto& e = ex_[static_cast<std::size_t>(k)];
        const auto& fine = ex_[static_cast<std::size_t>(k - 1)];
        for (std::size_t j = 1; j <= e.size(); ++j)
            if (e[j - 1] && fine[2 * j - 2]) ++n;
    }
    return n;
}

std::size_t GradedTree::leaf_count() const { return node_count() - internal_count(); }

void GradedTree::ensure(int k, long j) { ensure_node(k, j, true); }

void GradedTree::ensure_node(int k, long j, bool predict) {
    if (k >= levels_ || k < 0) return;
    const long jj = normalize(k, j);
    if (jj == 0) throw std::out_of_range("graded tree: ensure outside the domain");
    if (exists(k, jj)) return;
    const long p = (jj + 1) / 2;
    for (long m = p - 1; m <= p + 1; ++m) {
        const long nm = normalize(k + 1, m);
        if (nm != 0) ensure_node(k + 1, nm, predict);
    }
    const auto pu = static_cast<std::size_t>(p);
    ex_[static_cast<std::size_t>(k)][pu * 2 - 2] = 1;
    ex_[static_cast<std::size_t>(k)][pu * 2 - 1] = 1;
    if (!predict) return;
    const double left = predict_child(k + 1, pu, true);
    val_[static_cast<std::size_t>(k)][pu * 2 - 2] = left;
    val_[static_cast<std::size_t>(k)][pu * 2 - 1] = 2.0 * value(k + 1, pu) - left;
}

void GradedTree::refine(int k, std::size_t j) {
    if (k < 1) throw std::out_of_range("graded tree: cannot refine the finest level");
    if (!exists(k, static_cast<long>(j))) throw std::invalid_argument("graded tree: refining a missing node");
    ensure(k - 1, 2 * static_cast<long>(j) - 1);
}

bool GradedTree::required_by_finer(int k, std::size_t j) const {
    if (k == 0) return false;
    const long jl = static_cast<long>(j);
    for (long m = jl - 1; m <= jl + 1; ++m) {
        const long nm = normalize(k, m);
        if (nm != 0 && exists(k, nm) && exists(k - 1, 2 * nm - 1)) return true;
    }
    return false;
}

bool GradedTree::coarsen(int k, std::size_t j) {
    if (k < 1 || !exists(k, static_cast<long>(j))) return false;
    const long c1 = 2 * static_cast<long>(j) - 1;
    if (!exists(k - 1, c1)) return false;
    if (!is_leaf(k - 1, static_cast<std::size_t>(c1)) || !is_leaf(k - 1, static_cast<std::size_t>(c1 + 1))) return false;
    if (required_by_finer(k - 1, static_cast<std::size_t>(c1)) || required_by_finer(k - 1, static_cast<std::size_t>(c1 + 1)))
        return false;
    set_value(k, j, 0.5 * (value(k - 1, static_cast<std::size_t>(c1)) + value(k - 1, static_cast<std::size_t>(c1 + 1))));
    ex_[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(c1 - 1)] = 0;
    ex_[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(c1)] = 0;
    return true;
}

void GradedTree::project() {
    for (int k = 1; k <= levels_; ++k) {
        const auto& fine_ex = ex_[static_cast<std::size_t>(k - 1)];
        const auto& fine = val_[static_cast<std::size_t>(k - 1)];
        auto& v = val_[static_cast<std::size_t>(k)];
        const auto& e = ex_[static_cast<std::size_t>(k)];
        for (std::size_t j = 1; j <= v.size(); ++j)
            if (e[j - 1] && fine_ex[2 * j - 2]) v[j - 1] = 0.5 * (fine[2 * j - 2] + fine[2 * j - 1]);
    }
}

void GradedTree::load_fine(std::span<const double> fine) {
    if (fine.size() != n0_) throw std::invalid_argument("graded tree: fine data size mismatch");
    val_[0].assign(fine.begin(), fine.end());
    for (int k = 1; k <= levels_; ++k) {
        auto& v = val_[static_cast<std::size_t>(k)];
        const auto& f = val_[static_cast<std::size_t>(k - 1)];
        for (std::size_t j = 1; j <= v.size(); ++j) v[j - 1] = 0.5 * (f[2 * j - 2] + f[2 * j - 1]);
    }
}

std::vector<double> GradedTree::to_fine() const {
    std::vector<double> level = val_[static_cast<std::size_t>(levels_)];
    for (int k = levels_ - 1; k >= 0; --k) {
        const auto ku = static_cast<std::size_t>(k);
        std::vector<double> finer(intervals(k));
        const std::size_t nk = intervals(k + 1);
        auto get = [&](std::size_t i) { return level[i - 1]; };
        for (std::size_t p = 1; p <= nk; ++p) {
            if (ex_[ku][2 * p - 2]) {
                finer[2 * p - 2] = val_[ku][2 * p - 2];
                finer[2 * p - 1] = val_[ku][2 * p - 1];
            } else {
                const double left = pred_->predict(get, nk, p, periodic_);
                finer[2 * p - 2] = left;
                finer[2 * p - 1] = 2.0 * level[p - 1] - left;
            }
        }
        level = std::move(finer);
    }
    return level;
}

double GradedTree::detail(int k, std::size_t j) const {
    return value(k - 1, 2 * j - 1) - predict_child(k, j, true);
}

std::vector<std::string> GradedTree::violations() const {
    std::vector<std::string> out;
    for (int k = 0; k < levels_; ++k) {
        for (std::size_t j = 1; j <= intervals(k); ++j) {
            const long jl = static_cast<long>(j);
            if (!exists(k, jl)) continue;
            const std::string at = "(" + std::to_string(k) + "," + std::to_string(j) + ")";
            const long sib = (j % 2 == 1) ? jl + 1 : jl - 1;
            if (!exists(k, sib)) out.push_back("missing sibling of " + at);
            const long p = (jl + 1) / 2;
            for (long m = p - 1; m <= p + 1; ++m) {
                const long nm = normalize(k + 1, m);
                if (nm != 0 && !exists(k + 1, nm))
                    out.push_back("missing coarse neighbour (" + std::to_string(k + 1) + "," + std::to_string(nm) +
                                  ") of " + at);
            }
        }
    }
    return out;
}

GradedTree tree_from_mask(const LevelMask& mask, std::size_t n0, int levels, bool periodic, const Predictor& p) {
    GradedTree t(n0, levels, periodic, p);
    if (mask.size() != static_cast<std::size_t>(levels)) throw std::invalid_argument("tree_from_mask: level mismatch");
    for (int k = levels; k >= 1; --k)
        for (std::size_t j = 1; j <= mask[static_cast<std::size_t>(k - 1)].size(); ++j)
            if (mask[static_cast<std::size_t>(k - 1)][j - 1]) t.ensure_node(k - 1, 2 * static_cast<long>(j) - 1, false);
    return t;
}

AdaptResult tree_adapt(GradedTree& tree, const ThresholdPolicy& pol) {
    tree.project();
    AdaptResult res;
    const int L = tree.levels();
    LevelMask refine(static_cast<std::size_t>(L));
    for (int k = 1; k <= L; ++k) refine[static_cast<std::size_t>(k - 1)].assign(tree.intervals(k), 0);
    auto mark = [&](int k, long j) {
        if (k < 1) return;
        const long nj = tree.normalize(k, j);
        if (nj != 0) refine[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(nj - 1)] = 1;
    };
    std::size_t leaves_before = 0;
    for (int k = 0; k <= L; ++k) {
        const auto& e = tree.ex_[static_cast<std::size_t>(k)];
        const std::uint8_t* fine = k > 0 ? tree.ex_[static_cast<std::size_t>(k - 1)].data() : nullptr;
        for (std::size_t j = 1; j <= tree.intervals(k); ++j) {
            const long jl = static_cast<long>(j);
            if (!e[j - 1]) continue;
            if (!fine || !fine[2 * j - 2]) {
                ++leaves_before;
                continue;
            }
            const double d = std::fabs(tree.detail(k, j));
            const double tol = pol.level_tol(k, L);
            if (d <= tol) continue;
            ++res.significant;
            res.significant_nodes.emplace_back(k, j);
            mark(k, jl);
            for (int r = 1; r <= pol.safety_radius; ++r) {
                mark(k, jl - r);
                mark(k, jl + r);
            }
            if (d > pol.child_factor * tol) {
                mark(k - 1, 2 * jl - 1);
                mark(k - 1, 2 * jl);
            }
        }
    }
    res.leaves_before = leaves_before;

    GradedTree next = tree_from_mask(refine, tree.n0(), L, tree.periodic(), tree.predictor());
    // coarse to fine: kept nodes take their old values, new ones are
    // predicted from the completed coarser level
    next.val_[static_cast<std::size_t>(L)] = tree.val_[static_cast<std::size_t>(L)];
    for (int k = L - 1; k >= 0; --k) {
        const auto ku = static_cast<std::size_t>(k);
        for (std::size_t j = 1; j <= next.intervals(k); j += 2) {
            if (!next.ex_[ku][j - 1]) continue;
            if (tree.ex_[ku][j - 1]) {
                next.val_[ku][j - 1] = tree.val_[ku][j - 1];
                next.val_[ku][j] = tree.val_[ku][j];
            } else {
                const std::size_t p = (j + 1) / 2;
                const double left = next.predict_child(k + 1, p, true);
                next.val_[ku][j - 1] = left;
                next.val_[ku][j] = 2.0 * next.value(k + 1, p) - left;
            }
        }
    }
    next.project();
    tree = std::move(next);
    res.leaves_after = tree.leaf_count();
    return res;
}

std::vector<LeafInterface> leaf_interfaces(const GradedTree& tree, const std::vector<GradedTree::Node>& leaves) {
    std::vector<LeafInterface> faces;
    if (leaves.empty()) return faces;
    const long n = static_cast<long>(leaves.size());
    const auto right_edge = [](const GradedTree::Node& a, int level) {
        return static_cast<long>(a.j << (a.k - level));
    };
    if (tree.periodic()) {
        const auto& a = leaves.back();
        const auto& b = leaves.front();
        const int l = std::min(a.k, b.k);
        faces.push_back({l, right_edge(a, l), n - 1, 0});
    } else {
        faces.push_back({leaves.front().k, 0, -1, 0});
    }
    for (long i = 0; i + 1 < n; ++i) {
        const auto& a = leaves[static_cast<std::size_t>(i)];
        const auto& b = leaves[static_cast<std::size_t>(i + 1)];
        const int l = std::min(a.k, b.k);
        faces.push_back({l, right_edge(a, l), i, i + 1});
    }
    if (!tree.periodic()) {
        const auto& a = leaves.back();
        faces.push_back({a.k, right_edge(a, a.k), n - 1, -1});
    }
    return faces;
}

std::vector<double> leaf_fluxes_conservative(const GradedTree& tree, const std::vector<GradedTree::Node>& leaves,
                                             const std::vector<LeafInterface>& faces, std::span<const double> flux,
                                             double domain_length) {
    if (flux.size() != faces.size()) throw std::invalid_argument("leaf fluxes: one flux per interface required");
    std::vector<double> rate(leaves.size(), 0.0);
    for (std::size_t f = 0; f < faces.size(); ++f) {
        if (faces[f].leaf_left >= 0) rate[static_cast<std::size_t>(faces[f].leaf_left)] -= flux[f];
        if (faces[f].leaf_right >= 0) rate[static_cast<std::size_t>(faces[f].leaf_right)] += flux[f];
    }
    for (std::size_t i = 0; i < leaves.size(); ++i)
        rate[i] /= domain_length / static_cast<double>(tree.intervals(leaves[i].k));
    return rate;
}

}  // namespace mrs
