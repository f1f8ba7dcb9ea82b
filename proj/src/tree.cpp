#include "ctml/tree.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

#include "ctml/errors.hpp"

namespace ctml {

double Tree::predict(const double* x) const {
    if (nodes.empty()) throw ContractError("predict on an empty tree");
    int i = 0;
    while (!nodes[i].is_leaf()) {
        const TreeNode& n = nodes[i];
        i = x[n.feature] <= n.threshold ? n.left : n.right;
    }
    return nodes[i].value;
}

namespace {

std::size_t depth_below(const std::vector<TreeNode>& nodes, int i) {
    if (nodes[i].is_leaf()) return 0;
    return 1 + std::max(depth_below(nodes, nodes[i].left), depth_below(nodes, nodes[i].right));
}

}  // namespace

std::size_t Tree::max_depth() const {
    return nodes.empty() ? 0 : depth_below(nodes, 0);
}

void Tree::accumulate_gain(std::vector<double>& importance) const {
    for (const TreeNode& n : nodes) {
        if (!n.is_leaf()) importance[static_cast<std::size_t>(n.feature)] += n.gain;
    }
}

namespace {

constexpr double kMinGain = 1e-12;

std::vector<std::size_t> sample_features(std::size_t n_features, std::size_t mtry,
                                         std::mt19937_64& rng) {
    std::vector<std::size_t> idx(n_features);
    std::iota(idx.begin(), idx.end(), 0);
    if (mtry == 0 || mtry >= n_features) return idx;
    for (std::size_t k = 0; k < mtry; ++k) {
        const std::size_t swap_at = k + rng() % (n_features - k);
        std::swap(idx[k], idx[swap_at]);
    }
    idx.resize(mtry);
    std::sort(idx.begin(), idx.end());
    return idx;
}

// Count-weighted Gini impurity: n * (1 - p1^2 - p0^2).
double weighted_gini(double n1, double n) {
    if (n == 0.0) return 0.0;
    const double n0 = n - n1;
    return n - (n1 * n1 + n0 * n0) / n;
}

struct GiniBuilder {
    const Matrix& x;
    const std::vector<int>& y;
    const GiniTreeParams& params;
    std::mt19937_64& rng;
    Tree tree;

    int build(std::vector<std::size_t>& rows, std::size_t depth) {
        const std::size_t n = rows.size();
        std::size_t n1 = 0;
        for (std::size_t r : rows) n1 += static_cast<std::size_t>(y[r]);

        const int node_index = static_cast<int>(tree.nodes.size());
        tree.nodes.emplace_back();
        tree.nodes[node_index].cover = static_cast<double>(n);
        tree.nodes[node_index].value = 2 * n1 > n ? 1.0 : 0.0;

        const bool pure = n1 == 0 || n1 == n;
        const bool depth_capped = params.max_depth > 0 && depth >= params.max_depth;
        if (pure || depth_capped || n < 2 * params.min_leaf) return node_index;

        double best_gain = kMinGain;
        int best_feature = -1;
        double best_threshold = 0.0;
        const double parent = weighted_gini(static_cast<double>(n1), static_cast<double>(n));

        std::vector<std::pair<double, int>> column(n);
        for (std::size_t f : sample_features(x.cols, params.mtry, rng)) {
            for (std::size_t i = 0; i < n; ++i) {
                column[i] = {x(rows[i], f), y[rows[i]]};
            }
            std::sort(column.begin(), column.end());
            double left1 = 0.0;
            for (std::size_t i = 0; i + 1 < n; ++i) {
                left1 += column[i].second;
                if (column[i].first == column[i + 1].first) continue;
                const std::size_t nl = i + 1;
                const std::size_t nr = n - nl;
                if (nl < params.min_leaf || nr < params.min_leaf) continue;
                const double gain =
                    parent - weighted_gini(left1, static_cast<double>(nl)) -
                    weighted_gini(static_cast<double>(n1) - left1, static_cast<double>(nr));
                if (gain > best_gain) {
                    best_gain = gain;
                    best_feature = static_cast<int>(f);
                    best_threshold = 0.5 * (column[i].first + column[i + 1].first);
                }
            }
        }
        if (best_feature < 0) return node_index;

        std::vector<std::size_t> left_rows, right_rows;
        left_rows.reserve(n);
        right_rows.reserve(n);
        for (std::size_t r : rows) {
            (x(r, static_cast<std::size_t>(best_feature)) <= best_threshold ? left_rows
                                                                            : right_rows)
                .push_back(r);
        }
        rows.clear();
        rows.shrink_to_fit();

        const int left = build(left_rows, depth + 1);
        const int right = build(right_rows, depth + 1);
        TreeNode& node = tree.nodes[node_index];
        node.feature = best_feature;
        node.threshold = best_threshold;
        node.left = left;
        node.right = right;
        node.gain = best_gain;
        return node_index;
    }
};

struct NewtonBuilder {
    const Matrix& x;
    const std::vector<double>& grad;
    const std::vector<double>& hess;
    double leaf_scale;
    const NewtonTreeParams& params;
    Tree tree;

    int build(std::vector<std::size_t>& rows, std::size_t depth) {
        const std::size_t n = rows.size();
        double sum_g = 0.0, sum_h = 0.0;
        for (std::size_t r : rows) {
            sum_g += grad[r];
            sum_h += hess[r];
        }

        const int node_index = static_cast<int>(tree.nodes.size());
        tree.nodes.emplace_back();
        tree.nodes[node_index].cover = static_cast<double>(n);
        tree.nodes[node_index].value = leaf_scale * sum_g / (sum_h + 1e-16);

        if (depth >= params.max_depth || n < 2 * params.min_leaf) return node_index;

        double best_gain = kMinGain;
        int best_feature = -1;
        double best_threshold = 0.0;
        const double parent_score = sum_g * sum_g / static_cast<double>(n);

        std::vector<std::pair<double, double>> column(n);  // (value, grad)
        for (std::size_t f = 0; f < x.cols; ++f) {
            for (std::size_t i = 0; i < n; ++i) {
                column[i] = {x(rows[i], f), grad[rows[i]]};
            }
            std::sort(column.begin(), column.end());
            double left_g = 0.0;
            for (std::size_t i = 0; i + 1 < n; ++i) {
                left_g += column[i].second;
                if (column[i].first == column[i + 1].first) continue;
                const std::size_t nl = i + 1;
                const std::size_t nr = n - nl;
                if (nl < params.min_leaf || nr < params.min_leaf) continue;
                const double right_g = sum_g - left_g;
                const double gain = left_g * left_g / static_cast<double>(nl) +
                                    right_g * right_g / static_cast<double>(nr) - parent_score;
                if (gain > best_gain) {
                    best_gain = gain;
                    best_feature = static_cast<int>(f);
                    best_threshold = 0.5 * (column[i].first + column[i + 1].first);
                }
            }
        }
        if (best_feature < 0) return node_index;

        std::vector<std::size_t> left_rows, right_rows;
        left_rows.reserve(n);
        right_rows.reserve(n);
        for (std::size_t r : rows) {
            (x(r, static_cast<std::size_t>(best_feature)) <= best_threshold ? left_rows
                                                                            : right_rows)
                .push_back(r);
        }
        rows.clear();
        rows.shrink_to_fit();

        const int left = build(left_rows, depth + 1);
        const int right = build(right_rows, depth + 1);
        TreeNode& node = tree.nodes[node_index];
        node.feature = best_feature;
        node.threshold = best_threshold;
        node.left = left;
        node.right = right;
        node.gain = best_gain;
        return node_index;
    }
};

}  // namespace

Tree grow_gini_tree(const Matrix& x, const std::vector<int>& y,
                    const std::vector<std::size_t>& rows, const GiniTreeParams& params,
                    std::mt19937_64& rng) {
    if (rows.empty()) throw ArgumentError("cannot grow a tree from zero rows");
    GiniBuilder builder{x, y, params, rng, {}};
    std::vector<std::size_t> root_rows = rows;
    builder.build(root_rows, 0);
    return std::move(builder.tree);
}

Tree grow_newton_tree(const Matrix& x, const std::vector<double>& grad,
                      const std::vector<double>& hess, double leaf_scale,
                      const NewtonTreeParams& params) {
    if (x.rows == 0) throw ArgumentError("cannot grow a tree from zero rows");
    if (grad.size() != x.rows || hess.size() != x.rows) {
        throw ArgumentError("gradient/hessian length must match row count");
    }
    NewtonBuilder builder{x, grad, hess, leaf_scale, params, {}};
    std::vector<std::size_t> root_rows(x.rows);
    std::iota(root_rows.begin(), root_rows.end(), 0);
    builder.build(root_rows, 0);
    return std::move(builder.tree);
}

std::vector<double> normalized_split_gain(const std::vector<Tree>& trees,
                                          std::size_t n_features) {
    std::vector<double> importance(n_features, 0.0);
    for (const Tree& t : trees) t.accumulate_gain(importance);
    const double total = std::accumulate(importance.begin(), importance.end(), 0.0);
    if (total > 0.0) {
        for (double& v : importance) v /= total;
    }
    return importance;
}

}  // namespace ctml
