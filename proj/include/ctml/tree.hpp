#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "ctml/matrix.hpp"

namespace ctml {

/// One node of a binary decision tree stored in array form. Internal nodes
/// route x[feature] <= threshold to `left`, otherwise to `right`. `cover` is
/// the number of training rows (with bootstrap multiplicity) that reached the
/// node; `gain` is the split's count-weighted criterion improvement, kept so
/// feature importances survive serialization.
struct TreeNode {
    int feature = -1;  // -1 marks a leaf
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    double value = 0.0;
    double cover = 0.0;
    double gain = 0.0;

    bool is_leaf() const { return feature < 0; }
};

struct Tree {
    std::vector<TreeNode> nodes;  // node 0 is the root

    double predict(const double* x) const;
    std::size_t max_depth() const;
    /// Adds each split node's gain to importance[feature].
    void accumulate_gain(std::vector<double>& importance) const;
};

struct GiniTreeParams {
    std::size_t max_depth = 0;  // 0 = unlimited
    std::size_t min_leaf = 1;
    std::size_t mtry = 0;  // features sampled per split; 0 = all
};

/// Classification tree on binary labels, split by count-weighted Gini
/// decrease. Leaves hold the majority class as 0.0/1.0 (ties go to class 0),
/// so averaging leaf values over an ensemble gives the vote fraction. `rows`
/// may contain repeats (bootstrap). Ties in the split search resolve to the
/// smallest feature index, then the smallest threshold.
Tree grow_gini_tree(const Matrix& x, const std::vector<int>& y,
                    const std::vector<std::size_t>& rows, const GiniTreeParams& params,
                    std::mt19937_64& rng);

struct NewtonTreeParams {
    std::size_t max_depth = 3;
    std::size_t min_leaf = 1;
};

/// Regression tree for one boosting stage: splits maximize the squared-error
/// reduction on the gradient targets, leaves take the Newton step
/// leaf_scale * sum(grad) / sum(hess). All rows are used with unit weight.
Tree grow_newton_tree(const Matrix& x, const std::vector<double>& grad,
                      const std::vector<double>& hess, double leaf_scale,
                      const NewtonTreeParams& params);

/// Total split gain per feature summed over the trees, normalized to sum 1
/// (all zeros if no tree ever split).
std::vector<double> normalized_split_gain(const std::vector<Tree>& trees,
                                          std::size_t n_features);

}  // namespace ctml
