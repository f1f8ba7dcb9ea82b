#pragma once

#include <cstdint>
#include <vector>

#include "ctml/matrix.hpp"
#include "ctml/tree.hpp"

namespace ctml {

struct RandomForestParams {
    std::size_t n_trees = 100;
    std::size_t max_depth = 0;  // 0 = unlimited
    std::size_t min_leaf = 1;
};

/// Bagged Gini trees with sqrt(F) feature sampling per split. Leaves vote
/// 0/1, so the ensemble mean is the fraction of trees voting class 1.
struct RandomForest {
    std::vector<Tree> trees;
};

/// Each tree draws its bootstrap sample and split-feature subsets from an
/// RNG substream derived from (seed, tree index), so results are identical
/// at any thread count.
RandomForest fit_random_forest(const Matrix& x, const std::vector<int>& y,
                               const RandomForestParams& params, std::uint64_t seed,
                               std::size_t n_threads = 1);

double rf_predict_one(const RandomForest& rf, const double* x);
std::vector<double> rf_predict_p1(const RandomForest& rf, const Matrix& x);

/// Total Gini impurity decrease per feature across all trees, normalized to
/// sum 1 (all-zero if no tree ever split).
std::vector<double> rf_impurity_importance(const RandomForest& rf, std::size_t n_features);

struct GbtParams {
    std::size_t n_stages = 100;
    std::size_t max_depth = 3;
    double learning_rate = 0.1;
    std::size_t min_leaf = 1;
};

/// Stagewise logistic-loss boosting. The model margin is
/// base_score + sum of tree predictions (learning rate is baked into leaf
/// values); p(class 1) = logistic(margin).
struct GradientBoostedTrees {
    double base_score = 0.0;  // log-odds of the class-1 prior
    std::vector<Tree> trees;
    std::vector<double> stage_loss;  // mean logistic loss after each stage
};

GradientBoostedTrees fit_gbt(const Matrix& x, const std::vector<int>& y,
                             const GbtParams& params);

double gbt_margin_one(const GradientBoostedTrees& gbt, const double* x);
std::vector<double> gbt_predict_p1(const GradientBoostedTrees& gbt, const Matrix& x);

/// Total squared-error split gain per feature, normalized to sum 1.
std::vector<double> gbt_gain_importance(const GradientBoostedTrees& gbt,
                                        std::size_t n_features);

}  // namespace ctml
