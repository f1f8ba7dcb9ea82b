#include <cmath>
#include <utility>

#include "ctml/errors.hpp"
#include "ctml/forest.hpp"

namespace ctml {

namespace {

double logistic(double z) { return 1.0 / (1.0 + std::exp(-z)); }

}  // namespace

GradientBoostedTrees fit_gbt(const Matrix& x, const std::vector<int>& y,
                             const GbtParams& params) {
    if (x.rows == 0 || x.rows != y.size()) {
        throw ArgumentError("feature rows and labels must match and be non-empty");
    }
    if (!(params.learning_rate > 0.0)) throw ArgumentError("learning_rate must be positive");

    const std::size_t n = x.rows;
    double prior = 0.0;
    for (int label : y) prior += label;
    prior /= static_cast<double>(n);
    // Clamp the prior so single-class inputs get a large finite log-odds.
    prior = std::min(std::max(prior, 1e-12), 1.0 - 1e-12);

    GradientBoostedTrees gbt;
    gbt.base_score = std::log(prior / (1.0 - prior));

    NewtonTreeParams tree_params;
    tree_params.max_depth = params.max_depth;
    tree_params.min_leaf = params.min_leaf;

    std::vector<double> margin(n, gbt.base_score);
    std::vector<double> grad(n), hess(n);
    for (std::size_t stage = 0; stage < params.n_stages; ++stage) {
        for (std::size_t i = 0; i < n; ++i) {
            const double p = logistic(margin[i]);
            grad[i] = static_cast<double>(y[i]) - p;  // negative gradient
            hess[i] = p * (1.0 - p);
        }
        Tree tree = grow_newton_tree(x, grad, hess, params.learning_rate, tree_params);
        for (std::size_t i = 0; i < n; ++i) {
            margin[i] += tree.predict(x.data.data() + i * x.cols);
        }
        gbt.trees.push_back(std::move(tree));

        double loss = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            // log(1 + exp(-z)) evaluated stably for either sign of z
            const double z = y[i] == 1 ? margin[i] : -margin[i];
            loss += z > 0.0 ? std::log1p(std::exp(-z)) : -z + std::log1p(std::exp(z));
        }
        gbt.stage_loss.push_back(loss / static_cast<double>(n));
    }
    return gbt;
}

double gbt_margin_one(const GradientBoostedTrees& gbt, const double* x) {
    double margin = gbt.base_score;
    for (const Tree& t : gbt.trees) margin += t.predict(x);
    return margin;
}

std::vector<double> gbt_predict_p1(const GradientBoostedTrees& gbt, const Matrix& x) {
    std::vector<double> p(x.rows);
    for (std::size_t s = 0; s < x.rows; ++s) {
        p[s] = logistic(gbt_margin_one(gbt, x.data.data() + s * x.cols));
    }
    return p;
}

std::vector<double> gbt_gain_importance(const GradientBoostedTrees& gbt,
                                        std::size_t n_features) {
    return normalized_split_gain(gbt.trees, n_features);
}

}  // namespace ctml
