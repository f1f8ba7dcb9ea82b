#include "ctml/forest.hpp"

#include <cmath>

#include "ctml/errors.hpp"
#include "ctml/parallel.hpp"
#include "ctml/rng.hpp"

namespace ctml {

RandomForest fit_random_forest(const Matrix& x, const std::vector<int>& y,
                               const RandomForestParams& params, std::uint64_t seed,
                               std::size_t n_threads) {
    if (x.rows == 0 || x.rows != y.size()) {
        throw ArgumentError("feature rows and labels must match and be non-empty");
    }
    if (params.n_trees == 0) throw ArgumentError("n_trees must be positive");

    GiniTreeParams tree_params;
    tree_params.max_depth = params.max_depth;
    tree_params.min_leaf = params.min_leaf;
    tree_params.mtry = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::sqrt(static_cast<double>(x.cols))));

    RandomForest rf;
    rf.trees.resize(params.n_trees);
    parallel_for(params.n_trees, n_threads, [&](std::size_t t) {
        std::mt19937_64 rng = make_rng(seed, t);
        std::vector<std::size_t> rows(x.rows);
        for (std::size_t i = 0; i < x.rows; ++i) rows[i] = rng() % x.rows;
        rf.trees[t] = grow_gini_tree(x, y, rows, tree_params, rng);
    });
    return rf;
}

double rf_predict_one(const RandomForest& rf, const double* x) {
    if (rf.trees.empty()) throw ContractError("predict on an empty forest");
    double votes = 0.0;
    for (const Tree& t : rf.trees) votes += t.predict(x);
    return votes / static_cast<double>(rf.trees.size());
}

std::vector<double> rf_predict_p1(const RandomForest& rf, const Matrix& x) {
    std::vector<double> p(x.rows);
    for (std::size_t s = 0; s < x.rows; ++s) {
        p[s] = rf_predict_one(rf, x.data.data() + s * x.cols);
    }
    return p;
}

std::vector<double> rf_impurity_importance(const RandomForest& rf, std::size_t n_features) {
    return normalized_split_gain(rf.trees, n_features);
}

}  // namespace ctml
