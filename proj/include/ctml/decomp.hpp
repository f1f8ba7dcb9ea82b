#pragma once

#include <string>
#include <vector>

#include "ctml/matrix.hpp"
#include "ctml/preprocess.hpp"

namespace ctml {

struct PcaResult {
    Matrix components;  // F x C loadings, orthonormal columns
    Matrix scores;      // S x C projected coordinates
    std::vector<double> explained_variance_ratio;
};

/// PCA via SVD of the column-centered data (stable for S much smaller than
/// F). Sign convention: the largest-magnitude entry of each loading column
/// is positive, so plots are reproducible across runs and platforms.
PcaResult pca(const FeatureMatrix& x, std::size_t n_components);

enum class CorrelationAxis { Samples, Genes };

struct CorrelationMatrix {
    std::vector<std::string> names;
    Matrix r;  // N x N, symmetric, unit diagonal
    std::vector<bool> constant;  // entities with zero variance (r forced to 0)
};

/// Pairwise Pearson correlation across the other axis. Constant entities get
/// off-diagonal r = 0 and are flagged rather than producing NaN.
CorrelationMatrix correlation_matrix(const Matrix& values,
                                     const std::vector<std::string>& names,
                                     CorrelationAxis axis);

struct MergeStep {
    std::size_t a;      // merged clusters, named by smallest member index
    std::size_t b;
    double height;      // average-linkage dissimilarity at the merge
};

struct Dendrogram {
    std::vector<MergeStep> merges;
    std::vector<std::size_t> leaf_order;
    std::vector<std::size_t> assignments;  // cluster id per entity for the requested cut
    std::size_t n_clusters = 0;
};

/// Average-linkage agglomeration on d = 1 - r, cut at k clusters. Ties are
/// broken by the smallest index pair so the tree is deterministic.
Dendrogram hcluster(const CorrelationMatrix& c, std::size_t k);

struct NetworkEdge {
    std::string a;
    std::string b;
    double r;
};

/// All unordered pairs with |r| >= threshold, sorted by |r| descending
/// (ties by name pair).
std::vector<NetworkEdge> network_edges(const CorrelationMatrix& c, double threshold);

}  // namespace ctml
