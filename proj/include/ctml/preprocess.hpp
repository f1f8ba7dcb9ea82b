#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ctml/ct_matrix.hpp"
#include "ctml/matrix.hpp"

namespace ctml {

/// Per-feature z-scoring statistics. Population (divide-by-N) standard
/// deviations; sds are floored at 1e-12 and constant columns are flagged so
/// their transform is forced to zero instead of exploding.
struct Standardization {
    std::vector<double> means;
    std::vector<double> sds;
    std::vector<bool> constant;

    std::size_t size() const { return means.size(); }
};

struct FeatureMatrix {
    Matrix values;  // S x F
    std::vector<std::string> feature_names;
    Standardization standardization;
};

Standardization fit_standardization(const Matrix& x);
Matrix apply_standardization(const Matrix& x, const Standardization& st);

/// Z-scores every gene column. With `fitted` supplied those statistics are
/// applied verbatim (used to transform held-out folds); otherwise they are
/// fit on m itself. m must be fully imputed.
FeatureMatrix standardize(const CtMatrix& m,
                          const std::optional<Standardization>& fitted = std::nullopt);

/// Genes sorted ascending by two-sample Welch p-value (flight vs ground),
/// ties broken by gene name; returns the first k names.
std::vector<std::string> select_top_k(const CtMatrix& m, std::size_t k);

/// Restriction of m to the named genes, in the given order.
CtMatrix subset_genes(const CtMatrix& m, const std::vector<std::string>& names);

}  // namespace ctml
