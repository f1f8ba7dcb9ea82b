#pragma once

#include <map>
#include <string>
#include <vector>

#include "ctml/classifiers.hpp"
#include "ctml/forest.hpp"
#include "ctml/stats.hpp"
#include "ctml/tree.hpp"

namespace ctml {

struct ShapResult {
    std::vector<double> phi;  // signed contribution per feature
    double base_value = 0.0;  // expected model output over the training background
};

/// Exact Shapley values of a single tree's cover-weighted conditional
/// expectation, via the polynomial-time path-weight traversal. Satisfies
/// base_value + sum(phi) = tree.predict(x).
ShapResult tree_shap_single(const Tree& tree, const double* x, std::size_t n_features);

/// The same quantity by brute-force enumeration of all 2^F feature subsets;
/// the verification oracle. Throws ArgumentError for F > 20.
ShapResult brute_shap_single(const Tree& tree, const double* x, std::size_t n_features);

/// Ensemble aggregation: RF averages per-tree phi (probability space), GBT
/// sums them in logit space with base_score folded into base_value.
ShapResult tree_shap(const RandomForest& rf, const double* x, std::size_t n_features);
ShapResult tree_shap(const GradientBoostedTrees& gbt, const double* x,
                     std::size_t n_features);
ShapResult brute_shap(const RandomForest& rf, const double* x, std::size_t n_features);
ShapResult brute_shap(const GradientBoostedTrees& gbt, const double* x,
                      std::size_t n_features);

struct ShapAttribution {
    std::vector<std::string> feature_names;
    Matrix phi;  // S x F
    double base_value = 0.0;
};

/// Per-sample attributions for a fitted tree ensemble; RF explains the
/// class-1 probability, GBT the logit margin. Other kinds throw
/// ArgumentError.
ShapAttribution shap_attribution(const TrainedClassifier& c, const FeatureMatrix& x,
                                 std::size_t n_threads = 1);

struct ShapSummaryEntry {
    std::string feature;
    double mean_abs_phi = 0.0;
};

/// Mean |phi| per feature, sorted descending (ties by name).
std::vector<ShapSummaryEntry> shap_summary(const ShapAttribution& a);

struct ImportanceSource {
    std::string name;
    std::map<std::string, double> scores;  // gene -> raw importance
};

struct ConsensusRecord {
    std::string gene;
    std::vector<double> source_scores;  // min-max normalized, source order
    double consensus = 0.0;             // mean of normalized sources
    double fold_change = 1.0;
    Regulation regulation = Regulation::NotSignificant;
};

/// Min-max normalizes each source over the shared gene set (a source with
/// all-equal values normalizes to 0), averages into a consensus score, and
/// joins fold change and regulation from the DGE records. Sorted by
/// consensus descending, ties by gene name. Mismatched source gene sets
/// throw ContractError.
std::vector<ConsensusRecord> consensus_rank(const std::vector<ImportanceSource>& sources,
                                            const std::vector<DgeRecord>& dge);

}  // namespace ctml
