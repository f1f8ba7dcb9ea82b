#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ctml/forest.hpp"
#include "ctml/knn.hpp"
#include "ctml/logreg.hpp"
#include "ctml/net.hpp"
#include "ctml/preprocess.hpp"
#include "ctml/svm.hpp"

namespace ctml {

enum class ClassifierKind {
    RandomForest,
    GradientBoostedTrees,
    LogisticRegression,
    Knn,
    SvmLinear,
    SvmRbf,
    FeedforwardNet,
};

std::string to_string(ClassifierKind kind);  // snake_case names
ClassifierKind parse_classifier_kind(const std::string& name);
const std::vector<ClassifierKind>& all_classifier_kinds();

/// One classifier request: which model, its hyperparameters, and the seed.
/// Only the parameter block matching `kind` is consulted.
struct ClassifierSpec {
    ClassifierKind kind = ClassifierKind::RandomForest;
    std::uint64_t seed = 0;
    RandomForestParams rf;
    GbtParams gbt;
    LogRegParams logreg;
    KnnParams knn;
    SvmParams svm;  // kernel is implied by kind, not by this field
    NetParams net;

    void validate() const;  // throws ArgumentError on bad hyperparameters
};

/// A fitted model of any kind behind one probability interface. A training
/// set containing a single class yields a degenerate constant-probability
/// model rather than an error.
struct TrainedClassifier {
    ClassifierKind kind = ClassifierKind::RandomForest;
    std::vector<std::string> feature_names;
    double class1_prior = 0.5;
    bool degenerate = false;
    int degenerate_class = 0;

    RandomForest rf;
    GradientBoostedTrees gbt;
    LogisticRegressionModel logreg;
    KnnModel knn;
    SvmModel svm;
    FeedforwardNetModel net;

    /// S x 2 class probabilities; rows sum to 1. Throws ContractError when
    /// x's feature names differ from the training features.
    Matrix predict_proba(const FeatureMatrix& x) const;
    std::vector<double> predict_p1(const FeatureMatrix& x) const;
    /// argmax probability; exact 0.5 goes to class 0.
    std::vector<int> predict(const FeatureMatrix& x) const;
};

TrainedClassifier fit(const ClassifierSpec& spec, const FeatureMatrix& x,
                      const std::vector<int>& y, std::size_t n_threads = 1);

/// Per-feature importances normalized to sum 1: Gini impurity decrease for
/// RandomForest, squared-error split gain for GradientBoostedTrees. Other
/// kinds throw ArgumentError.
std::vector<double> feature_importance(const TrainedClassifier& c);

/// Versioned JSON round-trip; deserialized models predict bit-identically.
std::string serialize_classifier(const TrainedClassifier& c);
TrainedClassifier deserialize_classifier(const std::string& json_text);

}  // namespace ctml
