#pragma once

#include <string>
#include <vector>

#include "ctml/classifiers.hpp"
#include "ctml/ct_matrix.hpp"

namespace ctml {

/// How preprocessing interacts with cross-validation folds.
/// PaperFaithful z-scores and picks top-k genes on the full dataset before
/// splitting (a deliberate leakage choice that reproduces the published
/// numbers); LeakageSafe refits both inside each training fold.
enum class PreprocessPolicy { PaperFaithful, LeakageSafe };

std::string to_string(PreprocessPolicy policy);
PreprocessPolicy parse_preprocess_policy(const std::string& name);

struct FoldRecord {
    std::string sample_id;
    int truth = 0;
    int predicted = 0;
    double p1 = 0.0;
    bool degenerate_fold = false;  // training set collapsed to one class
};

struct RocPoint {
    double fpr = 0.0;
    double tpr = 0.0;
    double threshold = 0.0;
};

struct ClassificationMetrics {
    double accuracy = 0.0;
    double f1_macro = 0.0;
    double mcc = 0.0;
    bool absent_class = false;  // some class missing from both truth and prediction
};

struct CvReport {
    std::vector<FoldRecord> folds;  // sorted by sample id
    double accuracy = 0.0;
    double f1_macro = 0.0;
    double auc = 0.0;
    double mcc = 0.0;
    std::vector<RocPoint> roc_points;
    bool any_degenerate_fold = false;
    bool absent_class = false;
};

ClassificationMetrics classification_metrics(const std::vector<int>& truth,
                                             const std::vector<int>& predicted);

/// Pooled pairwise AUC: (concordant + 0.5 * tied) / (P * N), identical to
/// trapezoidal integration of the returned ROC steps. Throws ArgumentError
/// when truth has a single class.
std::pair<double, std::vector<RocPoint>> roc_auc(const std::vector<int>& truth,
                                                 const std::vector<double>& scores);

/// Leave-one-out cross-validation on an imputed Ct matrix. top_k = 0 uses
/// all genes. Metrics are computed from the pooled held-out predictions;
/// folds run independently (parallelizable) and the report is canonicalized
/// by sample id.
CvReport loocv(const ClassifierSpec& spec, const CtMatrix& m, PreprocessPolicy policy,
               std::size_t top_k = 0, std::size_t n_threads = 1);

}  // namespace ctml
