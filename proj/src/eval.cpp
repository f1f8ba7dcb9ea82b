#include "ctml/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ctml/errors.hpp"
#include "ctml/parallel.hpp"
#include "ctml/preprocess.hpp"

namespace ctml {

std::string to_string(PreprocessPolicy policy) {
    return policy == PreprocessPolicy::PaperFaithful ? "paper_faithful" : "leakage_safe";
}

PreprocessPolicy parse_preprocess_policy(const std::string& name) {
    if (name == "paper_faithful") return PreprocessPolicy::PaperFaithful;
    if (name == "leakage_safe") return PreprocessPolicy::LeakageSafe;
    throw ArgumentError("unknown preprocessing policy '" + name + "'");
}

namespace {

void require_binary(const std::vector<int>& labels) {
    for (int v : labels) {
        if (v != 0 && v != 1) throw ArgumentError("labels must be 0 or 1");
    }
}

double class_f1(std::size_t tp, std::size_t fp, std::size_t fn) {
    const double precision = tp + fp == 0 ? 0.0 : static_cast<double>(tp) / (tp + fp);
    const double recall = tp + fn == 0 ? 0.0 : static_cast<double>(tp) / (tp + fn);
    if (precision + recall == 0.0) return 0.0;
    return 2.0 * precision * recall / (precision + recall);
}

}  // namespace

ClassificationMetrics classification_metrics(const std::vector<int>& truth,
                                             const std::vector<int>& predicted) {
    if (truth.size() != predicted.size()) {
        throw ArgumentError("truth and prediction lengths differ");
    }
    if (truth.empty()) throw ArgumentError("metrics need at least one sample");
    require_binary(truth);
    require_binary(predicted);

    std::size_t tp = 0, tn = 0, fp = 0, fn = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        if (truth[i] == 1) {
            (predicted[i] == 1 ? tp : fn) += 1;
        } else {
            (predicted[i] == 0 ? tn : fp) += 1;
        }
    }

    ClassificationMetrics out;
    out.accuracy = static_cast<double>(tp + tn) / static_cast<double>(truth.size());
    out.f1_macro = 0.5 * (class_f1(tp, fp, fn) + class_f1(tn, fn, fp));
    out.absent_class = (tp + fn == 0 && tp + fp == 0) || (tn + fp == 0 && tn + fn == 0);

    const double m1 = static_cast<double>(tp + fp);
    const double m2 = static_cast<double>(tp + fn);
    const double m3 = static_cast<double>(tn + fp);
    const double m4 = static_cast<double>(tn + fn);
    if (m1 == 0.0 || m2 == 0.0 || m3 == 0.0 || m4 == 0.0) {
        out.mcc = 0.0;
    } else {
        const double tp_d = static_cast<double>(tp), tn_d = static_cast<double>(tn);
        const double fp_d = static_cast<double>(fp), fn_d = static_cast<double>(fn);
        out.mcc = (tp_d * tn_d - fp_d * fn_d) / std::sqrt(m1 * m2 * m3 * m4);
    }
    return out;
}

std::pair<double, std::vector<RocPoint>> roc_auc(const std::vector<int>& truth,
                                                 const std::vector<double>& scores) {
    if (truth.size() != scores.size()) {
        throw ArgumentError("truth and score lengths differ");
    }
    require_binary(truth);
    std::size_t n_pos = 0;
    for (int v : truth) n_pos += static_cast<std::size_t>(v);
    const std::size_t n_neg = truth.size() - n_pos;
    if (n_pos == 0 || n_neg == 0) {
        throw ArgumentError("AUC is undefined for single-class truth");
    }

    double concordant = 0.0, tied = 0.0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        if (truth[i] != 1) continue;
        for (std::size_t j = 0; j < truth.size(); ++j) {
            if (truth[j] != 0) continue;
            if (scores[i] > scores[j]) {
                concordant += 1.0;
            } else if (scores[i] == scores[j]) {
                tied += 1.0;
            }
        }
    }
    const double auc =
        (concordant + 0.5 * tied) / (static_cast<double>(n_pos) * static_cast<double>(n_neg));

    // ROC steps at each distinct score, threshold descending.
    std::vector<std::size_t> order(truth.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return scores[a] > scores[b];
    });

    std::vector<RocPoint> points;
    points.push_back({0.0, 0.0, std::numeric_limits<double>::infinity()});
    std::size_t tp = 0, fp = 0, i = 0;
    while (i < order.size()) {
        const double threshold = scores[order[i]];
        while (i < order.size() && scores[order[i]] == threshold) {
            (truth[order[i]] == 1 ? tp : fp) += 1;
            ++i;
        }
        points.push_back({static_cast<double>(fp) / static_cast<double>(n_neg),
                          static_cast<double>(tp) / static_cast<double>(n_pos), threshold});
    }
    return {auc, points};
}

namespace {

CtMatrix drop_sample(const CtMatrix& m, std::size_t index) {
    CtMatrix out;
    out.gene_names = m.gene_names;
    const std::size_t s = m.n_samples();
    out.values = Matrix(s - 1, m.n_genes());
    std::size_t row = 0;
    for (std::size_t i = 0; i < s; ++i) {
        if (i == index) continue;
        out.sample_ids.push_back(m.sample_ids[i]);
        out.labels.push_back(m.labels[i]);
        out.missing_mask.push_back(m.missing_mask[i]);
        for (std::size_t g = 0; g < m.n_genes(); ++g) out.values(row, g) = m.values(i, g);
        ++row;
    }
    return out;
}

FeatureMatrix take_rows(const FeatureMatrix& x, const std::vector<std::size_t>& rows) {
    FeatureMatrix out;
    out.feature_names = x.feature_names;
    out.standardization = x.standardization;
    out.values = Matrix(rows.size(), x.values.cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < x.values.cols; ++c) {
            out.values(r, c) = x.values(rows[r], c);
        }
    }
    return out;
}

FoldRecord run_fold_paper_faithful(const ClassifierSpec& spec, const FeatureMatrix& full,
                                   const std::vector<int>& labels, std::size_t held_out,
                                   const std::string& sample_id) {
    std::vector<std::size_t> train_rows;
    std::vector<int> train_y;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (i == held_out) continue;
        train_rows.push_back(i);
        train_y.push_back(labels[i]);
    }
    const FeatureMatrix train_x = take_rows(full, train_rows);
    const FeatureMatrix test_x = take_rows(full, {held_out});

    const TrainedClassifier model = fit(spec, train_x, train_y);
    const double p1 = model.predict_p1(test_x)[0];

    FoldRecord rec;
    rec.sample_id = sample_id;
    rec.truth = labels[held_out];
    rec.p1 = p1;
    rec.predicted = p1 > 0.5 ? 1 : 0;
    rec.degenerate_fold = model.degenerate;
    return rec;
}

FoldRecord run_fold_leakage_safe(const ClassifierSpec& spec, const CtMatrix& m,
                                 std::size_t held_out, std::size_t top_k) {
    const CtMatrix train_m = drop_sample(m, held_out);
    std::vector<std::string> genes = m.gene_names;
    if (top_k > 0) genes = select_top_k(train_m, top_k);

    const CtMatrix train_sub = subset_genes(train_m, genes);
    const FeatureMatrix train_x = standardize(train_sub);

    CtMatrix test_m;
    test_m.sample_ids = {m.sample_ids[held_out]};
    test_m.labels = {m.labels[held_out]};
    test_m.gene_names = m.gene_names;
    test_m.values = Matrix(1, m.n_genes());
    for (std::size_t g = 0; g < m.n_genes(); ++g) test_m.values(0, g) = m.values(held_out, g);
    test_m.missing_mask = {m.missing_mask[held_out]};
    const CtMatrix test_sub = subset_genes(test_m, genes);
    const FeatureMatrix test_x = standardize(test_sub, train_x.standardization);

    const TrainedClassifier model = fit(spec, train_x, train_sub.labels);
    const double p1 = model.predict_p1(test_x)[0];

    FoldRecord rec;
    rec.sample_id = m.sample_ids[held_out];
    rec.truth = m.labels[held_out];
    rec.p1 = p1;
    rec.predicted = p1 > 0.5 ? 1 : 0;
    rec.degenerate_fold = model.degenerate;
    return rec;
}

}  // namespace

CvReport loocv(const ClassifierSpec& spec, const CtMatrix& m, PreprocessPolicy policy,
               std::size_t top_k, std::size_t n_threads) {
    const std::size_t s = m.n_samples();
    if (s < 2) throw ArgumentError("leave-one-out needs at least two samples");
    if (top_k > m.n_genes()) throw ArgumentError("top_k exceeds gene count");

    CvReport report;
    report.folds.resize(s);

    if (policy == PreprocessPolicy::PaperFaithful) {
        CtMatrix base = m;
        if (top_k > 0) base = subset_genes(m, select_top_k(m, top_k));
        const FeatureMatrix full = standardize(base);
        parallel_for(s, n_threads, [&](std::size_t i) {
            report.folds[i] =
                run_fold_paper_faithful(spec, full, m.labels, i, m.sample_ids[i]);
        });
    } else {
        parallel_for(s, n_threads, [&](std::size_t i) {
            report.folds[i] = run_fold_leakage_safe(spec, m, i, top_k);
        });
    }

    std::sort(report.folds.begin(), report.folds.end(),
              [](const FoldRecord& a, const FoldRecord& b) { return a.sample_id < b.sample_id; });

    std::vector<int> truth, predicted;
    std::vector<double> scores;
    for (const FoldRecord& rec : report.folds) {
        truth.push_back(rec.truth);
        predicted.push_back(rec.predicted);
        scores.push_back(rec.p1);
        report.any_degenerate_fold = report.any_degenerate_fold || rec.degenerate_fold;
    }

    const ClassificationMetrics metrics = classification_metrics(truth, predicted);
    report.accuracy = metrics.accuracy;
    report.f1_macro = metrics.f1_macro;
    report.mcc = metrics.mcc;
    report.absent_class = metrics.absent_class;

    const bool both_classes = std::count(truth.begin(), truth.end(), 1) > 0 &&
                              std::count(truth.begin(), truth.end(), 0) > 0;
    if (both_classes) {
        auto [auc, points] = roc_auc(truth, scores);
        report.auc = auc;
        report.roc_points = std::move(points);
    } else {
        report.auc = std::numeric_limits<double>::quiet_NaN();
    }
    return report;
}

}  // namespace ctml
