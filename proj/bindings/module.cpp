#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ctml/classifiers.hpp"
#include "ctml/csv.hpp"
#include "ctml/ct_matrix.hpp"
#include "ctml/decomp.hpp"
#include "ctml/errors.hpp"
#include "ctml/eval.hpp"
#include "ctml/pipeline.hpp"
#include "ctml/preprocess.hpp"
#include "ctml/shap.hpp"
#include "ctml/stats.hpp"
#include "ctml/synth.hpp"

namespace py = pybind11;
using namespace ctml;

namespace {

std::vector<std::vector<double>> matrix_rows(const Matrix& m) {
    std::vector<std::vector<double>> rows(m.rows);
    for (std::size_t r = 0; r < m.rows; ++r) rows[r] = m.row(r);
    return rows;
}

Orientation orientation_from(const std::string& name) {
    if (name == "genes_as_rows") return Orientation::GenesAsRows;
    if (name == "samples_as_rows") return Orientation::SamplesAsRows;
    throw ArgumentError("unknown orientation '" + name + "'");
}

RegulationThresholds thresholds_from(double fc_up, double fc_down, double alpha) {
    RegulationThresholds th;
    th.fc_up = fc_up;
    th.fc_down = fc_down;
    th.alpha = alpha;
    return th;
}

}  // namespace

PYBIND11_MODULE(_ctml, mod) {
    mod.doc() = "Explainable expression analysis for small two-group qPCR cohorts";
    mod.attr("__version__") = "0.1.0";

    py::register_exception<ParseError>(mod, "ParseError", PyExc_ValueError);
    py::register_exception<ArgumentError>(mod, "ArgumentError", PyExc_ValueError);
    py::register_exception<LookupError>(mod, "LookupError", PyExc_KeyError);
    py::register_exception<ContractError>(mod, "ContractError", PyExc_RuntimeError);

    py::class_<CtMatrix>(mod, "CtMatrix")
        .def_readonly("sample_ids", &CtMatrix::sample_ids)
        .def_readonly("gene_names", &CtMatrix::gene_names)
        .def_readonly("labels", &CtMatrix::labels)
        .def_property_readonly("values",
                               [](const CtMatrix& m) { return matrix_rows(m.values); })
        .def_readonly("missing_mask", &CtMatrix::missing_mask)
        .def("n_samples", &CtMatrix::n_samples)
        .def("n_genes", &CtMatrix::n_genes)
        .def("missing_count", &CtMatrix::missing_count);

    py::class_<FeatureMatrix>(mod, "FeatureMatrix")
        .def_readonly("feature_names", &FeatureMatrix::feature_names)
        .def_property_readonly(
            "values", [](const FeatureMatrix& m) { return matrix_rows(m.values); });

    py::class_<DgeRecord>(mod, "DgeRecord")
        .def_readonly("gene", &DgeRecord::gene)
        .def_readonly("mean_ct_ground", &DgeRecord::mean_ct_group0)
        .def_readonly("mean_ct_flight", &DgeRecord::mean_ct_group1)
        .def_readonly("ddct", &DgeRecord::delta_delta_ct)
        .def_readonly("fc", &DgeRecord::fold_change)
        .def_readonly("log2_fc", &DgeRecord::log2_fc)
        .def_readonly("t", &DgeRecord::t_stat)
        .def_readonly("df", &DgeRecord::welch_df)
        .def_readonly("p", &DgeRecord::p_value)
        .def_readonly("q", &DgeRecord::q_value)
        .def_property_readonly(
            "regulation", [](const DgeRecord& r) { return to_string(r.regulation); })
        .def("__repr__", [](const DgeRecord& r) {
            return "DgeRecord(" + r.gene + ", fc=" + format_sig6(r.fold_change) +
                   ", p=" + format_sig6(r.p_value) + ")";
        });

    py::class_<PcaResult>(mod, "PcaResult")
        .def_property_readonly("scores",
                               [](const PcaResult& p) { return matrix_rows(p.scores); })
        .def_property_readonly("components",
                               [](const PcaResult& p) { return matrix_rows(p.components); })
        .def_readonly("explained_variance_ratio", &PcaResult::explained_variance_ratio);

    py::class_<CorrelationMatrix>(mod, "CorrelationMatrix")
        .def_readonly("names", &CorrelationMatrix::names)
        .def_property_readonly("r",
                               [](const CorrelationMatrix& c) { return matrix_rows(c.r); })
        .def_readonly("constant", &CorrelationMatrix::constant);

    py::class_<Dendrogram>(mod, "Dendrogram")
        .def_property_readonly("merges",
                               [](const Dendrogram& d) {
                                   std::vector<std::tuple<std::size_t, std::size_t, double>> out;
                                   for (const MergeStep& s : d.merges) {
                                       out.emplace_back(s.a, s.b, s.height);
                                   }
                                   return out;
                               })
        .def_readonly("leaf_order", &Dendrogram::leaf_order)
        .def_readonly("assignments", &Dendrogram::assignments)
        .def_readonly("n_clusters", &Dendrogram::n_clusters);

    py::class_<FoldRecord>(mod, "FoldRecord")
        .def_readonly("sample_id", &FoldRecord::sample_id)
        .def_readonly("truth", &FoldRecord::truth)
        .def_readonly("predicted", &FoldRecord::predicted)
        .def_readonly("p1", &FoldRecord::p1)
        .def_readonly("degenerate_fold", &FoldRecord::degenerate_fold);

    py::class_<CvReport>(mod, "CvReport")
        .def_readonly("folds", &CvReport::folds)
        .def_readonly("accuracy", &CvReport::accuracy)
        .def_readonly("f1_macro", &CvReport::f1_macro)
        .def_readonly("auc", &CvReport::auc)
        .def_readonly("mcc", &CvReport::mcc)
        .def_property_readonly("roc_points",
                               [](const CvReport& r) {
                                   std::vector<std::tuple<double, double, double>> out;
                                   for (const RocPoint& p : r.roc_points) {
                                       out.emplace_back(p.fpr, p.tpr, p.threshold);
                                   }
                                   return out;
                               })
        .def_readonly("any_degenerate_fold", &CvReport::any_degenerate_fold);

    py::class_<TrainedClassifier>(mod, "TrainedClassifier")
        .def_property_readonly("kind",
                               [](const TrainedClassifier& c) { return to_string(c.kind); })
        .def_readonly("feature_names", &TrainedClassifier::feature_names)
        .def_readonly("degenerate", &TrainedClassifier::degenerate)
        .def("predict_proba",
             [](const TrainedClassifier& c, const FeatureMatrix& x) {
                 return matrix_rows(c.predict_proba(x));
             })
        .def("predict_p1", &TrainedClassifier::predict_p1)
        .def("predict", &TrainedClassifier::predict)
        .def("to_json", [](const TrainedClassifier& c) { return serialize_classifier(c); });

    py::class_<ShapAttribution>(mod, "ShapAttribution")
        .def_readonly("feature_names", &ShapAttribution::feature_names)
        .def_property_readonly("phi",
                               [](const ShapAttribution& a) { return matrix_rows(a.phi); })
        .def_readonly("base_value", &ShapAttribution::base_value);

    mod.def(
        "parse_ct_table",
        [](const std::string& text, const std::string& orientation,
           const std::map<std::string, int>& labels) {
            return parse_ct_table(text, orientation_from(orientation), labels);
        },
        py::arg("text"), py::arg("orientation"), py::arg("labels"),
        "Parse delimited Ct text into a samples-as-rows cohort");
    mod.def(
        "read_cohort",
        [](const std::string& ct_path, const std::string& labels_path,
           const std::string& orientation) {
            const auto labels = parse_label_file(read_file(labels_path));
            return parse_ct_table(read_file(ct_path), orientation_from(orientation), labels);
        },
        py::arg("ct_path"), py::arg("labels_path"),
        py::arg("orientation") = "samples_as_rows",
        "Read a Ct table and its label file from disk");
    mod.def("serialize_ct_table", &serialize_ct_table, py::arg("m"),
            "Canonical CSV serialization of a cohort");
    mod.def("impute", &impute_undetermined, py::arg("m"), py::arg("value") = 40.0,
            "Replace missing cells by a fixed Ct value");
    mod.def(
        "synthesize",
        [](std::size_t n_per_group, std::size_t n_genes, std::size_t n_signal_genes,
           double effect_size_ct, double noise_sd, std::uint64_t seed) {
            SyntheticCohortConfig cfg;
            cfg.n_per_group = n_per_group;
            cfg.n_genes = n_genes;
            cfg.n_signal_genes = n_signal_genes;
            cfg.effect_size_ct = effect_size_ct;
            cfg.noise_sd = noise_sd;
            cfg.seed = seed;
            return synthesize_cohort(cfg);
        },
        py::arg("n_per_group") = 8, py::arg("n_genes") = 89,
        py::arg("n_signal_genes") = 10, py::arg("effect_size_ct") = 2.0,
        py::arg("noise_sd") = 0.5, py::arg("seed") = 1,
        "Deterministic synthetic two-group cohort");
    mod.def(
        "standardize", [](const CtMatrix& m) { return standardize(m); }, py::arg("m"),
        "Z-score every gene column (population SD)");
    mod.def("select_top_k", &select_top_k, py::arg("m"), py::arg("k"),
            "Gene names ranked by Welch p-value, best first");
    mod.def("subset_genes", &subset_genes, py::arg("m"), py::arg("names"),
            "Restrict a cohort to the named genes, in order");

    mod.def(
        "welch_t",
        [](const std::vector<double>& a, const std::vector<double>& b) {
            const WelchResult r = welch_t(a, b);
            return py::make_tuple(r.t, r.df, r.p);
        },
        py::arg("a"), py::arg("b"), "Welch's t-test: returns (t, df, p)");
    mod.def("bh_fdr", &bh_fdr, py::arg("p"),
            "Benjamini-Hochberg q-values, in input order");
    mod.def(
        "dge",
        [](const CtMatrix& m, double fc_up, double fc_down, double alpha) {
            return dge_table(m, thresholds_from(fc_up, fc_down, alpha));
        },
        py::arg("m"), py::arg("fc_up") = 1.5, py::arg("fc_down") = 0.67,
        py::arg("alpha") = 0.05, "Differential expression records, one per gene");

    mod.def(
        "pca", [](const FeatureMatrix& x, std::size_t n_components) { return pca(x, n_components); },
        py::arg("x"), py::arg("n_components"), "PCA via SVD of the centered matrix");
    mod.def(
        "gene_correlation",
        [](const CtMatrix& m) {
            return correlation_matrix(m.values, m.gene_names, CorrelationAxis::Genes);
        },
        py::arg("m"), "Gene-gene Pearson correlation on raw Ct values");
    mod.def(
        "sample_correlation",
        [](const FeatureMatrix& x, const std::vector<std::string>& sample_ids) {
            return correlation_matrix(x.values, sample_ids, CorrelationAxis::Samples);
        },
        py::arg("x"), py::arg("sample_ids"),
        "Sample-sample Pearson correlation on z-scored features");
    mod.def("hcluster", &hcluster, py::arg("c"), py::arg("k"),
            "Average-linkage clustering on d = 1 - r");
    mod.def(
        "network_edges",
        [](const CorrelationMatrix& c, double threshold) {
            std::vector<std::tuple<std::string, std::string, double>> out;
            for (const NetworkEdge& e : network_edges(c, threshold)) {
                out.emplace_back(e.a, e.b, e.r);
            }
            return out;
        },
        py::arg("c"), py::arg("threshold"), "Edges with |r| at or above the cutoff");

    mod.def(
        "fit",
        [](const FeatureMatrix& x, const std::vector<int>& y, const std::string& kind,
           std::uint64_t seed, std::size_t threads) {
            ClassifierSpec spec;
            spec.kind = parse_classifier_kind(kind);
            spec.seed = seed;
            return fit(spec, x, y, threads);
        },
        py::arg("x"), py::arg("y"), py::arg("kind") = "random_forest", py::arg("seed") = 0,
        py::arg("threads") = 1, "Train one classifier with its default hyperparameters");
    mod.def("classifier_from_json", &deserialize_classifier, py::arg("text"),
            "Rebuild a serialized classifier; predictions are bit-identical");
    mod.def("classifier_kinds", [] {
        std::vector<std::string> names;
        for (ClassifierKind k : all_classifier_kinds()) names.push_back(to_string(k));
        return names;
    });

    mod.def(
        "loocv",
        [](const CtMatrix& m, const std::string& kind, const std::string& policy,
           std::size_t top_k, std::uint64_t seed, std::size_t threads) {
            ClassifierSpec spec;
            spec.kind = parse_classifier_kind(kind);
            spec.seed = seed;
            return loocv(spec, m, parse_preprocess_policy(policy), top_k, threads);
        },
        py::arg("m"), py::arg("kind"), py::arg("policy") = "paper_faithful",
        py::arg("top_k") = 0, py::arg("seed") = 0, py::arg("threads") = 1,
        "Leave-one-out cross-validation; top_k = 0 uses all genes");
    mod.def(
        "roc_auc",
        [](const std::vector<int>& truth, const std::vector<double>& scores) {
            const auto [auc, points] = roc_auc(truth, scores);
            std::vector<std::tuple<double, double, double>> out;
            for (const RocPoint& p : points) out.emplace_back(p.fpr, p.tpr, p.threshold);
            return py::make_tuple(auc, out);
        },
        py::arg("truth"), py::arg("scores"), "Pooled pairwise AUC plus ROC step points");

    mod.def("shap_values", &shap_attribution, py::arg("model"), py::arg("x"),
            py::arg("threads") = 1,
            "Exact per-sample SHAP attributions for a tree ensemble");
    mod.def(
        "shap_summary",
        [](const ShapAttribution& a) {
            std::vector<std::pair<std::string, double>> out;
            for (const ShapSummaryEntry& e : shap_summary(a)) {
                out.emplace_back(e.feature, e.mean_abs_phi);
            }
            return out;
        },
        py::arg("a"), "Mean |phi| per feature, largest first");

    mod.def("cli", &run_cli, py::arg("args"),
            "Run one CLI subcommand; returns the process exit code");
}
