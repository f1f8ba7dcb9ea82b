"""Explainable expression analysis for small two-group qPCR cohorts.

Thin re-export of the compiled extension; the analysis itself lives in C++.
"""

from ._ctml import (
    ArgumentError,
    ContractError,
    CorrelationMatrix,
    CtMatrix,
    CvReport,
    Dendrogram,
    DgeRecord,
    FeatureMatrix,
    FoldRecord,
    LookupError,
    ParseError,
    PcaResult,
    ShapAttribution,
    TrainedClassifier,
    __version__,
    bh_fdr,
    classifier_from_json,
    classifier_kinds,
    cli,
    dge,
    fit,
    gene_correlation,
    hcluster,
    impute,
    loocv,
    network_edges,
    parse_ct_table,
    pca,
    read_cohort,
    roc_auc,
    sample_correlation,
    select_top_k,
    serialize_ct_table,
    shap_summary,
    shap_values,
    standardize,
    subset_genes,
    synthesize,
    welch_t,
)

__all__ = [
    "ArgumentError",
    "ContractError",
    "CorrelationMatrix",
    "CtMatrix",
    "CvReport",
    "Dendrogram",
    "DgeRecord",
    "FeatureMatrix",
    "FoldRecord",
    "LookupError",
    "ParseError",
    "PcaResult",
    "ShapAttribution",
    "TrainedClassifier",
    "__version__",
    "bh_fdr",
    "classifier_from_json",
    "classifier_kinds",
    "cli",
    "dge",
    "fit",
    "gene_correlation",
    "hcluster",
    "impute",
    "loocv",
    "network_edges",
    "parse_ct_table",
    "pca",
    "read_cohort",
    "roc_auc",
    "sample_correlation",
    "select_top_k",
    "serialize_ct_table",
    "shap_summary",
    "shap_values",
    "standardize",
    "subset_genes",
    "synthesize",
    "welch_t",
]
