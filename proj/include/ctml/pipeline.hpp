#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ctml/classifiers.hpp"
#include "ctml/ct_matrix.hpp"
#include "ctml/eval.hpp"
#include "ctml/stats.hpp"
#include "ctml/synth.hpp"

namespace ctml {

/// One resolved run: the JSON config file merged with CLI overrides.
/// Thread count is deliberately not part of the config; results must be
/// identical at any level of parallelism.
struct RunConfig {
    std::string ct_table;    // delimited Ct export (layout per `orientation`)
    std::string labels;      // sample_id,label CSV
    std::string annotation;  // gene,category CSV; empty skips pathway output
    Orientation orientation = Orientation::SamplesAsRows;
    double impute_value = 40.0;
    std::size_t top_k = 20;
    std::uint64_t seed = 7;
    PreprocessPolicy policy = PreprocessPolicy::PaperFaithful;
    RegulationThresholds thresholds;
    double edge_threshold = 0.78;     // |r| cutoff for network edges
    std::size_t network_genes = 25;   // top consensus genes in the network
    std::size_t n_clusters = 2;       // sample-dendrogram cut
    std::vector<ClassifierKind> classifiers;  // cross-validation grid rows
    bool features_all = true;    // grid column: every gene
    bool features_top_k = true;  // grid column: top-k genes
    SyntheticCohortConfig synth;
    std::string out_dir;  // default: $CTML_OUT_DIR or "results"

    void validate() const;  // throws ArgumentError
    /// Canonical JSON of every analysis-relevant field. out_dir is excluded:
    /// a run is fingerprinted by what it computes, not where it writes.
    std::string fingerprint() const;
};

RunConfig default_run_config();

/// Strict JSON parse on top of the defaults: unknown keys, wrong types and
/// out-of-range values all throw ParseError so config typos fail loudly.
RunConfig parse_run_config(const std::string& json_text);
RunConfig load_run_config(const std::string& path);

/// Relative output path -> file content. Commands build the complete set in
/// memory before anything touches disk, so a failed run leaves no partial
/// outputs.
using ArtifactSet = std::map<std::string, std::string>;

/// Re-serializes the Ct export and label file into the canonical layout
/// (samples as rows, missing cells spelled "Undetermined").
ArtifactSet cmd_convert(const RunConfig& cfg);
/// Writes a synthetic cohort in the canonical layout.
ArtifactSet cmd_synth(const RunConfig& cfg);
/// Differential-expression table plus volcano plot.
ArtifactSet cmd_dge(const RunConfig& cfg);
/// PCA scores/loadings/variance, sample correlation, dendrogram, cluster
/// assignments, and the PC1/PC2 scatter.
ArtifactSet cmd_pca(const RunConfig& cfg);
/// Leave-one-out metric grid over (classifier x feature set) with pooled
/// ROC curves.
ArtifactSet cmd_crossval(const RunConfig& cfg, std::size_t n_threads = 1);
/// Per-pathway aggregates of the DGE table (requires an annotation file).
ArtifactSet cmd_pathway(const RunConfig& cfg);
/// SHAP attributions for the tree ensembles, consensus importance ranking,
/// gene correlation network, and their plots.
ArtifactSet cmd_explain(const RunConfig& cfg, std::size_t n_threads = 1);
/// Every analysis artifact in one run: dge + pca + crossval + explain
/// (+ pathway when an annotation is configured).
ArtifactSet cmd_report(const RunConfig& cfg, std::size_t n_threads = 1);

/// Manifest JSON naming each artifact with its SHA-256 and size, plus the
/// config fingerprint hash and seed. Contains nothing volatile, so reruns
/// with the same config produce bit-identical manifests.
std::string manifest_json(const RunConfig& cfg, const std::string& command,
                          const ArtifactSet& artifacts);

/// Writes every artifact plus "manifest.json" under cfg.out_dir, creating
/// the directory if needed.
void write_artifacts(const RunConfig& cfg, const std::string& command,
                     const ArtifactSet& artifacts);

/// Full command-line entry point (argv without the program name). Returns
/// the process exit code: 0 iff every requested artifact was written.
int run_cli(const std::vector<std::string>& args);

}  // namespace ctml
