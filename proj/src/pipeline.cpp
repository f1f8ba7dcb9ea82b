#include "ctml/pipeline.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <utility>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "ctml/csv.hpp"
#include "ctml/decomp.hpp"
#include "ctml/errors.hpp"
#include "ctml/preprocess.hpp"
#include "ctml/sha256.hpp"
#include "ctml/shap.hpp"
#include "ctml/svg.hpp"

namespace ctml {

namespace {

using nlohmann::json;

std::string orientation_name(Orientation o) {
    return o == Orientation::GenesAsRows ? "genes_as_rows" : "samples_as_rows";
}

Orientation parse_orientation(const std::string& name) {
    if (name == "genes_as_rows") return Orientation::GenesAsRows;
    if (name == "samples_as_rows") return Orientation::SamplesAsRows;
    throw ParseError("unknown orientation '" + name + "'");
}

CtMatrix load_cohort(const RunConfig& cfg) {
    if (cfg.ct_table.empty()) throw ArgumentError("config gives no ct_table path");
    if (cfg.labels.empty()) throw ArgumentError("config gives no labels path");
    const auto label_map = parse_label_file(read_file(cfg.labels));
    return parse_ct_table(read_file(cfg.ct_table), cfg.orientation, label_map);
}

CtMatrix load_imputed(const RunConfig& cfg) {
    return impute_undetermined(load_cohort(cfg), cfg.impute_value);
}

std::string dge_csv(const std::vector<DgeRecord>& records) {
    std::ostringstream o;
    o << "gene,mean_ct_flight,mean_ct_ground,ddct,fc,log2fc,t,df,p,q,regulation\n";
    for (const DgeRecord& r : records) {
        o << r.gene << ',' << format_sig6(r.mean_ct_group1) << ','
          << format_sig6(r.mean_ct_group0) << ',' << format_sig6(r.delta_delta_ct) << ','
          << format_sig6(r.fold_change) << ',' << format_sig6(r.log2_fc) << ','
          << format_sig6(r.t_stat) << ',' << format_sig6(r.welch_df) << ','
          << format_sig6(r.p_value) << ',' << format_sig6(r.q_value) << ','
          << to_string(r.regulation) << '\n';
    }
    return o.str();
}

std::string correlation_csv(const CorrelationMatrix& c) {
    std::ostringstream o;
    o << "name";
    for (const std::string& n : c.names) o << ',' << n;
    o << '\n';
    for (std::size_t i = 0; i < c.names.size(); ++i) {
        o << c.names[i];
        for (std::size_t j = 0; j < c.names.size(); ++j) o << ',' << format_sig6(c.r(i, j));
        o << '\n';
    }
    return o.str();
}

struct PcaView {
    FeatureMatrix features;  // globally z-scored, all genes
    PcaResult result;
};

PcaView run_pca(const CtMatrix& m) {
    PcaView v;
    v.features = standardize(m);
    const std::size_t n_components = std::min(m.n_samples() - 1, m.n_genes());
    v.result = pca(v.features, n_components);
    return v;
}

std::string phi_matrix_csv(const ShapAttribution& a, const std::vector<std::string>& sample_ids) {
    std::ostringstream o;
    o << "sample_id";
    for (const std::string& g : a.feature_names) o << ',' << g;
    o << ",base_value\n";
    for (std::size_t s = 0; s < a.phi.rows; ++s) {
        o << sample_ids[s];
        for (std::size_t f = 0; f < a.phi.cols; ++f) o << ',' << format_sig6(a.phi(s, f));
        o << ',' << format_sig6(a.base_value) << '\n';
    }
    return o.str();
}

std::string pathway_csv(const CtMatrix& m, const RunConfig& cfg) {
    if (cfg.annotation.empty()) {
        throw ArgumentError("pathway summary needs an annotation path in the config");
    }
    const PathwayAnnotation ann = PathwayAnnotation::parse(read_file(cfg.annotation));
    const std::vector<PathwayRow> rows = pathway_summary(dge_table(m, cfg.thresholds), ann);
    std::ostringstream o;
    o << "pathway,gene_count,mean_fc,max_fc,min_p,mean_log2_fc\n";
    for (const PathwayRow& r : rows) {
        o << r.pathway << ',' << r.gene_count << ',' << format_sig6(r.mean_fc) << ','
          << format_sig6(r.max_fc) << ',' << format_sig6(r.min_p) << ','
          << format_sig6(r.mean_log2_fc) << '\n';
    }
    return o.str();
}

std::string feature_set_name(const RunConfig& cfg, bool top) {
    return top ? "top" + std::to_string(cfg.top_k) : "all";
}

void require_key_type(bool ok, const std::string& key, const char* want) {
    if (!ok) throw ParseError("config key '" + key + "' must be " + want);
}

std::size_t get_count(const json& v, const std::string& key) {
    require_key_type(v.is_number_unsigned(), key, "a non-negative integer");
    return v.get<std::size_t>();
}

double get_number(const json& v, const std::string& key) {
    require_key_type(v.is_number(), key, "a number");
    return v.get<double>();
}

std::string get_string(const json& v, const std::string& key) {
    require_key_type(v.is_string(), key, "a string");
    return v.get<std::string>();
}

void parse_thresholds(const json& j, RegulationThresholds& th) {
    for (const auto& [key, value] : j.items()) {
        if (key == "fc_up") th.fc_up = get_number(value, key);
        else if (key == "fc_down") th.fc_down = get_number(value, key);
        else if (key == "alpha") th.alpha = get_number(value, key);
        else throw ParseError("unknown thresholds key '" + key + "'");
    }
}

void parse_synth(const json& j, SyntheticCohortConfig& s) {
    for (const auto& [key, value] : j.items()) {
        if (key == "n_per_group") s.n_per_group = get_count(value, key);
        else if (key == "n_genes") s.n_genes = get_count(value, key);
        else if (key == "n_signal_genes") s.n_signal_genes = get_count(value, key);
        else if (key == "effect_size_ct") s.effect_size_ct = get_number(value, key);
        else if (key == "noise_sd") s.noise_sd = get_number(value, key);
        else if (key == "seed") s.seed = get_count(value, key);
        else throw ParseError("unknown synth key '" + key + "'");
    }
}

}  // namespace

void RunConfig::validate() const {
    if (top_k < 1) throw ArgumentError("top_k must be at least 1");
    if (!(impute_value > 0.0)) throw ArgumentError("impute_value must be positive");
    if (!(thresholds.fc_up > 0.0) || !(thresholds.fc_down > 0.0)) {
        throw ArgumentError("fold-change thresholds must be positive");
    }
    if (!(thresholds.alpha > 0.0 && thresholds.alpha < 1.0)) {
        throw ArgumentError("alpha must lie in (0, 1)");
    }
    if (!(edge_threshold >= 0.0 && edge_threshold <= 1.0)) {
        throw ArgumentError("edge_threshold must lie in [0, 1]");
    }
    if (network_genes < 2) throw ArgumentError("network_genes must be at least 2");
    if (n_clusters < 1) throw ArgumentError("n_clusters must be at least 1");
    if (classifiers.empty()) throw ArgumentError("classifier grid must not be empty");
    if (!features_all && !features_top_k) {
        throw ArgumentError("feature_sets must include 'all' or 'top_k'");
    }
}

std::string RunConfig::fingerprint() const {
    json j;
    j["ct_table"] = ct_table;
    j["labels"] = labels;
    j["annotation"] = annotation;
    j["orientation"] = orientation_name(orientation);
    j["impute_value"] = impute_value;
    j["top_k"] = top_k;
    j["seed"] = seed;
    j["preprocessing"] = to_string(policy);
    j["thresholds"] = {{"fc_up", thresholds.fc_up},
                       {"fc_down", thresholds.fc_down},
                       {"alpha", thresholds.alpha}};
    j["edge_threshold"] = edge_threshold;
    j["network_genes"] = network_genes;
    j["n_clusters"] = n_clusters;
    json kinds = json::array();
    for (ClassifierKind k : classifiers) kinds.push_back(to_string(k));
    j["classifiers"] = kinds;
    json sets = json::array();
    if (features_all) sets.push_back("all");
    if (features_top_k) sets.push_back("top_k");
    j["feature_sets"] = sets;
    j["synth"] = {{"n_per_group", synth.n_per_group},
                  {"n_genes", synth.n_genes},
                  {"n_signal_genes", synth.n_signal_genes},
                  {"effect_size_ct", synth.effect_size_ct},
                  {"noise_sd", synth.noise_sd},
                  {"seed", synth.seed}};
    return j.dump(2);
}

RunConfig default_run_config() {
    RunConfig cfg;
    cfg.classifiers = all_classifier_kinds();
    const char* env = std::getenv("CTML_OUT_DIR");
    cfg.out_dir = env != nullptr && *env != '\0' ? env : "results";
    return cfg;
}

RunConfig parse_run_config(const std::string& json_text) {
    RunConfig cfg = default_run_config();
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("config root must be a JSON object");

    for (const auto& [key, value] : j.items()) {
        if (key == "ct_table") cfg.ct_table = get_string(value, key);
        else if (key == "labels") cfg.labels = get_string(value, key);
        else if (key == "annotation") cfg.annotation = get_string(value, key);
        else if (key == "orientation") cfg.orientation = parse_orientation(get_string(value, key));
        else if (key == "impute_value") cfg.impute_value = get_number(value, key);
        else if (key == "top_k") cfg.top_k = get_count(value, key);
        else if (key == "seed") cfg.seed = get_count(value, key);
        else if (key == "preprocessing") cfg.policy = parse_preprocess_policy(get_string(value, key));
        else if (key == "thresholds") parse_thresholds(value, cfg.thresholds);
        else if (key == "edge_threshold") cfg.edge_threshold = get_number(value, key);
        else if (key == "network_genes") cfg.network_genes = get_count(value, key);
        else if (key == "n_clusters") cfg.n_clusters = get_count(value, key);
        else if (key == "classifiers") {
            require_key_type(value.is_array(), key, "an array of classifier names");
            cfg.classifiers.clear();
            for (const json& entry : value) {
                cfg.classifiers.push_back(parse_classifier_kind(get_string(entry, key)));
            }
        } else if (key == "feature_sets") {
            require_key_type(value.is_array(), key, "an array");
            cfg.features_all = false;
            cfg.features_top_k = false;
            for (const json& entry : value) {
                const std::string name = get_string(entry, key);
                if (name == "all") cfg.features_all = true;
                else if (name == "top_k") cfg.features_top_k = true;
                else throw ParseError("unknown feature set '" + name + "'");
            }
        } else if (key == "synth") {
            parse_synth(value, cfg.synth);
        } else if (key == "out_dir") {
            cfg.out_dir = get_string(value, key);
        } else {
            throw ParseError("unknown config key '" + key + "'");
        }
    }
    cfg.validate();
    return cfg;
}

RunConfig load_run_config(const std::string& path) {
    return parse_run_config(read_file(path));
}

ArtifactSet cmd_convert(const RunConfig& cfg) {
    const CtMatrix m = load_cohort(cfg);
    ArtifactSet out;
    out["ct_table.csv"] = serialize_ct_table(m);
    out["labels.csv"] = serialize_label_file(m);
    return out;
}

ArtifactSet cmd_synth(const RunConfig& cfg) {
    const CtMatrix m = synthesize_cohort(cfg.synth);
    ArtifactSet out;
    out["synthetic_ct.csv"] = serialize_ct_table(m);
    out["synthetic_labels.csv"] = serialize_label_file(m);
    return out;
}

ArtifactSet cmd_dge(const RunConfig& cfg) {
    const CtMatrix m = load_imputed(cfg);
    const std::vector<DgeRecord> records = dge_table(m, cfg.thresholds);
    ArtifactSet out;
    out["volcano.svg"] = svg_volcano(records, cfg.thresholds);
    out["dge.csv"] = dge_csv(records);
    return out;
}

ArtifactSet cmd_pca(const RunConfig& cfg) {
    const CtMatrix m = load_imputed(cfg);
    const PcaView v = run_pca(m);
    const std::size_t n_components = v.result.scores.cols;

    ArtifactSet out;
    {
        std::ostringstream o;
        o << "sample_id";
        for (std::size_t c = 0; c < n_components; ++c) o << ",pc" << c + 1;
        o << ",label\n";
        for (std::size_t s = 0; s < m.n_samples(); ++s) {
            o << m.sample_ids[s];
            for (std::size_t c = 0; c < n_components; ++c) {
                o << ',' << format_sig6(v.result.scores(s, c));
            }
            o << ',' << m.labels[s] << '\n';
        }
        out["pca_scores.csv"] = o.str();
    }
    {
        std::ostringstream o;
        o << "gene";
        for (std::size_t c = 0; c < n_components; ++c) o << ",pc" << c + 1;
        o << '\n';
        for (std::size_t g = 0; g < m.n_genes(); ++g) {
            o << m.gene_names[g];
            for (std::size_t c = 0; c < n_components; ++c) {
                o << ',' << format_sig6(v.result.components(g, c));
            }
            o << '\n';
        }
        out["pca_loadings.csv"] = o.str();
    }
    {
        std::ostringstream o;
        o << "component,variance_ratio,cumulative\n";
        double cumulative = 0.0;
        for (std::size_t c = 0; c < n_components; ++c) {
            cumulative += v.result.explained_variance_ratio[c];
            o << "pc" << c + 1 << ',' << format_sig6(v.result.explained_variance_ratio[c])
              << ',' << format_sig6(cumulative) << '\n';
        }
        out["pca_variance.csv"] = o.str();
    }
    out["pca_scatter.svg"] = svg_pca_scatter(v.result, m.sample_ids, m.labels);

    // Sample-level structure: correlation over z-scored genes, then an
    // average-linkage cut.
    const CorrelationMatrix c =
        correlation_matrix(v.features.values, m.sample_ids, CorrelationAxis::Samples);
    out["sample_correlation.csv"] = correlation_csv(c);

    const Dendrogram d = hcluster(c, cfg.n_clusters);
    {
        std::ostringstream o;
        o << "step,cluster_a,cluster_b,height\n";
        for (std::size_t i = 0; i < d.merges.size(); ++i) {
            o << i + 1 << ',' << d.merges[i].a << ',' << d.merges[i].b << ','
              << format_sig6(d.merges[i].height) << '\n';
        }
        out["dendrogram.csv"] = o.str();
    }
    {
        std::ostringstream o;
        o << "sample_id,cluster,label\n";
        for (std::size_t s = 0; s < m.n_samples(); ++s) {
            o << m.sample_ids[s] << ',' << d.assignments[s] << ',' << m.labels[s] << '\n';
        }
        out["sample_clusters.csv"] = o.str();
    }
    return out;
}

ArtifactSet cmd_crossval(const RunConfig& cfg, std::size_t n_threads) {
    const CtMatrix m = load_imputed(cfg);
    std::vector<bool> feature_sets;
    if (cfg.features_all) feature_sets.push_back(false);
    if (cfg.features_top_k) feature_sets.push_back(true);

    std::ostringstream grid;
    grid << "model,feature_set,accuracy,f1_macro,auc,mcc,degenerate_folds\n";
    std::ostringstream folds;
    folds << "model,feature_set,sample_id,truth,predicted,p1,degenerate_fold\n";
    std::ostringstream roc;
    roc << "model,feature_set,fpr,tpr,threshold\n";
    std::vector<std::pair<std::string, std::vector<RocPoint>>> curves;

    for (ClassifierKind kind : cfg.classifiers) {
        for (bool top : feature_sets) {
            ClassifierSpec spec;
            spec.kind = kind;
            spec.seed = cfg.seed;
            const CvReport rep =
                loocv(spec, m, cfg.policy, top ? cfg.top_k : 0, n_threads);
            const std::string model = to_string(kind);
            const std::string set = feature_set_name(cfg, top);

            grid << model << ',' << set << ',' << format_sig6(rep.accuracy) << ','
                 << format_sig6(rep.f1_macro) << ',' << format_sig6(rep.auc) << ','
                 << format_sig6(rep.mcc) << ',' << (rep.any_degenerate_fold ? 1 : 0) << '\n';
            for (const FoldRecord& fr : rep.folds) {
                folds << model << ',' << set << ',' << fr.sample_id << ',' << fr.truth << ','
                      << fr.predicted << ',' << format_sig6(fr.p1) << ','
                      << (fr.degenerate_fold ? 1 : 0) << '\n';
            }
            for (const RocPoint& pt : rep.roc_points) {
                roc << model << ',' << set << ',' << format_sig6(pt.fpr) << ','
                    << format_sig6(pt.tpr) << ',' << format_sig6(pt.threshold) << '\n';
            }
            // One ROC curve per model in the plot; the top-k run wins when
            // both feature sets are requested.
            if (top || !cfg.features_top_k) curves.emplace_back(model, rep.roc_points);
        }
    }

    ArtifactSet out;
    out["crossval.csv"] = grid.str();
    out["crossval_folds.csv"] = folds.str();
    out["roc_points.csv"] = roc.str();
    out["roc.svg"] = svg_roc(curves);
    return out;
}

ArtifactSet cmd_pathway(const RunConfig& cfg) {
    const CtMatrix m = load_imputed(cfg);
    ArtifactSet out;
    out["pathway.csv"] = pathway_csv(m, cfg);
    return out;
}

ArtifactSet cmd_explain(const RunConfig& cfg, std::size_t n_threads) {
    const CtMatrix m = load_imputed(cfg);
    const std::vector<DgeRecord> dge = dge_table(m, cfg.thresholds);

    // Models and attributions live on the globally z-scored top-k panel,
    // refit to the full cohort.
    const std::vector<std::string> top = select_top_k(m, cfg.top_k);
    const CtMatrix panel = subset_genes(m, top);
    const FeatureMatrix fm = standardize(panel);

    ClassifierSpec rf_spec;
    rf_spec.kind = ClassifierKind::RandomForest;
    rf_spec.seed = cfg.seed;
    const TrainedClassifier rf = fit(rf_spec, fm, m.labels, n_threads);
    ClassifierSpec gbt_spec;
    gbt_spec.kind = ClassifierKind::GradientBoostedTrees;
    gbt_spec.seed = cfg.seed;
    const TrainedClassifier gbt = fit(gbt_spec, fm, m.labels, n_threads);

    const ShapAttribution rf_phi = shap_attribution(rf, fm, n_threads);
    const ShapAttribution gbt_phi = shap_attribution(gbt, fm, n_threads);
    const std::vector<ShapSummaryEntry> rf_mean = shap_summary(rf_phi);
    const std::vector<ShapSummaryEntry> gbt_mean = shap_summary(gbt_phi);

    std::vector<ImportanceSource> sources(4);
    sources[0].name = "rf_impurity";
    sources[1].name = "gbt_gain";
    sources[2].name = "rf_mean_abs_shap";
    sources[3].name = "gbt_mean_abs_shap";
    const std::vector<double> rf_imp = feature_importance(rf);
    const std::vector<double> gbt_imp = feature_importance(gbt);
    for (std::size_t f = 0; f < top.size(); ++f) {
        sources[0].scores[top[f]] = rf_imp[f];
        sources[1].scores[top[f]] = gbt_imp[f];
    }
    for (const ShapSummaryEntry& e : rf_mean) sources[2].scores[e.feature] = e.mean_abs_phi;
    for (const ShapSummaryEntry& e : gbt_mean) sources[3].scores[e.feature] = e.mean_abs_phi;

    const std::vector<ConsensusRecord> consensus = consensus_rank(sources, dge);

    ArtifactSet out;
    out["shap_rf.csv"] = phi_matrix_csv(rf_phi, m.sample_ids);
    out["shap_gbt.csv"] = phi_matrix_csv(gbt_phi, m.sample_ids);
    {
        std::ostringstream o;
        o << "model,gene,mean_abs_phi\n";
        for (const ShapSummaryEntry& e : rf_mean) {
            o << "random_forest," << e.feature << ',' << format_sig6(e.mean_abs_phi) << '\n';
        }
        for (const ShapSummaryEntry& e : gbt_mean) {
            o << "gradient_boosted_trees," << e.feature << ',' << format_sig6(e.mean_abs_phi)
              << '\n';
        }
        out["shap_summary.csv"] = o.str();
    }
    out["shap_bar_rf.svg"] = svg_shap_bar(rf_mean, 15, "Mean |SHAP|, random forest");
    out["shap_bar_gbt.svg"] =
        svg_shap_bar(gbt_mean, 15, "Mean |SHAP|, gradient boosted trees");
    {
        std::ostringstream o;
        o << "rank,gene,rf_impurity,gbt_gain,rf_mean_abs_shap,gbt_mean_abs_shap,"
             "consensus,fc,regulation\n";
        for (std::size_t i = 0; i < consensus.size(); ++i) {
            const ConsensusRecord& r = consensus[i];
            o << i + 1 << ',' << r.gene;
            for (double s : r.source_scores) o << ',' << format_sig6(s);
            o << ',' << format_sig6(r.consensus) << ',' << format_sig6(r.fold_change) << ','
              << to_string(r.regulation) << '\n';
        }
        out["consensus.csv"] = o.str();
    }

    // Correlation network over the top consensus genes, on raw Ct values
    // (Pearson r is unchanged by the per-gene z-scoring anyway).
    std::vector<std::string> net_genes;
    for (const ConsensusRecord& r : consensus) {
        if (net_genes.size() == cfg.network_genes) break;
        net_genes.push_back(r.gene);
    }
    const CtMatrix net_panel = subset_genes(m, net_genes);
    const CorrelationMatrix c =
        correlation_matrix(net_panel.values, net_panel.gene_names, CorrelationAxis::Genes);
    out["gene_correlation.csv"] = correlation_csv(c);
    const std::vector<NetworkEdge> edges = network_edges(c, cfg.edge_threshold);
    {
        std::ostringstream o;
        o << "gene_a,gene_b,r\n";
        for (const NetworkEdge& e : edges) {
            o << e.a << ',' << e.b << ',' << format_sig6(e.r) << '\n';
        }
        out["network_edges.csv"] = o.str();
    }
    out["network.svg"] = svg_network(net_genes, edges);

    out["pca_scatter.svg"] = svg_pca_scatter(run_pca(m).result, m.sample_ids, m.labels);
    if (!cfg.annotation.empty()) out["pathway.csv"] = pathway_csv(m, cfg);
    return out;
}

ArtifactSet cmd_report(const RunConfig& cfg, std::size_t n_threads) {
    ArtifactSet out = cmd_dge(cfg);
    out.merge(cmd_pca(cfg));
    out.merge(cmd_crossval(cfg, n_threads));
    out.merge(cmd_explain(cfg, n_threads));
    return out;
}

std::string manifest_json(const RunConfig& cfg, const std::string& command,
                          const ArtifactSet& artifacts) {
    json j;
    j["format"] = "ctml-manifest";
    j["version"] = 1;
    j["command"] = command;
    j["seed"] = cfg.seed;
    j["config_sha256"] = sha256_hex(cfg.fingerprint());
    json list = json::array();
    for (const auto& [path, content] : artifacts) {
        list.push_back(
            {{"path", path}, {"bytes", content.size()}, {"sha256", sha256_hex(content)}});
    }
    j["artifacts"] = list;
    return j.dump(2) + "\n";
}

void write_artifacts(const RunConfig& cfg, const std::string& command,
                     const ArtifactSet& artifacts) {
    const std::filesystem::path dir(cfg.out_dir.empty() ? "results" : cfg.out_dir);
    std::filesystem::create_directories(dir);
    for (const auto& [path, content] : artifacts) {
        write_file((dir / path).string(), content);
    }
    write_file((dir / "manifest.json").string(), manifest_json(cfg, command, artifacts));
}

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"Explainable expression analysis for small two-group qPCR cohorts"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    std::size_t threads = 1;

    const std::vector<std::pair<std::string, std::string>> commands = {
        {"convert", "Rewrite a Ct export and label file into the canonical CSV layout"},
        {"dge", "Differential expression table and volcano plot"},
        {"pca", "Principal components, sample correlation and clustering"},
        {"crossval", "Leave-one-out metrics for every classifier and feature set"},
        {"explain", "SHAP attributions, consensus ranking and correlation network"},
        {"pathway", "Per-pathway aggregates of the differential expression table"},
        {"synth", "Generate a synthetic two-group cohort"},
        {"report", "Run the full analysis and write every artifact"},
    };
    for (const auto& [name, description] : commands) {
        CLI::App* sub = app.add_subcommand(name, description);
        sub->add_option("--config", config_path, "JSON run configuration");
        sub->add_option("--seed", seed, "Override the config seed");
        sub->add_option("--threads", threads, "Worker threads (results are identical at any value)");
        sub->add_option("--out", out_dir, "Output directory (default: config, $CTML_OUT_DIR, or ./results)");
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        RunConfig cfg =
            config_path.empty() ? default_run_config() : load_run_config(config_path);
        CLI::App* sub = app.get_subcommands().front();
        if (sub->count("--seed") > 0) {
            cfg.seed = seed;
            cfg.synth.seed = seed;
        }
        if (sub->count("--out") > 0) cfg.out_dir = out_dir;
        if (threads == 0) threads = 1;
        cfg.validate();

        const std::string name = sub->get_name();
        ArtifactSet artifacts;
        if (name == "convert") artifacts = cmd_convert(cfg);
        else if (name == "dge") artifacts = cmd_dge(cfg);
        else if (name == "pca") artifacts = cmd_pca(cfg);
        else if (name == "crossval") artifacts = cmd_crossval(cfg, threads);
        else if (name == "explain") artifacts = cmd_explain(cfg, threads);
        else if (name == "pathway") artifacts = cmd_pathway(cfg);
        else if (name == "synth") artifacts = cmd_synth(cfg);
        else artifacts = cmd_report(cfg, threads);

        write_artifacts(cfg, name, artifacts);
        std::cout << name << ": wrote " << artifacts.size() << " artifacts + manifest.json to "
                  << (cfg.out_dir.empty() ? "results" : cfg.out_dir) << '\n';
        return 0;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what();
        if (e.row() > 0) std::cerr << " (row " << e.row() << ", column " << e.col() << ")";
        std::cerr << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace ctml
