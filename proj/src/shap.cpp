#include "ctml/shap.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "ctml/errors.hpp"
#include "ctml/parallel.hpp"

namespace ctml {

namespace {

// One element of the feature path maintained during traversal: d is the
// split feature, z the fraction of background paths that flow through when
// the feature is excluded, o the indicator (1/0) when it is included, and w
// the accumulated permutation weight.
struct PathElement {
    int d;
    double z;
    double o;
    double w;
};

void extend(std::vector<PathElement>& m, double pz, double po, int pi) {
    const int l = static_cast<int>(m.size());
    m.push_back({pi, pz, po, l == 0 ? 1.0 : 0.0});
    for (int i = l - 1; i >= 0; --i) {
        m[i + 1].w += po * m[i].w * (i + 1.0) / (l + 1.0);
        m[i].w = pz * m[i].w * static_cast<double>(l - i) / (l + 1.0);
    }
}

void unwind(std::vector<PathElement>& m, int index) {
    const int length = static_cast<int>(m.size());
    double n = m[length - 1].w;
    const double one_z = m[index].z;
    const double one_o = m[index].o;
    for (int j = length - 2; j >= 0; --j) {
        if (one_o != 0.0) {
            const double t = m[j].w;
            m[j].w = n * length / ((j + 1.0) * one_o);
            n = t - m[j].w * one_z * (length - 1.0 - j) / length;
        } else {
            m[j].w = m[j].w * length / (one_z * (length - 1.0 - j));
        }
    }
    for (int j = index; j < length - 1; ++j) {
        m[j].d = m[j + 1].d;
        m[j].z = m[j + 1].z;
        m[j].o = m[j + 1].o;
    }
    m.pop_back();
}

double unwound_sum(const std::vector<PathElement>& m, int index) {
    std::vector<PathElement> copy = m;
    unwind(copy, index);
    double total = 0.0;
    for (const PathElement& e : copy) total += e.w;
    return total;
}

void recurse(const Tree& tree, const double* x, std::vector<PathElement> m, int node,
             double pz, double po, int pi, std::vector<double>& phi) {
    extend(m, pz, po, pi);
    const TreeNode& n = tree.nodes[static_cast<std::size_t>(node)];
    if (n.is_leaf()) {
        for (int i = 1; i < static_cast<int>(m.size()); ++i) {
            phi[static_cast<std::size_t>(m[i].d)] +=
                unwound_sum(m, i) * (m[i].o - m[i].z) * n.value;
        }
        return;
    }

    const int hot = x[n.feature] <= n.threshold ? n.left : n.right;
    const int cold = hot == n.left ? n.right : n.left;
    double incoming_z = 1.0;
    double incoming_o = 1.0;
    for (int k = 0; k < static_cast<int>(m.size()); ++k) {
        if (m[k].d == n.feature) {
            incoming_z = m[k].z;
            incoming_o = m[k].o;
            unwind(m, k);
            break;
        }
    }
    const double cover = n.cover;
    const double hot_cover = tree.nodes[static_cast<std::size_t>(hot)].cover;
    const double cold_cover = tree.nodes[static_cast<std::size_t>(cold)].cover;
    recurse(tree, x, m, hot, incoming_z * hot_cover / cover, incoming_o, n.feature, phi);
    recurse(tree, x, m, cold, incoming_z * cold_cover / cover, 0.0, n.feature, phi);
}

double expected_value(const Tree& tree, int node) {
    const TreeNode& n = tree.nodes[static_cast<std::size_t>(node)];
    if (n.is_leaf()) return n.value;
    const double left_cover = tree.nodes[static_cast<std::size_t>(n.left)].cover;
    const double right_cover = tree.nodes[static_cast<std::size_t>(n.right)].cover;
    return (left_cover * expected_value(tree, n.left) +
            right_cover * expected_value(tree, n.right)) /
           (left_cover + right_cover);
}

void check_features(const Tree& tree, std::size_t n_features) {
    for (const TreeNode& n : tree.nodes) {
        if (!n.is_leaf() && static_cast<std::size_t>(n.feature) >= n_features) {
            throw ContractError("tree splits on a feature outside the given range");
        }
    }
}

// Cover-weighted conditional expectation given the coalition of known
// features (bitmask).
double coalition_value(const Tree& tree, int node, const double* x, std::uint32_t known) {
    const TreeNode& n = tree.nodes[static_cast<std::size_t>(node)];
    if (n.is_leaf()) return n.value;
    if (known >> n.feature & 1u) {
        return coalition_value(tree, x[n.feature] <= n.threshold ? n.left : n.right, x,
                               known);
    }
    const double left_cover = tree.nodes[static_cast<std::size_t>(n.left)].cover;
    const double right_cover = tree.nodes[static_cast<std::size_t>(n.right)].cover;
    return (left_cover * coalition_value(tree, n.left, x, known) +
            right_cover * coalition_value(tree, n.right, x, known)) /
           (left_cover + right_cover);
}

}  // namespace

ShapResult tree_shap_single(const Tree& tree, const double* x, std::size_t n_features) {
    check_features(tree, n_features);
    ShapResult out;
    out.phi.assign(n_features, 0.0);
    recurse(tree, x, {}, 0, 1.0, 1.0, -1, out.phi);
    out.base_value = expected_value(tree, 0);
    return out;
}

ShapResult brute_shap_single(const Tree& tree, const double* x, std::size_t n_features) {
    if (n_features > 20) {
        throw ArgumentError("brute-force Shapley enumeration is limited to 20 features");
    }
    check_features(tree, n_features);

    const std::uint32_t n_masks = 1u << n_features;
    std::vector<double> value(n_masks);
    for (std::uint32_t mask = 0; mask < n_masks; ++mask) {
        value[mask] = coalition_value(tree, 0, x, mask);
    }

    // Shapley weight |S|!(F-|S|-1)!/F! expressed as 1/(F * C(F-1, |S|)).
    const double f = static_cast<double>(n_features);
    std::vector<double> weight(n_features);
    double binom = 1.0;  // C(F-1, s)
    for (std::size_t s = 0; s < n_features; ++s) {
        weight[s] = 1.0 / (f * binom);
        binom = binom * static_cast<double>(n_features - 1 - s) / static_cast<double>(s + 1);
    }

    ShapResult out;
    out.phi.assign(n_features, 0.0);
    out.base_value = value[0];
    for (std::size_t i = 0; i < n_features; ++i) {
        const std::uint32_t bit = 1u << i;
        for (std::uint32_t mask = 0; mask < n_masks; ++mask) {
            if (mask & bit) continue;
            const int subset_size = std::popcount(mask);
            out.phi[i] += weight[static_cast<std::size_t>(subset_size)] *
                          (value[mask | bit] - value[mask]);
        }
    }
    return out;
}

namespace {

template <typename ShapFn>
ShapResult aggregate(const std::vector<Tree>& trees, bool average, double base_offset,
                     std::size_t n_features, const ShapFn& shap_one) {
    if (trees.empty()) throw ArgumentError("ensemble has no trees");
    ShapResult total;
    total.phi.assign(n_features, 0.0);
    total.base_value = base_offset;
    for (const Tree& t : trees) {
        const ShapResult one = shap_one(t);
        for (std::size_t i = 0; i < n_features; ++i) total.phi[i] += one.phi[i];
        total.base_value += one.base_value;
    }
    if (average) {
        const double n = static_cast<double>(trees.size());
        for (double& v : total.phi) v /= n;
        total.base_value /= n;
    }
    return total;
}

}  // namespace

ShapResult tree_shap(const RandomForest& rf, const double* x, std::size_t n_features) {
    return aggregate(rf.trees, true, 0.0, n_features,
                     [&](const Tree& t) { return tree_shap_single(t, x, n_features); });
}

ShapResult tree_shap(const GradientBoostedTrees& gbt, const double* x,
                     std::size_t n_features) {
    return aggregate(gbt.trees, false, gbt.base_score, n_features,
                     [&](const Tree& t) { return tree_shap_single(t, x, n_features); });
}

ShapResult brute_shap(const RandomForest& rf, const double* x, std::size_t n_features) {
    return aggregate(rf.trees, true, 0.0, n_features,
                     [&](const Tree& t) { return brute_shap_single(t, x, n_features); });
}

ShapResult brute_shap(const GradientBoostedTrees& gbt, const double* x,
                      std::size_t n_features) {
    return aggregate(gbt.trees, false, gbt.base_score, n_features,
                     [&](const Tree& t) { return brute_shap_single(t, x, n_features); });
}

ShapAttribution shap_attribution(const TrainedClassifier& c, const FeatureMatrix& x,
                                 std::size_t n_threads) {
    if (x.feature_names != c.feature_names) {
        throw ContractError("feature names differ from the training features");
    }
    if (c.kind != ClassifierKind::RandomForest &&
        c.kind != ClassifierKind::GradientBoostedTrees) {
        throw ArgumentError("attributions are defined only for tree ensembles");
    }
    if (c.degenerate) {
        ShapAttribution flat;
        flat.feature_names = x.feature_names;
        flat.phi = Matrix(x.values.rows, x.values.cols);
        flat.base_value = c.kind == ClassifierKind::RandomForest
                              ? (c.degenerate_class == 1 ? 1.0 : 0.0)
                              : 0.0;
        return flat;
    }

    const std::size_t s = x.values.rows;
    const std::size_t f = x.values.cols;
    ShapAttribution out;
    out.feature_names = x.feature_names;
    out.phi = Matrix(s, f);
    parallel_for(s, n_threads, [&](std::size_t i) {
        const double* row = x.values.data.data() + i * f;
        const ShapResult r = c.kind == ClassifierKind::RandomForest
                                 ? tree_shap(c.rf, row, f)
                                 : tree_shap(c.gbt, row, f);
        for (std::size_t j = 0; j < f; ++j) out.phi(i, j) = r.phi[j];
        if (i == 0) out.base_value = r.base_value;
    });
    return out;
}

std::vector<ShapSummaryEntry> shap_summary(const ShapAttribution& a) {
    const std::size_t s = a.phi.rows;
    const std::size_t f = a.phi.cols;
    std::vector<ShapSummaryEntry> entries(f);
    for (std::size_t j = 0; j < f; ++j) {
        double total = 0.0;
        for (std::size_t i = 0; i < s; ++i) total += std::abs(a.phi(i, j));
        entries[j].feature = a.feature_names[j];
        entries[j].mean_abs_phi = s == 0 ? 0.0 : total / static_cast<double>(s);
    }
    std::sort(entries.begin(), entries.end(),
              [](const ShapSummaryEntry& x, const ShapSummaryEntry& y) {
                  if (x.mean_abs_phi != y.mean_abs_phi) return x.mean_abs_phi > y.mean_abs_phi;
                  return x.feature < y.feature;
              });
    return entries;
}

std::vector<ConsensusRecord> consensus_rank(const std::vector<ImportanceSource>& sources,
                                            const std::vector<DgeRecord>& dge) {
    if (sources.empty()) throw ArgumentError("consensus needs at least one source");
    const auto& reference = sources.front().scores;
    if (reference.empty()) throw ArgumentError("consensus sources must not be empty");
    for (const ImportanceSource& src : sources) {
        if (src.scores.size() != reference.size()) {
            throw ContractError("importance sources cover different gene sets");
        }
        for (const auto& [gene, score] : reference) {
            (void)score;
            if (src.scores.find(gene) == src.scores.end()) {
                throw ContractError("importance sources cover different gene sets");
            }
        }
    }

    std::map<std::string, const DgeRecord*> dge_by_gene;
    for (const DgeRecord& r : dge) dge_by_gene[r.gene] = &r;

    std::vector<ConsensusRecord> records;
    for (const auto& [gene, score] : reference) {
        (void)score;
        const auto it = dge_by_gene.find(gene);
        if (it == dge_by_gene.end()) {
            throw ContractError("gene '" + gene + "' missing from the DGE records");
        }
        ConsensusRecord rec;
        rec.gene = gene;
        rec.fold_change = it->second->fold_change;
        rec.regulation = it->second->regulation;
        records.push_back(std::move(rec));
    }

    for (const ImportanceSource& src : sources) {
        double lo = src.scores.begin()->second;
        double hi = lo;
        for (const auto& [gene, value] : src.scores) {
            (void)gene;
            lo = std::min(lo, value);
            hi = std::max(hi, value);
        }
        const double span = hi - lo;
        for (ConsensusRecord& rec : records) {
            const double raw = src.scores.at(rec.gene);
            rec.source_scores.push_back(span > 0.0 ? (raw - lo) / span : 0.0);
        }
    }
    for (ConsensusRecord& rec : records) {
        double total = 0.0;
        for (double v : rec.source_scores) total += v;
        rec.consensus = total / static_cast<double>(rec.source_scores.size());
    }
    std::sort(records.begin(), records.end(),
              [](const ConsensusRecord& a, const ConsensusRecord& b) {
                  if (a.consensus != b.consensus) return a.consensus > b.consensus;
                  return a.gene < b.gene;
              });
    return records;
}

}  // namespace ctml
