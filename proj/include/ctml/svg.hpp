#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ctml/decomp.hpp"
#include "ctml/eval.hpp"
#include "ctml/shap.hpp"
#include "ctml/stats.hpp"

namespace ctml {

/// Minimal data-faithful plots: axes, points, labels, threshold guides.
/// Every plot has a sibling CSV, so these favor fidelity over styling.

std::string svg_volcano(const std::vector<DgeRecord>& records,
                        const RegulationThresholds& thresholds);

std::string svg_pca_scatter(const PcaResult& pca, const std::vector<std::string>& sample_ids,
                            const std::vector<int>& labels);

/// One pooled ROC curve per named model, with the chance diagonal.
std::string svg_roc(const std::vector<std::pair<std::string, std::vector<RocPoint>>>& curves);

std::string svg_shap_bar(const std::vector<ShapSummaryEntry>& entries, std::size_t top_n,
                         const std::string& title);

/// Correlation network on a circular layout; edge width scales with |r|,
/// dashed edges mark negative correlations.
std::string svg_network(const std::vector<std::string>& nodes,
                        const std::vector<NetworkEdge>& edges);

}  // namespace ctml
