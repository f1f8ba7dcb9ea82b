#pragma once

#include <map>
#include <string>
#include <vector>

#include "ctml/matrix.hpp"

namespace ctml {

/// Class labels: ground control = 0, flight = 1.
constexpr int kGroundControl = 0;
constexpr int kFlight = 1;

enum class Orientation { GenesAsRows, SamplesAsRows };

/// Samples x genes table of qPCR cycle-threshold values.
///
/// Missing cells (instrument "Undetermined") hold NaN until imputation and
/// are tracked in missing_mask; the mask is kept after imputation as an
/// audit trail of which cells were filled.
struct CtMatrix {
    std::vector<std::string> sample_ids;
    std::vector<std::string> gene_names;
    std::vector<int> labels;  // per sample, kGroundControl or kFlight
    Matrix values;            // S x G
    std::vector<std::vector<bool>> missing_mask;  // S x G

    std::size_t n_samples() const { return sample_ids.size(); }
    std::size_t n_genes() const { return gene_names.size(); }
    std::size_t missing_count() const;
    std::size_t gene_index(const std::string& name) const;  // throws LookupError

    std::vector<double> gene_values(std::size_t g) const { return values.col(g); }
    /// Values of gene g restricted to samples with the given label.
    std::vector<double> gene_values_for_label(std::size_t g, int label) const;

    void validate() const;  // throws ArgumentError on shape/uniqueness violations
};

/// Parses delimited text (comma or tab, auto-detected from the header row)
/// into a samples-as-rows CtMatrix. The first column holds gene or sample
/// identifiers per `orientation`. Cells equal to "Undetermined"/"NA"
/// (case-insensitive) or empty are marked missing. Every sample id must
/// appear in label_map.
CtMatrix parse_ct_table(const std::string& raw, Orientation orientation,
                        const std::map<std::string, int>& label_map);

/// Canonical CSV serialization: samples as rows, header row of gene names,
/// first column sample_id. Numeric cells use exact round-trip formatting;
/// missing cells are written as "Undetermined" so that parse(serialize(m))
/// reproduces m.
std::string serialize_ct_table(const CtMatrix& m);

/// Replaces every missing cell by `value` (default Ct = 40). All other
/// cells are untouched; missing_mask is preserved for audit. Idempotent.
CtMatrix impute_undetermined(const CtMatrix& m, double value = 40.0);

/// Parses a two-column CSV `sample_id,label` with labels in {0,1} or
/// {ground,flight} (case-insensitive). A header row is permitted.
std::map<std::string, int> parse_label_file(const std::string& raw);

std::string serialize_label_file(const CtMatrix& m);

}  // namespace ctml
