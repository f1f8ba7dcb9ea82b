#pragma once

#include <map>
#include <string>
#include <vector>

#include "ctml/ct_matrix.hpp"

namespace ctml {

enum class Regulation { Up, Down, NotSignificant };

std::string to_string(Regulation r);

struct WelchResult {
    double t;
    double df;
    double p;
};

/// Two-sample Welch's t-test with N-1 sample variances and
/// Welch-Satterthwaite degrees of freedom. Degenerate convention: both
/// variances zero gives t=0, p=1 for equal means and p=0 otherwise.
WelchResult welch_t(const std::vector<double>& a, const std::vector<double>& b);

/// Per-gene differential-expression result. fold_change = 2^(-ddct);
/// log2_fc = -ddct. q_value/regulation are filled by the callers that run
/// bh_fdr and classify_regulation.
struct DgeRecord {
    std::string gene;
    double mean_ct_group0 = 0.0;  // ground control
    double mean_ct_group1 = 0.0;  // flight
    double sd_ct_group0 = 0.0;
    double sd_ct_group1 = 0.0;
    double delta_delta_ct = 0.0;
    double fold_change = 1.0;
    double log2_fc = 0.0;
    double t_stat = 0.0;
    double welch_df = 0.0;
    double p_value = 1.0;
    double q_value = 1.0;
    Regulation regulation = Regulation::NotSignificant;
};

/// ddCt per gene: dCt centers each gene at its all-sample mean, so ddCt
/// equals the flight-minus-ground mean Ct difference. Welch test runs on
/// the raw per-group Ct values. q_value and regulation are left unset.
std::vector<DgeRecord> delta_delta_ct(const CtMatrix& m);

/// Benjamini-Hochberg step-up q-values, returned in input order.
std::vector<double> bh_fdr(const std::vector<double>& p);

struct RegulationThresholds {
    double fc_up = 1.5;
    double fc_down = 0.67;
    double alpha = 0.05;  // applied to the nominal p, not q
};

Regulation classify_regulation(const DgeRecord& r, const RegulationThresholds& th = {});

/// Runs delta_delta_ct, bh_fdr and classify_regulation in one pass.
std::vector<DgeRecord> dge_table(const CtMatrix& m, const RegulationThresholds& th = {});

struct GeneSummary {
    std::string gene;
    double mean_ground, sd_ground;
    double mean_flight, sd_flight;
    std::size_t n_ground, n_flight;
    double delta_delta_ct;
    double fold_change;
    double p_value;
};

/// Per-group statistics for a single gene (the per-gene deep-dive view).
GeneSummary gene_summary(const CtMatrix& m, const std::string& gene);

/// Gene -> pathway category map. Unannotated genes fall into "Other".
struct PathwayAnnotation {
    std::map<std::string, std::string> category;

    static const std::vector<std::string>& known_categories();
    /// Parses CSV `gene,category`; header row permitted.
    static PathwayAnnotation parse(const std::string& csv_text);
    std::string category_of(const std::string& gene) const;
};

struct PathwayRow {
    std::string pathway;
    std::size_t gene_count = 0;
    double mean_fc = 0.0;
    double max_fc = 0.0;
    double min_p = 1.0;
    double mean_log2_fc = 0.0;
};

/// Descriptive per-category aggregates; empty categories are omitted.
/// Rows are ordered by the canonical category list.
std::vector<PathwayRow> pathway_summary(const std::vector<DgeRecord>& records,
                                        const PathwayAnnotation& ann);

}  // namespace ctml
