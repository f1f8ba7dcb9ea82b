#include "ctml/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "ctml/csv.hpp"
#include "ctml/errors.hpp"
#include "ctml/matrix.hpp"
#include "ctml/special.hpp"

namespace ctml {

std::string to_string(Regulation r) {
    switch (r) {
        case Regulation::Up: return "UP";
        case Regulation::Down: return "DOWN";
        case Regulation::NotSignificant: return "NS";
    }
    throw ContractError("unreachable regulation value");
}

WelchResult welch_t(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() < 2 || b.size() < 2) {
        throw ArgumentError("welch_t requires at least two values per group");
    }
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    const double ma = mean(a);
    const double mb = mean(b);
    const double va = sample_variance(a);
    const double vb = sample_variance(b);
    const double se2 = va / na + vb / nb;

    if (se2 == 0.0) {
        // Both groups are constant. Equal means carry no evidence; unequal
        // means are separated with certainty.
        if (ma == mb) {
            return {0.0, na + nb - 2.0, 1.0};
        }
        const double inf = std::numeric_limits<double>::infinity();
        return {ma > mb ? inf : -inf, na + nb - 2.0, 0.0};
    }

    const double t = (ma - mb) / std::sqrt(se2);
    const double ra = va / na;
    const double rb = vb / nb;
    const double df = se2 * se2 / (ra * ra / (na - 1.0) + rb * rb / (nb - 1.0));
    return {t, df, student_t_two_sided(t, df)};
}

namespace {

struct GroupStats {
    std::vector<double> values;
    double mean = 0.0;
    double sd = 0.0;
};

GroupStats group_stats(const CtMatrix& m, std::size_t gene, int label) {
    GroupStats g;
    g.values = m.gene_values_for_label(gene, label);
    if (!g.values.empty()) {
        g.mean = mean(g.values);
        g.sd = g.values.size() > 1 ? std::sqrt(sample_variance(g.values)) : 0.0;
    }
    return g;
}

void require_imputed(const CtMatrix& m) {
    for (std::size_t s = 0; s < m.n_samples(); ++s) {
        for (std::size_t g = 0; g < m.n_genes(); ++g) {
            if (std::isnan(m.values(s, g))) {
                throw ArgumentError("Ct matrix contains missing values; impute first");
            }
        }
    }
}

}  // namespace

std::vector<DgeRecord> delta_delta_ct(const CtMatrix& m) {
    require_imputed(m);
    const auto n_ground = std::count(m.labels.begin(), m.labels.end(), kGroundControl);
    const auto n_flight = std::count(m.labels.begin(), m.labels.end(), kFlight);
    if (n_ground == 0 || n_flight == 0) {
        throw ArgumentError("delta_delta_ct requires samples in both classes");
    }

    std::vector<DgeRecord> out;
    out.reserve(m.n_genes());
    for (std::size_t g = 0; g < m.n_genes(); ++g) {
        const GroupStats ground = group_stats(m, g, kGroundControl);
        const GroupStats flight = group_stats(m, g, kFlight);

        DgeRecord r;
        r.gene = m.gene_names[g];
        r.mean_ct_group0 = ground.mean;
        r.mean_ct_group1 = flight.mean;
        r.sd_ct_group0 = ground.sd;
        r.sd_ct_group1 = flight.sd;
        // dCt subtracts the per-gene all-sample mean, a constant shift, so
        // ddCt collapses to the flight-minus-ground mean Ct difference.
        r.delta_delta_ct = flight.mean - ground.mean;
        r.fold_change = std::exp2(-r.delta_delta_ct);
        r.log2_fc = -r.delta_delta_ct;
        const WelchResult w = welch_t(flight.values, ground.values);
        r.t_stat = w.t;
        r.welch_df = w.df;
        r.p_value = w.p;
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<double> bh_fdr(const std::vector<double>& p) {
    for (double v : p) {
        if (!(v >= 0.0 && v <= 1.0)) {
            throw ArgumentError("bh_fdr requires p-values in [0, 1]");
        }
    }
    const std::size_t m = p.size();
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return p[i] < p[j]; });

    std::vector<double> q(m, 0.0);
    double running = 1.0;
    for (std::size_t k = m; k-- > 0;) {
        const double rank = static_cast<double>(k + 1);
        running = std::min(running, p[order[k]] * static_cast<double>(m) / rank);
        q[order[k]] = running;
    }
    return q;
}

Regulation classify_regulation(const DgeRecord& r, const RegulationThresholds& th) {
    if (r.p_value < th.alpha) {
        if (r.fold_change > th.fc_up) return Regulation::Up;
        if (r.fold_change < th.fc_down) return Regulation::Down;
    }
    return Regulation::NotSignificant;
}

std::vector<DgeRecord> dge_table(const CtMatrix& m, const RegulationThresholds& th) {
    std::vector<DgeRecord> records = delta_delta_ct(m);
    std::vector<double> p;
    p.reserve(records.size());
    for (const auto& r : records) p.push_back(r.p_value);
    const std::vector<double> q = bh_fdr(p);
    for (std::size_t i = 0; i < records.size(); ++i) {
        records[i].q_value = q[i];
        records[i].regulation = classify_regulation(records[i], th);
    }
    return records;
}

GeneSummary gene_summary(const CtMatrix& m, const std::string& gene) {
    const std::size_t g = m.gene_index(gene);
    const GroupStats ground = group_stats(m, g, kGroundControl);
    const GroupStats flight = group_stats(m, g, kFlight);

    GeneSummary s;
    s.gene = gene;
    s.mean_ground = ground.mean;
    s.sd_ground = ground.sd;
    s.mean_flight = flight.mean;
    s.sd_flight = flight.sd;
    s.n_ground = ground.values.size();
    s.n_flight = flight.values.size();
    s.delta_delta_ct = flight.mean - ground.mean;
    s.fold_change = std::exp2(-s.delta_delta_ct);
    s.p_value = welch_t(flight.values, ground.values).p;
    return s;
}

const std::vector<std::string>& PathwayAnnotation::known_categories() {
    static const std::vector<std::string> kCategories = {
        "Thermogenesis", "Adipogenesis", "TranscriptionRegulation",
        "Signaling",     "Metabolism",   "Other",
    };
    return kCategories;
}

PathwayAnnotation PathwayAnnotation::parse(const std::string& csv_text) {
    PathwayAnnotation ann;
    const auto& categories = known_categories();
    const auto table = split_delimited(csv_text, ',');
    for (std::size_t i = 0; i < table.size(); ++i) {
        const std::vector<std::string>& cells = table[i];
        const std::size_t row = i + 1;
        if (cells.empty() || (cells.size() == 1 && trim(cells[0]).empty())) continue;
        if (cells.size() != 2) {
            throw ParseError("annotation row needs exactly two columns", row, 0);
        }
        const std::string gene = trim(cells[0]);
        const std::string category = trim(cells[1]);
        if (row == 1 && to_lower(gene) == "gene") continue;
        if (std::find(categories.begin(), categories.end(), category) == categories.end()) {
            throw ParseError("unknown pathway category '" + category + "'", row, 2);
        }
        if (!ann.category.emplace(gene, category).second) {
            throw ParseError("gene '" + gene + "' annotated twice", row, 1);
        }
    }
    return ann;
}

std::string PathwayAnnotation::category_of(const std::string& gene) const {
    const auto it = category.find(gene);
    return it == category.end() ? "Other" : it->second;
}

std::vector<PathwayRow> pathway_summary(const std::vector<DgeRecord>& records,
                                        const PathwayAnnotation& ann) {
    std::map<std::string, PathwayRow> rows;
    for (const auto& r : records) {
        const std::string cat = ann.category_of(r.gene);
        PathwayRow& row = rows[cat];
        if (row.gene_count == 0) {
            row.pathway = cat;
            row.max_fc = r.fold_change;
            row.min_p = r.p_value;
        } else {
            row.max_fc = std::max(row.max_fc, r.fold_change);
            row.min_p = std::min(row.min_p, r.p_value);
        }
        ++row.gene_count;
        row.mean_fc += r.fold_change;
        row.mean_log2_fc += r.log2_fc;
    }
    std::vector<PathwayRow> out;
    for (const std::string& cat : PathwayAnnotation::known_categories()) {
        const auto it = rows.find(cat);
        if (it == rows.end()) continue;
        PathwayRow row = it->second;
        row.mean_fc /= static_cast<double>(row.gene_count);
        row.mean_log2_fc /= static_cast<double>(row.gene_count);
        out.push_back(std::move(row));
    }
    return out;
}

}  // namespace ctml
