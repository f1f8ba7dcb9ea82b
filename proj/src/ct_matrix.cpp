#include "ctml/ct_matrix.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "ctml/csv.hpp"
#include "ctml/errors.hpp"

namespace ctml {

namespace {

bool is_missing_token(const std::string& cell) {
    const std::string t = to_lower(trim(cell));
    return t.empty() || t == "undetermined" || t == "na";
}

}  // namespace

std::size_t CtMatrix::missing_count() const {
    std::size_t n = 0;
    for (const auto& row : missing_mask)
        for (bool b : row) n += b ? 1 : 0;
    return n;
}

std::size_t CtMatrix::gene_index(const std::string& name) const {
    for (std::size_t g = 0; g < gene_names.size(); ++g)
        if (gene_names[g] == name) return g;
    throw LookupError("unknown gene: " + name);
}

std::vector<double> CtMatrix::gene_values_for_label(std::size_t g, int label) const {
    std::vector<double> v;
    for (std::size_t s = 0; s < n_samples(); ++s)
        if (labels[s] == label) v.push_back(values(s, g));
    return v;
}

void CtMatrix::validate() const {
    const std::size_t s = sample_ids.size();
    const std::size_t g = gene_names.size();
    if (values.rows != s || values.cols != g)
        throw ArgumentError("CtMatrix: values shape does not match ids");
    if (labels.size() != s) throw ArgumentError("CtMatrix: labels size mismatch");
    if (missing_mask.size() != s) throw ArgumentError("CtMatrix: mask rows mismatch");
    for (const auto& row : missing_mask)
        if (row.size() != g) throw ArgumentError("CtMatrix: mask cols mismatch");
    if (std::set<std::string>(sample_ids.begin(), sample_ids.end()).size() != s)
        throw ArgumentError("CtMatrix: sample ids not unique");
    if (std::set<std::string>(gene_names.begin(), gene_names.end()).size() != g)
        throw ArgumentError("CtMatrix: gene names not unique");
}

CtMatrix parse_ct_table(const std::string& raw, Orientation orientation,
                        const std::map<std::string, int>& label_map) {
    const char delim = detect_delimiter(raw);
    const auto table = split_delimited(raw, delim);
    if (table.size() < 2) throw ParseError("ct table needs a header row and data rows");

    const std::size_t width = table[0].size();
    if (width < 2) throw ParseError("ct table needs an id column and data columns");
    for (std::size_t r = 0; r < table.size(); ++r) {
        if (table[r].size() != width)
            throw ParseError("ragged row: expected " + std::to_string(width) + " cells, got " +
                                 std::to_string(table[r].size()),
                             r + 1);
    }

    // Header cell (0,0) is an axis label and ignored.
    std::vector<std::string> col_ids(width - 1);
    for (std::size_t c = 1; c < width; ++c) col_ids[c - 1] = trim(table[0][c]);
    std::vector<std::string> row_ids(table.size() - 1);
    for (std::size_t r = 1; r < table.size(); ++r) row_ids[r - 1] = trim(table[r][0]);

    CtMatrix m;
    if (orientation == Orientation::SamplesAsRows) {
        m.sample_ids = row_ids;
        m.gene_names = col_ids;
    } else {
        m.sample_ids = col_ids;
        m.gene_names = row_ids;
    }
    const std::size_t S = m.sample_ids.size();
    const std::size_t G = m.gene_names.size();
    m.values = Matrix(S, G, std::nan(""));
    m.missing_mask.assign(S, std::vector<bool>(G, false));

    for (std::size_t r = 1; r < table.size(); ++r) {
        for (std::size_t c = 1; c < width; ++c) {
            const std::string& cell = table[r][c];
            std::size_t s, g;
            if (orientation == Orientation::SamplesAsRows) {
                s = r - 1;
                g = c - 1;
            } else {
                s = c - 1;
                g = r - 1;
            }
            if (is_missing_token(cell)) {
                m.missing_mask[s][g] = true;
                continue;
            }
            const auto num = parse_number(cell);
            if (!num)
                throw ParseError("unparseable cell '" + trim(cell) + "'", r + 1, c + 1);
            m.values(s, g) = *num;
        }
    }

    m.labels.resize(S);
    for (std::size_t s = 0; s < S; ++s) {
        const auto it = label_map.find(m.sample_ids[s]);
        if (it == label_map.end())
            throw ArgumentError("sample id not in label map: " + m.sample_ids[s]);
        m.labels[s] = it->second;
    }
    m.validate();
    return m;
}

std::string serialize_ct_table(const CtMatrix& m) {
    std::ostringstream out;
    out << "sample_id";
    for (const auto& g : m.gene_names) out << ',' << g;
    out << '\n';
    for (std::size_t s = 0; s < m.n_samples(); ++s) {
        out << m.sample_ids[s];
        for (std::size_t g = 0; g < m.n_genes(); ++g) {
            out << ',';
            if (m.missing_mask[s][g] && std::isnan(m.values(s, g)))
                out << "Undetermined";
            else
                out << format_exact(m.values(s, g));
        }
        out << '\n';
    }
    return out.str();
}

CtMatrix impute_undetermined(const CtMatrix& m, double value) {
    CtMatrix out = m;
    for (std::size_t s = 0; s < out.n_samples(); ++s)
        for (std::size_t g = 0; g < out.n_genes(); ++g)
            if (out.missing_mask[s][g] && std::isnan(out.values(s, g)))
                out.values(s, g) = value;
    return out;
}

std::map<std::string, int> parse_label_file(const std::string& raw) {
    const char delim = detect_delimiter(raw);
    const auto table = split_delimited(raw, delim);
    std::map<std::string, int> labels;
    for (std::size_t r = 0; r < table.size(); ++r) {
        const auto& row = table[r];
        if (row.size() != 2)
            throw ParseError("label file rows must be sample_id,label", r + 1);
        const std::string id = trim(row[0]);
        const std::string tok = to_lower(trim(row[1]));
        if (r == 0 && (tok == "label" || tok == "class")) continue;  // header
        int label;
        if (tok == "0" || tok == "ground")
            label = kGroundControl;
        else if (tok == "1" || tok == "flight")
            label = kFlight;
        else
            throw ParseError("unknown label '" + tok + "' (want 0/1/ground/flight)", r + 1);
        if (!labels.emplace(id, label).second)
            throw ParseError("duplicate sample id in label file: " + id, r + 1);
    }
    if (labels.empty()) throw ParseError("label file is empty");
    return labels;
}

std::string serialize_label_file(const CtMatrix& m) {
    std::ostringstream out;
    out << "sample_id,label\n";
    for (std::size_t s = 0; s < m.n_samples(); ++s)
        out << m.sample_ids[s] << ',' << m.labels[s] << '\n';
    return out.str();
}

}  // namespace ctml
