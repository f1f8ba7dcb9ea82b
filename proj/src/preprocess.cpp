#include "ctml/preprocess.hpp"

#include <algorithm>
#include <cmath>

#include "ctml/errors.hpp"
#include "ctml/stats.hpp"

namespace ctml {

namespace {
constexpr double kSdFloor = 1e-12;
}

Standardization fit_standardization(const Matrix& x) {
    Standardization st;
    const std::size_t f = x.cols;
    st.means.resize(f);
    st.sds.resize(f);
    st.constant.resize(f);
    for (std::size_t c = 0; c < f; ++c) {
        const auto col = x.col(c);
        st.means[c] = mean(col);
        const double sd = std::sqrt(population_variance(col));
        st.constant[c] = sd < kSdFloor;
        st.sds[c] = std::max(sd, kSdFloor);
    }
    return st;
}

Matrix apply_standardization(const Matrix& x, const Standardization& st) {
    if (x.cols != st.size())
        throw ArgumentError("standardization record has wrong width");
    Matrix out(x.rows, x.cols);
    for (std::size_t c = 0; c < x.cols; ++c) {
        for (std::size_t r = 0; r < x.rows; ++r) {
            out(r, c) = st.constant[c] ? 0.0 : (x(r, c) - st.means[c]) / st.sds[c];
        }
    }
    return out;
}

FeatureMatrix standardize(const CtMatrix& m, const std::optional<Standardization>& fitted) {
    for (std::size_t s = 0; s < m.n_samples(); ++s)
        for (std::size_t g = 0; g < m.n_genes(); ++g)
            if (std::isnan(m.values(s, g)))
                throw ArgumentError("standardize: matrix has unimputed cells");
    FeatureMatrix fm;
    fm.feature_names = m.gene_names;
    fm.standardization = fitted ? *fitted : fit_standardization(m.values);
    fm.values = apply_standardization(m.values, fm.standardization);
    return fm;
}

std::vector<std::string> select_top_k(const CtMatrix& m, std::size_t k) {
    if (k > m.n_genes())
        throw ArgumentError("select_top_k: k exceeds gene count");
    bool has0 = false, has1 = false;
    for (int l : m.labels) (l == kFlight ? has1 : has0) = true;
    if (!has0 || !has1)
        throw ArgumentError("select_top_k: both classes must be non-empty");

    std::vector<std::pair<double, std::string>> ranked(m.n_genes());
    for (std::size_t g = 0; g < m.n_genes(); ++g) {
        const auto flight = m.gene_values_for_label(g, kFlight);
        const auto ground = m.gene_values_for_label(g, kGroundControl);
        ranked[g] = {welch_t(flight, ground).p, m.gene_names[g]};
    }
    std::sort(ranked.begin(), ranked.end());
    std::vector<std::string> out(k);
    for (std::size_t i = 0; i < k; ++i) out[i] = ranked[i].second;
    return out;
}

CtMatrix subset_genes(const CtMatrix& m, const std::vector<std::string>& names) {
    CtMatrix out;
    out.sample_ids = m.sample_ids;
    out.labels = m.labels;
    out.gene_names = names;
    out.values = Matrix(m.n_samples(), names.size());
    out.missing_mask.assign(m.n_samples(), std::vector<bool>(names.size(), false));
    for (std::size_t j = 0; j < names.size(); ++j) {
        const std::size_t g = m.gene_index(names[j]);
        for (std::size_t s = 0; s < m.n_samples(); ++s) {
            out.values(s, j) = m.values(s, g);
            out.missing_mask[s][j] = m.missing_mask[s][g];
        }
    }
    return out;
}

}  // namespace ctml
