#include "ctml/decomp.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <tuple>
#include <utility>

#include "ctml/errors.hpp"

namespace ctml {

namespace {

using EigenRowMajor =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

EigenRowMajor to_eigen(const Matrix& m) {
    return Eigen::Map<const EigenRowMajor>(m.data.data(),
                                           static_cast<Eigen::Index>(m.rows),
                                           static_cast<Eigen::Index>(m.cols));
}

Matrix from_eigen(const Eigen::MatrixXd& e) {
    Matrix m(static_cast<std::size_t>(e.rows()), static_cast<std::size_t>(e.cols()));
    for (Eigen::Index i = 0; i < e.rows(); ++i) {
        for (Eigen::Index j = 0; j < e.cols(); ++j) {
            m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = e(i, j);
        }
    }
    return m;
}

}  // namespace

PcaResult pca(const FeatureMatrix& x, std::size_t n_components) {
    const std::size_t s = x.values.rows;
    const std::size_t f = x.values.cols;
    if (s < 2) throw ArgumentError("pca requires at least two samples");
    const std::size_t max_components = std::min(s - 1, f);
    if (n_components == 0 || n_components > max_components) {
        throw ArgumentError("n_components must be in [1, min(S-1, F)]");
    }

    EigenRowMajor data = to_eigen(x.values);
    const Eigen::RowVectorXd column_means = data.colwise().mean();
    data.rowwise() -= column_means;

    Eigen::BDCSVD<Eigen::MatrixXd> svd(data, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd& sigma = svd.singularValues();

    double total = 0.0;
    for (Eigen::Index i = 0; i < sigma.size(); ++i) total += sigma(i) * sigma(i);

    Eigen::MatrixXd loadings = svd.matrixV().leftCols(static_cast<Eigen::Index>(n_components));
    for (Eigen::Index c = 0; c < loadings.cols(); ++c) {
        Eigen::Index peak = 0;
        loadings.col(c).cwiseAbs().maxCoeff(&peak);
        if (loadings(peak, c) < 0.0) loadings.col(c) = -loadings.col(c);
    }

    PcaResult out;
    out.components = from_eigen(loadings);
    out.scores = from_eigen(data * loadings);
    out.explained_variance_ratio.reserve(n_components);
    for (std::size_t i = 0; i < n_components; ++i) {
        const double s2 = sigma(static_cast<Eigen::Index>(i)) * sigma(static_cast<Eigen::Index>(i));
        out.explained_variance_ratio.push_back(total > 0.0 ? s2 / total : 0.0);
    }
    return out;
}

CorrelationMatrix correlation_matrix(const Matrix& values,
                                     const std::vector<std::string>& names,
                                     CorrelationAxis axis) {
    const bool by_rows = axis == CorrelationAxis::Samples;
    const std::size_t n = by_rows ? values.rows : values.cols;
    const std::size_t n_obs = by_rows ? values.cols : values.rows;
    if (names.size() != n) {
        throw ArgumentError("name count does not match the requested axis");
    }
    if (n_obs < 3) {
        throw ArgumentError("correlation needs at least three observations per entity");
    }

    std::vector<std::vector<double>> centered(n, std::vector<double>(n_obs));
    std::vector<double> norms(n);
    CorrelationMatrix out;
    out.names = names;
    out.constant.assign(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> v = by_rows ? values.row(i) : values.col(i);
        const double mu = mean(v);
        double ss = 0.0;
        for (std::size_t k = 0; k < n_obs; ++k) {
            centered[i][k] = v[k] - mu;
            ss += centered[i][k] * centered[i][k];
        }
        norms[i] = std::sqrt(ss);
        out.constant[i] = norms[i] == 0.0;
    }

    out.r = Matrix(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        out.r(i, i) = 1.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            double rij = 0.0;
            if (!out.constant[i] && !out.constant[j]) {
                double dot = 0.0;
                for (std::size_t k = 0; k < n_obs; ++k) dot += centered[i][k] * centered[j][k];
                rij = dot / (norms[i] * norms[j]);
                rij = std::clamp(rij, -1.0, 1.0);
            }
            out.r(i, j) = rij;
            out.r(j, i) = rij;
        }
    }
    return out;
}

namespace {

struct Cluster {
    std::size_t id;                    // smallest member index, for tie-breaks
    std::vector<std::size_t> members;
    std::vector<std::size_t> merge_history;  // indices into Dendrogram::merges
};

void collect_leaves(const std::vector<std::vector<std::size_t>>& children,
                    std::size_t node, std::size_t n_points,
                    std::vector<std::size_t>& order) {
    if (node < n_points) {
        order.push_back(node);
        return;
    }
    const std::size_t m = node - n_points;
    collect_leaves(children, children[m][0], n_points, order);
    collect_leaves(children, children[m][1], n_points, order);
}

}  // namespace

Dendrogram hcluster(const CorrelationMatrix& c, std::size_t k) {
    const std::size_t n = c.names.size();
    if (k == 0) throw ArgumentError("cluster count must be at least 1");
    if (k > n) throw ArgumentError("cluster count exceeds entity count");

    // Active clusters; dissimilarity between clusters is the unweighted
    // average of pairwise d = 1 - r over their members.
    std::vector<std::vector<std::size_t>> members(n);
    std::vector<std::size_t> node_of(n);  // tree node id per active cluster
    std::vector<std::size_t> active(n);
    for (std::size_t i = 0; i < n; ++i) {
        members[i] = {i};
        node_of[i] = i;
        active[i] = i;
    }

    Dendrogram out;
    std::vector<std::vector<std::size_t>> children;  // per merge: two tree nodes
    std::vector<std::size_t> cut_assignments;
    const auto dissim = [&](std::size_t a, std::size_t b) {
        double total = 0.0;
        for (std::size_t i : members[a]) {
            for (std::size_t j : members[b]) total += 1.0 - c.r(i, j);
        }
        return total / static_cast<double>(members[a].size() * members[b].size());
    };

    const auto record_cut = [&]() {
        std::vector<std::size_t> reps = active;
        std::sort(reps.begin(), reps.end());
        std::vector<std::size_t> assign(n, 0);
        for (std::size_t cid = 0; cid < reps.size(); ++cid) {
            for (std::size_t m : members[reps[cid]]) assign[m] = cid;
        }
        cut_assignments = assign;
    };

    if (active.size() == k) record_cut();
    while (active.size() > 1) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t bi = 0, bj = 0;
        for (std::size_t x = 0; x < active.size(); ++x) {
            for (std::size_t y = x + 1; y < active.size(); ++y) {
                std::size_t a = std::min(active[x], active[y]);
                std::size_t b = std::max(active[x], active[y]);
                const double d = dissim(a, b);
                if (d < best || (d == best && std::pair{a, b} < std::pair{bi, bj})) {
                    best = d;
                    bi = a;
                    bj = b;
                }
            }
        }
        out.merges.push_back({bi, bj, best});
        children.push_back({node_of[bi], node_of[bj]});
        members[bi].insert(members[bi].end(), members[bj].begin(), members[bj].end());
        node_of[bi] = n + out.merges.size() - 1;
        active.erase(std::find(active.begin(), active.end(), bj));
        if (active.size() == k) record_cut();
    }

    out.assignments = std::move(cut_assignments);
    out.n_clusters = k;

    out.leaf_order.reserve(n);
    if (out.merges.empty()) {
        for (std::size_t i = 0; i < n; ++i) out.leaf_order.push_back(i);
    } else {
        collect_leaves(children, n + out.merges.size() - 1, n, out.leaf_order);
    }
    return out;
}

std::vector<NetworkEdge> network_edges(const CorrelationMatrix& c, double threshold) {
    std::vector<NetworkEdge> edges;
    const std::size_t n = c.names.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (std::abs(c.r(i, j)) >= threshold) {
                edges.push_back({c.names[i], c.names[j], c.r(i, j)});
            }
        }
    }
    std::sort(edges.begin(), edges.end(), [](const NetworkEdge& x, const NetworkEdge& y) {
        const double ax = std::abs(x.r), ay = std::abs(y.r);
        if (ax != ay) return ax > ay;
        return std::tie(x.a, x.b) < std::tie(y.a, y.b);
    });
    return edges;
}

}  // namespace ctml
