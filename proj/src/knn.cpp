#include "ctml/knn.hpp"

#include <algorithm>
#include <utility>

#include "ctml/errors.hpp"

namespace ctml {

KnnModel fit_knn(const Matrix& x, const std::vector<int>& y, const KnnParams& params) {
    if (x.rows == 0 || x.rows != y.size()) {
        throw ArgumentError("feature rows and labels must match and be non-empty");
    }
    if (params.k == 0) throw ArgumentError("k must be positive");
    if (params.k > x.rows) throw ArgumentError("k cannot exceed the training-set size");
    return {x, y, params.k};
}

double knn_predict_one(const KnnModel& m, const double* x) {
    const std::size_t n = m.train_x.rows;
    const std::size_t f = m.train_x.cols;
    std::vector<std::pair<double, std::size_t>> dist(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double* row = m.train_x.data.data() + i * f;
        double d2 = 0.0;
        for (std::size_t j = 0; j < f; ++j) {
            const double diff = x[j] - row[j];
            d2 += diff * diff;
        }
        dist[i] = {d2, i};
    }
    std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(m.k),
                      dist.end());
    std::size_t votes = 0;
    for (std::size_t i = 0; i < m.k; ++i) {
        votes += static_cast<std::size_t>(m.train_y[dist[i].second]);
    }
    return static_cast<double>(votes) / static_cast<double>(m.k);
}

std::vector<double> knn_predict_p1(const KnnModel& m, const Matrix& x) {
    if (x.cols != m.train_x.cols) throw ArgumentError("feature count mismatch");
    std::vector<double> p(x.rows);
    for (std::size_t i = 0; i < x.rows; ++i) {
        p[i] = knn_predict_one(m, x.data.data() + i * x.cols);
    }
    return p;
}

}  // namespace ctml
