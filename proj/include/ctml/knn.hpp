#pragma once

#include <vector>

#include "ctml/matrix.hpp"

namespace ctml {

struct KnnParams {
    std::size_t k = 3;
};

/// Plain memorizer: predict_proba is the class-1 fraction among the k
/// nearest training rows by Euclidean distance. Distance ties resolve by
/// training-row index so predictions are deterministic.
struct KnnModel {
    Matrix train_x;
    std::vector<int> train_y;
    std::size_t k = 3;
};

KnnModel fit_knn(const Matrix& x, const std::vector<int>& y, const KnnParams& params);
double knn_predict_one(const KnnModel& m, const double* x);
std::vector<double> knn_predict_p1(const KnnModel& m, const Matrix& x);

}  // namespace ctml
