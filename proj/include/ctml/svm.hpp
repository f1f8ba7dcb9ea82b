#pragma once

#include <cstdint>
#include <vector>

#include "ctml/matrix.hpp"

namespace ctml {

enum class SvmKernel { Linear, Rbf };

struct SvmParams {
    SvmKernel kernel = SvmKernel::Linear;
    double c = 1.0;
    double gamma = 0.0;  // RBF width; 0 = auto 1/(F * mean feature variance)
    double tol = 1e-3;   // KKT violation tolerance
    std::size_t max_sweeps = 1000;
};

struct SvmModel {
    Matrix support_x;             // training rows with alpha > 0
    std::vector<double> alpha_y;  // alpha_i * y_i (y in {-1,+1}) per support row
    double b = 0.0;
    SvmKernel kernel = SvmKernel::Linear;
    double gamma = 0.0;
    double calib_slope = 0.0;     // p(1) = logistic(slope * margin + intercept)
    double calib_intercept = 0.0;
};

struct SmoSolution {
    std::vector<double> alpha;
    double b = 0.0;
    std::size_t sweeps = 0;
};

/// Deterministic SMO on a precomputed kernel matrix: sweeps all points,
/// pairs each KKT violator with the argmax-|E_i - E_j| partner (sequential
/// fallback), and stops when a full sweep changes nothing. y must be -1/+1.
SmoSolution smo_solve(const Matrix& kernel, const std::vector<double>& y, double c,
                      double tol, std::size_t max_sweeps);

/// Fits the dual SVM, then calibrates probabilities with a two-parameter
/// logistic over the training margins using smoothed targets
/// (N+1)/(N+2)-style, a simplified Platt scaling.
SvmModel fit_svm(const Matrix& x, const std::vector<int>& y, const SvmParams& params);

double svm_margin_one(const SvmModel& m, const double* x);
std::vector<double> svm_predict_p1(const SvmModel& m, const Matrix& x);

/// The auto-gamma rule: 1/(F * mean per-feature population variance).
double svm_auto_gamma(const Matrix& x);

}  // namespace ctml
