#pragma once

#include <vector>

#include "ctml/matrix.hpp"

namespace ctml {

struct LogRegParams {
    double l2 = 1.0;       // penalty on weights only, never on the intercept
    double tol = 1e-6;     // gradient-norm stopping criterion
    std::size_t max_iter = 100;
};

struct LogisticRegressionModel {
    std::vector<double> weights;
    double bias = 0.0;
};

/// L2-penalized maximum likelihood via damped Newton iterations, solved
/// until the full gradient norm (weights and bias) drops below tol.
LogisticRegressionModel fit_logistic_regression(const Matrix& x, const std::vector<int>& y,
                                                const LogRegParams& params);

double logreg_decision_one(const LogisticRegressionModel& m, const double* x);
std::vector<double> logreg_predict_p1(const LogisticRegressionModel& m, const Matrix& x);

/// Objective (sum logistic loss + l2/2 * ||w||^2) and its gradient at the
/// given parameters; exposed so training can be validated against finite
/// differences.
double logreg_objective(const Matrix& x, const std::vector<int>& y, double l2,
                        const std::vector<double>& weights, double bias,
                        std::vector<double>* grad_weights = nullptr,
                        double* grad_bias = nullptr);

}  // namespace ctml
