#include "ctml/logreg.hpp"

#include <cmath>

#include "ctml/errors.hpp"

namespace ctml {

namespace {

double logistic(double z) { return 1.0 / (1.0 + std::exp(-z)); }

// log(1 + exp(-z)), stable for large |z|
double softplus_neg(double z) {
    return z > 0.0 ? std::log1p(std::exp(-z)) : -z + std::log1p(std::exp(z));
}

double grad_norm(const std::vector<double>& gw, double gb) {
    double ss = gb * gb;
    for (double g : gw) ss += g * g;
    return std::sqrt(ss);
}

}  // namespace

double logreg_objective(const Matrix& x, const std::vector<int>& y, double l2,
                        const std::vector<double>& weights, double bias,
                        std::vector<double>* grad_weights, double* grad_bias) {
    const std::size_t n = x.rows;
    const std::size_t f = x.cols;
    if (weights.size() != f) throw ArgumentError("weight length must match feature count");

    if (grad_weights) grad_weights->assign(f, 0.0);
    if (grad_bias) *grad_bias = 0.0;

    double loss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double* row = x.data.data() + i * f;
        double z = bias;
        for (std::size_t j = 0; j < f; ++j) z += weights[j] * row[j];
        const double sign = y[i] == 1 ? 1.0 : -1.0;
        loss += softplus_neg(sign * z);
        if (grad_weights) {
            const double residual = logistic(z) - static_cast<double>(y[i]);
            for (std::size_t j = 0; j < f; ++j) (*grad_weights)[j] += residual * row[j];
            *grad_bias += residual;
        }
    }
    for (std::size_t j = 0; j < f; ++j) {
        loss += 0.5 * l2 * weights[j] * weights[j];
        if (grad_weights) (*grad_weights)[j] += l2 * weights[j];
    }
    return loss;
}

LogisticRegressionModel fit_logistic_regression(const Matrix& x, const std::vector<int>& y,
                                                const LogRegParams& params) {
    const std::size_t n = x.rows;
    const std::size_t f = x.cols;
    if (n == 0 || n != y.size()) {
        throw ArgumentError("feature rows and labels must match and be non-empty");
    }
    if (!(params.l2 >= 0.0)) throw ArgumentError("l2 must be non-negative");

    LogisticRegressionModel model;
    model.weights.assign(f, 0.0);

    const std::size_t dim = f + 1;  // weights then bias
    std::vector<double> grad_w(f), hessian(dim * dim), step(dim), rhs(dim);
    std::vector<double> p(n);

    double objective = logreg_objective(x, y, params.l2, model.weights, model.bias, &grad_w,
                                        &rhs[f]);
    for (std::size_t j = 0; j < f; ++j) rhs[j] = grad_w[j];

    for (std::size_t iter = 0; iter < params.max_iter; ++iter) {
        if (grad_norm(grad_w, rhs[f]) < params.tol) break;

        for (std::size_t i = 0; i < n; ++i) {
            const double* row = x.data.data() + i * f;
            double z = model.bias;
            for (std::size_t j = 0; j < f; ++j) z += model.weights[j] * row[j];
            p[i] = logistic(z);
        }
        std::fill(hessian.begin(), hessian.end(), 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            const double* row = x.data.data() + i * f;
            const double w = p[i] * (1.0 - p[i]);
            for (std::size_t a = 0; a < f; ++a) {
                const double wa = w * row[a];
                for (std::size_t b = a; b < f; ++b) hessian[a * dim + b] += wa * row[b];
                hessian[a * dim + f] += wa;
            }
            hessian[f * dim + f] += w;
        }
        for (std::size_t a = 0; a < f; ++a) hessian[a * dim + a] += params.l2;
        hessian[f * dim + f] += 1e-10;  // keeps the bias block positive definite
        for (std::size_t a = 0; a < dim; ++a) {
            for (std::size_t b = 0; b < a; ++b) hessian[a * dim + b] = hessian[b * dim + a];
        }

        step = cholesky_solve(hessian, rhs);

        // Halving line search; plain Newton can overshoot when probabilities
        // saturate early.
        double scale = 1.0;
        bool accepted = false;
        for (int halving = 0; halving < 40 && !accepted; ++halving) {
            std::vector<double> trial_w = model.weights;
            for (std::size_t j = 0; j < f; ++j) trial_w[j] -= scale * step[j];
            const double trial_b = model.bias - scale * step[f];
            const double trial_obj =
                logreg_objective(x, y, params.l2, trial_w, trial_b, &grad_w, &rhs[f]);
            if (trial_obj <= objective) {
                model.weights = std::move(trial_w);
                model.bias = trial_b;
                objective = trial_obj;
                accepted = true;
            }
            scale *= 0.5;
        }
        if (!accepted) {
            // No descent step left at this scale; restore the gradient at the
            // current point and stop.
            logreg_objective(x, y, params.l2, model.weights, model.bias, &grad_w, &rhs[f]);
            break;
        }
        for (std::size_t j = 0; j < f; ++j) rhs[j] = grad_w[j];
    }
    return model;
}

double logreg_decision_one(const LogisticRegressionModel& m, const double* x) {
    double z = m.bias;
    for (std::size_t j = 0; j < m.weights.size(); ++j) z += m.weights[j] * x[j];
    return z;
}

std::vector<double> logreg_predict_p1(const LogisticRegressionModel& m, const Matrix& x) {
    if (x.cols != m.weights.size()) throw ArgumentError("feature count mismatch");
    std::vector<double> p(x.rows);
    for (std::size_t i = 0; i < x.rows; ++i) {
        p[i] = logistic(logreg_decision_one(m, x.data.data() + i * x.cols));
    }
    return p;
}

}  // namespace ctml
