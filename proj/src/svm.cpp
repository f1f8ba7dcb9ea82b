#include "ctml/svm.hpp"

#include <algorithm>
#include <cmath>

#include "ctml/errors.hpp"

namespace ctml {

namespace {

double logistic(double z) { return 1.0 / (1.0 + std::exp(-z)); }

double kernel_value(SvmKernel kernel, double gamma, const double* a, const double* b,
                    std::size_t f) {
    if (kernel == SvmKernel::Linear) {
        double dot = 0.0;
        for (std::size_t j = 0; j < f; ++j) dot += a[j] * b[j];
        return dot;
    }
    double d2 = 0.0;
    for (std::size_t j = 0; j < f; ++j) {
        const double diff = a[j] - b[j];
        d2 += diff * diff;
    }
    return std::exp(-gamma * d2);
}

struct Calibration {
    double slope;
    double intercept;
};

// Two-parameter logistic over margins with smoothed targets; the smoothing
// keeps the optimum finite even when margins separate the classes exactly.
Calibration fit_platt(const std::vector<double>& margin, const std::vector<int>& y) {
    const std::size_t n = margin.size();
    double n_pos = 0.0;
    for (int label : y) n_pos += label;
    const double n_neg = static_cast<double>(n) - n_pos;
    const double t_pos = (n_pos + 1.0) / (n_pos + 2.0);
    const double t_neg = 1.0 / (n_neg + 2.0);

    double a = 0.0;
    double b = std::log((n_neg + 1.0) / (n_pos + 1.0));
    for (int iter = 0; iter < 100; ++iter) {
        double ga = 0.0, gb = 0.0, haa = 1e-12, hab = 0.0, hbb = 1e-12;
        for (std::size_t i = 0; i < n; ++i) {
            const double p = logistic(a * margin[i] + b);
            const double t = y[i] == 1 ? t_pos : t_neg;
            const double d = p - t;
            const double w = p * (1.0 - p);
            ga += d * margin[i];
            gb += d;
            haa += w * margin[i] * margin[i];
            hab += w * margin[i];
            hbb += w;
        }
        if (std::sqrt(ga * ga + gb * gb) < 1e-10) break;
        const double det = haa * hbb - hab * hab;
        a -= (hbb * ga - hab * gb) / det;
        b -= (haa * gb - hab * ga) / det;
    }
    return {a, b};
}

}  // namespace

SmoSolution smo_solve(const Matrix& kernel, const std::vector<double>& y, double c,
                      double tol, std::size_t max_sweeps) {
    const std::size_t n = kernel.rows;
    if (kernel.cols != n || y.size() != n) {
        throw ArgumentError("kernel must be square and match the label count");
    }
    for (double label : y) {
        if (label != 1.0 && label != -1.0) throw ArgumentError("smo labels must be -1 or +1");
    }

    SmoSolution sol;
    sol.alpha.assign(n, 0.0);
    std::vector<double> f(n, 0.0);  // decision value per training point

    const auto try_step = [&](std::size_t i, std::size_t j) {
        if (i == j) return false;
        const double ei = f[i] - y[i];
        const double ej = f[j] - y[j];
        double low, high;
        if (y[i] != y[j]) {
            low = std::max(0.0, sol.alpha[j] - sol.alpha[i]);
            high = std::min(c, c + sol.alpha[j] - sol.alpha[i]);
        } else {
            low = std::max(0.0, sol.alpha[i] + sol.alpha[j] - c);
            high = std::min(c, sol.alpha[i] + sol.alpha[j]);
        }
        if (low >= high) return false;
        const double eta = 2.0 * kernel(i, j) - kernel(i, i) - kernel(j, j);
        if (eta >= 0.0) return false;

        double aj = sol.alpha[j] - y[j] * (ei - ej) / eta;
        aj = std::clamp(aj, low, high);
        const double dj = aj - sol.alpha[j];
        if (std::abs(dj) < 1e-12) return false;
        const double di = -y[i] * y[j] * dj;
        const double ai = sol.alpha[i] + di;

        const double b1 =
            sol.b - ei - y[i] * di * kernel(i, i) - y[j] * dj * kernel(i, j);
        const double b2 =
            sol.b - ej - y[i] * di * kernel(i, j) - y[j] * dj * kernel(j, j);
        double b_new;
        if (ai > 0.0 && ai < c) {
            b_new = b1;
        } else if (aj > 0.0 && aj < c) {
            b_new = b2;
        } else {
            b_new = 0.5 * (b1 + b2);
        }
        const double db = b_new - sol.b;
        for (std::size_t k = 0; k < n; ++k) {
            f[k] += y[i] * di * kernel(i, k) + y[j] * dj * kernel(j, k) + db;
        }
        sol.alpha[i] = ai;
        sol.alpha[j] = aj;
        sol.b = b_new;
        return true;
    };

    for (std::size_t sweep = 0; sweep < max_sweeps; ++sweep) {
        ++sol.sweeps;
        std::size_t changed = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const double r = (f[i] - y[i]) * y[i];
            const bool violates =
                (r < -tol && sol.alpha[i] < c) || (r > tol && sol.alpha[i] > 0.0);
            if (!violates) continue;

            std::size_t best_j = n;
            double best_gap = -1.0;
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i) continue;
                const double gap = std::abs((f[i] - y[i]) - (f[j] - y[j]));
                if (gap > best_gap) {
                    best_gap = gap;
                    best_j = j;
                }
            }
            bool stepped = best_j < n && try_step(i, best_j);
            for (std::size_t j = 0; !stepped && j < n; ++j) {
                if (j != best_j) stepped = try_step(i, j);
            }
            if (stepped) ++changed;
        }
        if (changed == 0) break;
    }
    return sol;
}

double svm_auto_gamma(const Matrix& x) {
    if (x.cols == 0) throw ArgumentError("auto gamma needs at least one feature");
    double total_var = 0.0;
    for (std::size_t j = 0; j < x.cols; ++j) {
        total_var += population_variance(x.col(j));
    }
    const double mean_var = total_var / static_cast<double>(x.cols);
    if (mean_var <= 0.0) return 1.0 / static_cast<double>(x.cols);
    return 1.0 / (static_cast<double>(x.cols) * mean_var);
}

SvmModel fit_svm(const Matrix& x, const std::vector<int>& y, const SvmParams& params) {
    const std::size_t n = x.rows;
    const std::size_t f = x.cols;
    if (n == 0 || n != y.size()) {
        throw ArgumentError("feature rows and labels must match and be non-empty");
    }
    if (!(params.c > 0.0)) throw ArgumentError("C must be positive");

    const double gamma = params.kernel == SvmKernel::Rbf
                             ? (params.gamma > 0.0 ? params.gamma : svm_auto_gamma(x))
                             : 0.0;

    Matrix kernel(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            const double k = kernel_value(params.kernel, gamma, x.data.data() + i * f,
                                          x.data.data() + j * f, f);
            kernel(i, j) = k;
            kernel(j, i) = k;
        }
    }
    std::vector<double> signed_y(n);
    for (std::size_t i = 0; i < n; ++i) signed_y[i] = y[i] == 1 ? 1.0 : -1.0;

    const SmoSolution sol = smo_solve(kernel, signed_y, params.c, params.tol,
                                      params.max_sweeps);

    std::vector<double> margin(n, sol.b);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            margin[i] += sol.alpha[j] * signed_y[j] * kernel(i, j);
        }
    }
    const Calibration calib = fit_platt(margin, y);

    SvmModel model;
    model.kernel = params.kernel;
    model.gamma = gamma;
    model.b = sol.b;
    model.calib_slope = calib.slope;
    model.calib_intercept = calib.intercept;
    std::size_t n_support = 0;
    for (double a : sol.alpha) n_support += a > 1e-12;
    model.support_x = Matrix(n_support, f);
    model.alpha_y.reserve(n_support);
    std::size_t row = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (sol.alpha[i] <= 1e-12) continue;
        for (std::size_t j = 0; j < f; ++j) model.support_x(row, j) = x(i, j);
        model.alpha_y.push_back(sol.alpha[i] * signed_y[i]);
        ++row;
    }
    return model;
}

double svm_margin_one(const SvmModel& m, const double* x) {
    const std::size_t f = m.support_x.cols;
    double margin = m.b;
    for (std::size_t i = 0; i < m.support_x.rows; ++i) {
        margin += m.alpha_y[i] *
                  kernel_value(m.kernel, m.gamma, m.support_x.data.data() + i * f, x, f);
    }
    return margin;
}

std::vector<double> svm_predict_p1(const SvmModel& m, const Matrix& x) {
    if (x.cols != m.support_x.cols && m.support_x.rows > 0) {
        throw ArgumentError("feature count mismatch");
    }
    std::vector<double> p(x.rows);
    for (std::size_t i = 0; i < x.rows; ++i) {
        const double margin = svm_margin_one(m, x.data.data() + i * x.cols);
        p[i] = logistic(m.calib_slope * margin + m.calib_intercept);
    }
    return p;
}

}  // namespace ctml
