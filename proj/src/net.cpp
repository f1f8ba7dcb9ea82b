#include "ctml/net.hpp"

#include <algorithm>
#include <cmath>

#include "ctml/errors.hpp"
#include "ctml/rng.hpp"

namespace ctml {

namespace {

void glorot_fill(Matrix& w, std::mt19937_64& rng) {
    const double limit = std::sqrt(6.0 / static_cast<double>(w.rows + w.cols));
    for (double& v : w.data) v = (2.0 * uniform01(rng) - 1.0) * limit;
}

// z = W x + b for row-major (out x in) weights
void affine(const Matrix& w, const std::vector<double>& b, const double* x,
            std::vector<double>& z) {
    z.resize(w.rows);
    for (std::size_t o = 0; o < w.rows; ++o) {
        double acc = b[o];
        const double* row = w.data.data() + o * w.cols;
        for (std::size_t i = 0; i < w.cols; ++i) acc += row[i] * x[i];
        z[o] = acc;
    }
}

void softmax2(const std::vector<double>& z, double out[2]) {
    const double peak = std::max(z[0], z[1]);
    const double e0 = std::exp(z[0] - peak);
    const double e1 = std::exp(z[1] - peak);
    out[0] = e0 / (e0 + e1);
    out[1] = e1 / (e0 + e1);
}

struct BatchScratch {
    std::vector<double> z1, a1, z2, a2, z3;
    std::vector<double> da1, dz1, da2, dz2;
    double p[2] = {0.0, 0.0};
};

void zero_like(const FeedforwardNetModel& model, NetGradients& g) {
    g.w1 = Matrix(model.w1.rows, model.w1.cols);
    g.w2 = Matrix(model.w2.rows, model.w2.cols);
    g.w3 = Matrix(model.w3.rows, model.w3.cols);
    g.b1.assign(model.b1.size(), 0.0);
    g.b2.assign(model.b2.size(), 0.0);
    g.b3.assign(model.b3.size(), 0.0);
}

// Forward + backward for one sample; masks are inverted-dropout scale
// factors (0 or 1/keep) or null when dropout is off. Returns the sample's
// cross-entropy; gradient contributions are scaled by `weight`.
double backprop_one(const FeedforwardNetModel& model, const double* x, int label,
                    const double* mask1, const double* mask2, double weight,
                    NetGradients& g, BatchScratch& s) {
    affine(model.w1, model.b1, x, s.z1);
    s.a1.resize(s.z1.size());
    for (std::size_t i = 0; i < s.z1.size(); ++i) {
        s.a1[i] = std::max(0.0, s.z1[i]) * (mask1 ? mask1[i] : 1.0);
    }
    affine(model.w2, model.b2, s.a1.data(), s.z2);
    s.a2.resize(s.z2.size());
    for (std::size_t i = 0; i < s.z2.size(); ++i) {
        s.a2[i] = std::max(0.0, s.z2[i]) * (mask2 ? mask2[i] : 1.0);
    }
    affine(model.w3, model.b3, s.a2.data(), s.z3);
    softmax2(s.z3, s.p);
    const double loss = -std::log(std::max(s.p[label], 1e-300));

    double dz3[2] = {s.p[0], s.p[1]};
    dz3[label] -= 1.0;
    dz3[0] *= weight;
    dz3[1] *= weight;

    for (std::size_t o = 0; o < 2; ++o) {
        g.b3[o] += dz3[o];
        for (std::size_t i = 0; i < s.a2.size(); ++i) {
            g.w3.data[o * s.a2.size() + i] += dz3[o] * s.a2[i];
        }
    }
    s.da2.assign(s.a2.size(), 0.0);
    for (std::size_t o = 0; o < 2; ++o) {
        for (std::size_t i = 0; i < s.a2.size(); ++i) {
            s.da2[i] += model.w3.data[o * s.a2.size() + i] * dz3[o];
        }
    }
    s.dz2.resize(s.z2.size());
    for (std::size_t i = 0; i < s.z2.size(); ++i) {
        s.dz2[i] = s.da2[i] * (mask2 ? mask2[i] : 1.0) * (s.z2[i] > 0.0 ? 1.0 : 0.0);
    }
    for (std::size_t o = 0; o < s.dz2.size(); ++o) {
        g.b2[o] += s.dz2[o];
        for (std::size_t i = 0; i < s.a1.size(); ++i) {
            g.w2.data[o * s.a1.size() + i] += s.dz2[o] * s.a1[i];
        }
    }
    s.da1.assign(s.a1.size(), 0.0);
    for (std::size_t o = 0; o < s.dz2.size(); ++o) {
        for (std::size_t i = 0; i < s.a1.size(); ++i) {
            s.da1[i] += model.w2.data[o * s.a1.size() + i] * s.dz2[o];
        }
    }
    s.dz1.resize(s.z1.size());
    for (std::size_t i = 0; i < s.z1.size(); ++i) {
        s.dz1[i] = s.da1[i] * (mask1 ? mask1[i] : 1.0) * (s.z1[i] > 0.0 ? 1.0 : 0.0);
    }
    for (std::size_t o = 0; o < s.dz1.size(); ++o) {
        g.b1[o] += s.dz1[o];
        for (std::size_t i = 0; i < model.w1.cols; ++i) {
            g.w1.data[o * model.w1.cols + i] += s.dz1[o] * x[i];
        }
    }
    return loss;
}

struct AdamState {
    std::vector<double> m, v;
    explicit AdamState(std::size_t n) : m(n, 0.0), v(n, 0.0) {}
};

void adam_update(std::vector<double>& param, const std::vector<double>& grad,
                 AdamState& state, double lr, double t) {
    constexpr double kBeta1 = 0.9, kBeta2 = 0.999, kEps = 1e-8;
    const double correction1 = 1.0 - std::pow(kBeta1, t);
    const double correction2 = 1.0 - std::pow(kBeta2, t);
    for (std::size_t i = 0; i < param.size(); ++i) {
        state.m[i] = kBeta1 * state.m[i] + (1.0 - kBeta1) * grad[i];
        state.v[i] = kBeta2 * state.v[i] + (1.0 - kBeta2) * grad[i] * grad[i];
        const double m_hat = state.m[i] / correction1;
        const double v_hat = state.v[i] / correction2;
        param[i] -= lr * m_hat / (std::sqrt(v_hat) + kEps);
    }
}

}  // namespace

FeedforwardNetModel init_net(std::size_t n_features, const NetParams& params,
                             std::uint64_t seed) {
    if (n_features == 0) throw ArgumentError("network needs at least one feature");
    if (params.hidden1 == 0 || params.hidden2 == 0) {
        throw ArgumentError("hidden layer sizes must be positive");
    }
    FeedforwardNetModel model;
    model.w1 = Matrix(params.hidden1, n_features);
    model.w2 = Matrix(params.hidden2, params.hidden1);
    model.w3 = Matrix(2, params.hidden2);
    model.b1.assign(params.hidden1, 0.0);
    model.b2.assign(params.hidden2, 0.0);
    model.b3.assign(2, 0.0);
    std::mt19937_64 rng = make_rng(seed, 0);
    glorot_fill(model.w1, rng);
    glorot_fill(model.w2, rng);
    glorot_fill(model.w3, rng);
    return model;
}

double net_loss_and_grad(const FeedforwardNetModel& model, const Matrix& x,
                         const std::vector<int>& y, NetGradients* grads) {
    const std::size_t n = x.rows;
    if (n == 0 || n != y.size()) {
        throw ArgumentError("feature rows and labels must match and be non-empty");
    }
    NetGradients local;
    NetGradients& g = grads ? *grads : local;
    zero_like(model, g);
    BatchScratch scratch;
    const double weight = 1.0 / static_cast<double>(n);
    double loss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        loss += backprop_one(model, x.data.data() + i * x.cols, y[i], nullptr, nullptr,
                             weight, g, scratch);
    }
    return loss * weight;
}

FeedforwardNetModel fit_net(const Matrix& x, const std::vector<int>& y,
                            const NetParams& params, std::uint64_t seed) {
    const std::size_t n = x.rows;
    if (n == 0 || n != y.size()) {
        throw ArgumentError("feature rows and labels must match and be non-empty");
    }
    if (!(params.dropout >= 0.0 && params.dropout < 1.0)) {
        throw ArgumentError("dropout must lie in [0, 1)");
    }
    if (!(params.learning_rate > 0.0)) throw ArgumentError("learning_rate must be positive");

    FeedforwardNetModel model = init_net(x.cols, params, seed);
    const double keep = 1.0 - params.dropout;

    AdamState aw1(model.w1.data.size()), aw2(model.w2.data.size()), aw3(model.w3.data.size());
    AdamState ab1(model.b1.size()), ab2(model.b2.size()), ab3(model.b3.size());

    NetGradients g;
    BatchScratch scratch;
    std::vector<double> mask1(params.hidden1), mask2(params.hidden2);
    const double weight = 1.0 / static_cast<double>(n);

    for (std::size_t epoch = 0; epoch < params.epochs; ++epoch) {
        std::mt19937_64 rng = make_rng(seed, 1 + epoch);
        zero_like(model, g);
        for (std::size_t i = 0; i < n; ++i) {
            for (double& m : mask1) m = uniform01(rng) <= keep ? 1.0 / keep : 0.0;
            for (double& m : mask2) m = uniform01(rng) <= keep ? 1.0 / keep : 0.0;
            backprop_one(model, x.data.data() + i * x.cols, y[i],
                         params.dropout > 0.0 ? mask1.data() : nullptr,
                         params.dropout > 0.0 ? mask2.data() : nullptr, weight, g, scratch);
        }
        const double t = static_cast<double>(epoch + 1);
        adam_update(model.w1.data, g.w1.data, aw1, params.learning_rate, t);
        adam_update(model.w2.data, g.w2.data, aw2, params.learning_rate, t);
        adam_update(model.w3.data, g.w3.data, aw3, params.learning_rate, t);
        adam_update(model.b1, g.b1, ab1, params.learning_rate, t);
        adam_update(model.b2, g.b2, ab2, params.learning_rate, t);
        adam_update(model.b3, g.b3, ab3, params.learning_rate, t);
    }
    return model;
}

std::vector<double> net_predict_p1(const FeedforwardNetModel& model, const Matrix& x) {
    if (x.cols != model.w1.cols) throw ArgumentError("feature count mismatch");
    std::vector<double> out(x.rows);
    std::vector<double> z1, a1, z2, a2, z3;
    for (std::size_t i = 0; i < x.rows; ++i) {
        const double* row = x.data.data() + i * x.cols;
        affine(model.w1, model.b1, row, z1);
        a1.resize(z1.size());
        for (std::size_t k = 0; k < z1.size(); ++k) a1[k] = std::max(0.0, z1[k]);
        affine(model.w2, model.b2, a1.data(), z2);
        a2.resize(z2.size());
        for (std::size_t k = 0; k < z2.size(); ++k) a2[k] = std::max(0.0, z2[k]);
        affine(model.w3, model.b3, a2.data(), z3);
        double p[2];
        softmax2(z3, p);
        out[i] = p[1];
    }
    return out;
}

}  // namespace ctml
