#pragma once

#include <cstdint>
#include <vector>

#include "ctml/matrix.hpp"

namespace ctml {

struct NetParams {
    std::size_t hidden1 = 16;
    std::size_t hidden2 = 8;
    double dropout = 0.3;  // applied after each hidden layer, training only
    double learning_rate = 1e-3;
    std::size_t epochs = 200;
};

/// Fully connected net: input -> hidden1 -> hidden2 -> 2, rectified-linear
/// hidden activations, softmax output. Weights are stored row-major as
/// (out x in) matrices.
struct FeedforwardNetModel {
    Matrix w1, w2, w3;
    std::vector<double> b1, b2, b3;
};

struct NetGradients {
    Matrix w1, w2, w3;
    std::vector<double> b1, b2, b3;
};

/// Full-batch adaptive-moment gradient descent with seeded dropout masks;
/// inference never drops units.
FeedforwardNetModel fit_net(const Matrix& x, const std::vector<int>& y,
                            const NetParams& params, std::uint64_t seed);

/// Mean cross-entropy over the batch (dropout disabled) and, when `grads`
/// is non-null, its exact backpropagated gradients; exposed so training can
/// be validated against finite differences.
double net_loss_and_grad(const FeedforwardNetModel& model, const Matrix& x,
                         const std::vector<int>& y, NetGradients* grads);

/// Deterministic Glorot-uniform initialization for the given shape.
FeedforwardNetModel init_net(std::size_t n_features, const NetParams& params,
                             std::uint64_t seed);

std::vector<double> net_predict_p1(const FeedforwardNetModel& model, const Matrix& x);

}  // namespace ctml
