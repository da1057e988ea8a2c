#ifndef CIGAN_ADAM_HPP
#define CIGAN_ADAM_HPP

#include <cstdint>
#include <vector>

#include "cigan/network.hpp"

namespace cigan {

struct AdamConfig {
    double learning_rate = 1e-4;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
};

/// First/second-moment accumulators shaped like the network parameters.
struct AdamState {
    AdamConfig config;
    std::vector<Matrix> m_weights;
    std::vector<Matrix> v_weights;
    std::vector<std::vector<double>> m_bias;
    std::vector<std::vector<double>> v_bias;
    std::uint64_t step = 0;
};

AdamState make_adam_state(const DenseNetwork& net, AdamConfig config);

/// One bias-corrected Adam update, in place:
///   m <- b1*m + (1-b1)*g,  v <- b2*v + (1-b2)*g^2,  t <- t+1
///   p <- p - lr * (m / (1-b1^t)) / (sqrt(v / (1-b2^t)) + eps)
void adam_step(DenseNetwork& net, const Gradients& grads, AdamState& state);

} // namespace cigan

#endif
