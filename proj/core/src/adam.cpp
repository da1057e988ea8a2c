#include "cigan/adam.hpp"

#include <cmath>
#include <span>

#include "cigan/error.hpp"

namespace cigan {

AdamState make_adam_state(const DenseNetwork& net, AdamConfig config) {
    AdamState state;
    state.config = config;
    for (const auto& layer : net.layers) {
        state.m_weights.emplace_back(layer.weights.rows(), layer.weights.cols());
        state.v_weights.emplace_back(layer.weights.rows(), layer.weights.cols());
        state.m_bias.emplace_back(layer.bias.size(), 0.0);
        state.v_bias.emplace_back(layer.bias.size(), 0.0);
    }
    return state;
}

namespace {

void update_span(std::span<double> params, std::span<const double> grads,
                 std::span<double> m, std::span<double> v, const AdamConfig& c,
                 double bc1, double bc2) {
    for (std::size_t i = 0; i < params.size(); ++i) {
        const double g = grads[i];
        m[i] = c.beta1 * m[i] + (1.0 - c.beta1) * g;
        v[i] = c.beta2 * v[i] + (1.0 - c.beta2) * g * g;
        const double m_hat = m[i] / bc1;
        const double v_hat = v[i] / bc2;
        params[i] -= c.learning_rate * m_hat / (std::sqrt(v_hat) + c.epsilon);
    }
}

} // namespace

void adam_step(DenseNetwork& net, const Gradients& grads, AdamState& state) {
    if (grads.weights.size() != net.layers.size() ||
        state.m_weights.size() != net.layers.size()) {
        throw Error(ErrorKind::ShapeMismatch, "adam_step: layer count mismatch");
    }
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
        if (!grads.weights[l].same_shape(net.layers[l].weights) ||
            grads.biases[l].size() != net.layers[l].bias.size()) {
            throw Error(ErrorKind::ShapeMismatch, "adam_step: gradient shape mismatch");
        }
    }
    state.step += 1;
    const auto& c = state.config;
    const double bc1 = 1.0 - std::pow(c.beta1, static_cast<double>(state.step));
    const double bc2 = 1.0 - std::pow(c.beta2, static_cast<double>(state.step));
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
        update_span(net.layers[l].weights.flat(), grads.weights[l].flat(),
                    state.m_weights[l].flat(), state.v_weights[l].flat(), c, bc1, bc2);
        update_span(net.layers[l].bias, grads.biases[l], state.m_bias[l], state.v_bias[l], c,
                    bc1, bc2);
    }
}

} // namespace cigan
