#ifndef CIGAN_TESTS_ORACLES_HPP
#define CIGAN_TESTS_ORACLES_HPP

#include <cmath>
#include <functional>
#include <vector>

#include "cigan/network.hpp"

namespace cigan::test {

// Independent straight-line re-evaluation of the affine+activation chain,
// scalar loops only. Deliberately does not call cigan::forward.
inline std::vector<double> straight_line_eval(const DenseNetwork& net,
                                              std::vector<double> x) {
    for (const auto& layer : net.layers) {
        std::vector<double> z(layer.bias);
        for (std::size_t j = 0; j < z.size(); ++j) {
            for (std::size_t i = 0; i < x.size(); ++i) {
                z[j] += x[i] * layer.weights(i, j);
            }
        }
        switch (layer.activation) {
        case Activation::Linear:
            break;
        case Activation::Selu:
            for (double& v : z) {
                v = v > 0 ? 1.0507009873554805 * v
                          : 1.0507009873554805 * 1.6732632423543772 * (std::exp(v) - 1.0);
            }
            break;
        case Activation::Sigmoid:
            for (double& v : z) v = 1.0 / (1.0 + std::exp(-v));
            break;
        case Activation::Tanh:
            for (double& v : z) v = std::tanh(v);
            break;
        case Activation::Softmax: {
            double sum = 0.0;
            for (double& v : z) {
                v = std::exp(v);
                sum += v;
            }
            for (double& v : z) v /= sum;
            break;
        }
        }
        x = std::move(z);
    }
    return x;
}

/// Central finite differences of `loss` over every parameter of `net`.
inline Gradients finite_diff_gradients(DenseNetwork net,
                                       const std::function<double(const DenseNetwork&)>& loss,
                                       double h = 1e-5) {
    Gradients grads;
    for (auto& layer : net.layers) {
        Matrix gw(layer.weights.rows(), layer.weights.cols());
        for (std::size_t i = 0; i < layer.weights.flat().size(); ++i) {
            const double saved = layer.weights.flat()[i];
            layer.weights.flat()[i] = saved + h;
            const double up = loss(net);
            layer.weights.flat()[i] = saved - h;
            const double down = loss(net);
            layer.weights.flat()[i] = saved;
            gw.flat()[i] = (up - down) / (2.0 * h);
        }
        grads.weights.push_back(std::move(gw));
        std::vector<double> gb(layer.bias.size());
        for (std::size_t i = 0; i < layer.bias.size(); ++i) {
            const double saved = layer.bias[i];
            layer.bias[i] = saved + h;
            const double up = loss(net);
            layer.bias[i] = saved - h;
            const double down = loss(net);
            layer.bias[i] = saved;
            gb[i] = (up - down) / (2.0 * h);
        }
        grads.biases.push_back(std::move(gb));
    }
    return grads;
}

/// Relative error with the max(1, |analytic|) denominator.
inline double gradient_rel_error(const Gradients& analytic, const Gradients& numeric) {
    double worst = 0.0;
    auto check = [&](double a, double n) {
        const double err = std::abs(a - n) / std::max(1.0, std::abs(a));
        worst = std::max(worst, err);
    };
    for (std::size_t l = 0; l < analytic.weights.size(); ++l) {
        for (std::size_t i = 0; i < analytic.weights[l].flat().size(); ++i) {
            check(analytic.weights[l].flat()[i], numeric.weights[l].flat()[i]);
        }
        for (std::size_t i = 0; i < analytic.biases[l].size(); ++i) {
            check(analytic.biases[l][i], numeric.biases[l][i]);
        }
    }
    return worst;
}

/// Scalar reference implementation of the bias-corrected Adam recurrence.
struct ReferenceAdam {
    double lr, beta1 = 0.9, beta2 = 0.999, eps = 1e-8;
    double m = 0.0, v = 0.0;
    long t = 0;

    double step(double param, double grad) {
        ++t;
        m = beta1 * m + (1.0 - beta1) * grad;
        v = beta2 * v + (1.0 - beta2) * grad * grad;
        const double m_hat = m / (1.0 - std::pow(beta1, t));
        const double v_hat = v / (1.0 - std::pow(beta2, t));
        return param - lr * m_hat / (std::sqrt(v_hat) + eps);
    }
};

} // namespace cigan::test

#endif
