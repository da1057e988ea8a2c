#ifndef CIGAN_NETWORK_HPP
#define CIGAN_NETWORK_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cigan/matrix.hpp"

namespace cigan {

enum class Activation { Linear, Selu, Sigmoid, Tanh, Softmax };

Activation activation_from_name(std::string_view name);
const char* activation_name(Activation a);

// standard self-normalizing constants
inline constexpr double kSeluLambda = 1.0507009873554804934193349852946;
inline constexpr double kSeluAlpha = 1.6732632423543772848170429916717;

double selu(double x);
double selu_grad(double x);
double sigmoid(double x);

/// Binary cross-entropy, mean over all entries. Predictions are clamped to
/// [1e-7, 1 - 1e-7] before the logs; labels must be 0 or 1.
double bce_loss(const Matrix& predictions, const Matrix& labels);
/// d(bce_loss)/d(predictions), with the same clamp applied.
Matrix bce_grad(const Matrix& predictions, const Matrix& labels);

struct Layer {
    Matrix weights;           // d_in x d_out
    std::vector<double> bias; // d_out
    Activation activation = Activation::Linear;

    std::size_t input_size() const noexcept { return weights.rows(); }
    std::size_t output_size() const noexcept { return weights.cols(); }

    bool operator==(const Layer& other) const = default;
};

/// A plain fully connected network. Weights are LeCun-normal initialized
/// (stddev 1/sqrt(fan_in)), which is what SELU's self-normalizing property
/// assumes; biases start at zero.
struct DenseNetwork {
    std::vector<Layer> layers;

    std::size_t input_size() const { return layers.front().input_size(); }
    std::size_t output_size() const { return layers.back().output_size(); }
    std::size_t parameter_count() const;

    bool operator==(const DenseNetwork& other) const = default;
};

DenseNetwork init_network(const std::vector<std::size_t>& layer_sizes,
                          Activation hidden_activation, Activation output_activation,
                          std::uint64_t seed);

/// Everything backward needs from a forward pass.
struct ForwardCache {
    Matrix input;
    std::vector<Matrix> pre;  // per-layer pre-activation
    std::vector<Matrix> post; // per-layer post-activation

    const Matrix& output() const { return post.back(); }
};

Matrix forward(const DenseNetwork& net, const Matrix& batch);
ForwardCache forward_cached(const DenseNetwork& net, const Matrix& batch);

struct Gradients {
    std::vector<Matrix> weights;
    std::vector<std::vector<double>> biases;
};

/// Exact reverse-mode gradients of the scalar loss whose gradient at the
/// network output is `output_gradient` (m x d_out). Summed over the batch;
/// batch averaging comes from the 1/m inside a mean-reduced loss gradient.
Gradients backward(const DenseNetwork& net, const ForwardCache& cache,
                   const Matrix& output_gradient);

/// Gradient with respect to the network *input* only. Used to chain through
/// a frozen network without touching its parameters.
Matrix backward_input(const DenseNetwork& net, const ForwardCache& cache,
                      const Matrix& output_gradient);

/// Binary checkpoint; round-trips bit-exactly.
void save_network(const DenseNetwork& net, const std::string& path);
DenseNetwork load_network(const std::string& path);
void write_network(const DenseNetwork& net, std::ostream& out);
DenseNetwork read_network(std::istream& in, const std::string& context);

} // namespace cigan

#endif
