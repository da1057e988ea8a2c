#include "cigan/network.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>

#include "cigan/error.hpp"
#include "cigan/rng.hpp"

namespace cigan {

Activation activation_from_name(std::string_view name) {
    if (name == "linear") return Activation::Linear;
    if (name == "selu") return Activation::Selu;
    if (name == "sigmoid") return Activation::Sigmoid;
    if (name == "tanh") return Activation::Tanh;
    if (name == "softmax") return Activation::Softmax;
    throw Error(ErrorKind::InvalidConfig, "unknown activation '" + std::string(name) + "'");
}

const char* activation_name(Activation a) {
    switch (a) {
    case Activation::Linear: return "linear";
    case Activation::Selu: return "selu";
    case Activation::Sigmoid: return "sigmoid";
    case Activation::Tanh: return "tanh";
    case Activation::Softmax: return "softmax";
    }
    return "unknown";
}

double selu(double x) {
    return x > 0.0 ? kSeluLambda * x : kSeluLambda * kSeluAlpha * std::expm1(x);
}

double selu_grad(double x) {
    return x > 0.0 ? kSeluLambda : kSeluLambda * kSeluAlpha * std::exp(x);
}

double sigmoid(double x) {
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
    const double e = std::exp(x);
    return e / (1.0 + e);
}

namespace {

constexpr double kBceClamp = 1e-7;

double clamp_p(double p) {
    return std::min(1.0 - kBceClamp, std::max(kBceClamp, p));
}

void apply_activation(Activation a, Matrix& m) {
    switch (a) {
    case Activation::Linear:
        return;
    case Activation::Selu:
        for (double& v : m.flat()) v = selu(v);
        return;
    case Activation::Sigmoid:
        for (double& v : m.flat()) v = sigmoid(v);
        return;
    case Activation::Tanh:
        for (double& v : m.flat()) v = std::tanh(v);
        return;
    case Activation::Softmax:
        for (std::size_t i = 0; i < m.rows(); ++i) {
            auto row = m.row(i);
            const double mx = *std::max_element(row.begin(), row.end());
            double sum = 0.0;
            for (double& v : row) {
                v = std::exp(v - mx);
                sum += v;
            }
            for (double& v : row) v /= sum;
        }
        return;
    }
}

/// dL/dpre from dL/dpost for one layer.
Matrix activation_pullback(Activation a, const Matrix& pre, const Matrix& post,
                           const Matrix& dpost) {
    Matrix d = dpost;
    switch (a) {
    case Activation::Linear:
        break;
    case Activation::Selu:
        for (std::size_t i = 0; i < d.flat().size(); ++i) {
            d.flat()[i] *= selu_grad(pre.flat()[i]);
        }
        break;
    case Activation::Sigmoid:
        for (std::size_t i = 0; i < d.flat().size(); ++i) {
            const double s = post.flat()[i];
            d.flat()[i] *= s * (1.0 - s);
        }
        break;
    case Activation::Tanh:
        for (std::size_t i = 0; i < d.flat().size(); ++i) {
            const double t = post.flat()[i];
            d.flat()[i] *= 1.0 - t * t;
        }
        break;
    case Activation::Softmax:
        // row-wise Jacobian: dpre_i = p_i * (dpost_i - sum_j dpost_j p_j)
        for (std::size_t i = 0; i < d.rows(); ++i) {
            double dot = 0.0;
            for (std::size_t j = 0; j < d.cols(); ++j) dot += dpost(i, j) * post(i, j);
            for (std::size_t j = 0; j < d.cols(); ++j) {
                d(i, j) = post(i, j) * (dpost(i, j) - dot);
            }
        }
        break;
    }
    return d;
}

Matrix last_layer_delta(const DenseNetwork& net, const ForwardCache& cache,
                        const Matrix& output_gradient) {
    if (cache.post.size() != net.layers.size() || cache.pre.size() != net.layers.size()) {
        throw Error(ErrorKind::CacheMismatch, "cache does not match network depth");
    }
    if (!output_gradient.same_shape(cache.post.back())) {
        throw Error(ErrorKind::CacheMismatch, "output gradient shape does not match cache");
    }
    const std::size_t last = net.layers.size() - 1;
    return activation_pullback(net.layers[last].activation, cache.pre[last], cache.post[last],
                               output_gradient);
}

} // namespace

double bce_loss(const Matrix& predictions, const Matrix& labels) {
    if (!predictions.same_shape(labels)) {
        throw Error(ErrorKind::ShapeMismatch, "bce_loss: shape mismatch");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < predictions.flat().size(); ++i) {
        const double p = clamp_p(predictions.flat()[i]);
        const double y = labels.flat()[i];
        sum -= y * std::log(p) + (1.0 - y) * std::log(1.0 - p);
    }
    return sum / static_cast<double>(predictions.flat().size());
}

Matrix bce_grad(const Matrix& predictions, const Matrix& labels) {
    if (!predictions.same_shape(labels)) {
        throw Error(ErrorKind::ShapeMismatch, "bce_grad: shape mismatch");
    }
    Matrix g(predictions.rows(), predictions.cols());
    const double n = static_cast<double>(predictions.flat().size());
    for (std::size_t i = 0; i < predictions.flat().size(); ++i) {
        const double p = clamp_p(predictions.flat()[i]);
        const double y = labels.flat()[i];
        g.flat()[i] = (p - y) / (p * (1.0 - p) * n);
    }
    return g;
}

std::size_t DenseNetwork::parameter_count() const {
    std::size_t n = 0;
    for (const auto& layer : layers) {
        n += layer.weights.flat().size() + layer.bias.size();
    }
    return n;
}

DenseNetwork init_network(const std::vector<std::size_t>& layer_sizes,
                          Activation hidden_activation, Activation output_activation,
                          std::uint64_t seed) {
    if (layer_sizes.size() < 2) {
        throw Error(ErrorKind::InvalidArchitecture, "need at least input and output sizes");
    }
    for (std::size_t s : layer_sizes) {
        if (s < 1) {
            throw Error(ErrorKind::InvalidArchitecture, "layer sizes must be positive");
        }
    }
    Rng rng(seed);
    DenseNetwork net;
    net.layers.reserve(layer_sizes.size() - 1);
    for (std::size_t l = 0; l + 1 < layer_sizes.size(); ++l) {
        Layer layer;
        layer.weights = Matrix(layer_sizes[l], layer_sizes[l + 1]);
        const double stddev = 1.0 / std::sqrt(static_cast<double>(layer_sizes[l]));
        for (double& w : layer.weights.flat()) w = rng.normal() * stddev;
        layer.bias.assign(layer_sizes[l + 1], 0.0);
        layer.activation =
            (l + 2 == layer_sizes.size()) ? output_activation : hidden_activation;
        net.layers.push_back(std::move(layer));
    }
    return net;
}

Matrix forward(const DenseNetwork& net, const Matrix& batch) {
    if (batch.cols() != net.input_size()) {
        throw Error(ErrorKind::DimensionMismatch, "batch width does not match network input");
    }
    Matrix x = batch;
    for (const auto& layer : net.layers) {
        Matrix z = matmul(x, layer.weights);
        for (std::size_t i = 0; i < z.rows(); ++i) {
            auto row = z.row(i);
            for (std::size_t j = 0; j < row.size(); ++j) row[j] += layer.bias[j];
        }
        apply_activation(layer.activation, z);
        x = std::move(z);
    }
    return x;
}

ForwardCache forward_cached(const DenseNetwork& net, const Matrix& batch) {
    if (batch.cols() != net.input_size()) {
        throw Error(ErrorKind::DimensionMismatch, "batch width does not match network input");
    }
    ForwardCache cache;
    cache.input = batch;
    cache.pre.reserve(net.layers.size());
    cache.post.reserve(net.layers.size());
    const Matrix* x = &cache.input;
    for (const auto& layer : net.layers) {
        Matrix z = matmul(*x, layer.weights);
        for (std::size_t i = 0; i < z.rows(); ++i) {
            auto row = z.row(i);
            for (std::size_t j = 0; j < row.size(); ++j) row[j] += layer.bias[j];
        }
        cache.pre.push_back(z);
        apply_activation(layer.activation, z);
        cache.post.push_back(std::move(z));
        x = &cache.post.back();
    }
    return cache;
}

Gradients backward(const DenseNetwork& net, const ForwardCache& cache,
                   const Matrix& output_gradient) {
    Matrix delta = last_layer_delta(net, cache, output_gradient);
    Gradients grads;
    grads.weights.resize(net.layers.size());
    grads.biases.resize(net.layers.size());
    for (std::size_t l = net.layers.size(); l-- > 0;) {
        const Matrix& layer_input = (l == 0) ? cache.input : cache.post[l - 1];
        grads.weights[l] = matmul_at(layer_input, delta);
        auto& bias = grads.biases[l];
        bias.assign(delta.cols(), 0.0);
        for (std::size_t i = 0; i < delta.rows(); ++i) {
            for (std::size_t j = 0; j < delta.cols(); ++j) bias[j] += delta(i, j);
        }
        if (l > 0) {
            Matrix dpost = matmul_bt(delta, net.layers[l].weights);
            delta = activation_pullback(net.layers[l - 1].activation, cache.pre[l - 1],
                                        cache.post[l - 1], dpost);
        }
    }
    return grads;
}

Matrix backward_input(const DenseNetwork& net, const ForwardCache& cache,
                      const Matrix& output_gradient) {
    Matrix delta = last_layer_delta(net, cache, output_gradient);
    for (std::size_t l = net.layers.size(); l-- > 0;) {
        Matrix dpost = matmul_bt(delta, net.layers[l].weights);
        if (l == 0) return dpost;
        delta = activation_pullback(net.layers[l - 1].activation, cache.pre[l - 1],
                                    cache.post[l - 1], dpost);
    }
    return delta; // unreachable: networks always have at least one layer
}

namespace {
constexpr char kCheckpointMagic[8] = {'C', 'I', 'G', 'A', 'N', 'N', 'W', '1'};
}

void write_network(const DenseNetwork& net, std::ostream& out) {
    out.write(kCheckpointMagic, sizeof(kCheckpointMagic));
    const std::uint64_t n_layers = net.layers.size();
    out.write(reinterpret_cast<const char*>(&n_layers), sizeof(n_layers));
    for (const auto& layer : net.layers) {
        const std::uint64_t d_in = layer.weights.rows();
        const std::uint64_t d_out = layer.weights.cols();
        const std::uint8_t tag = static_cast<std::uint8_t>(layer.activation);
        out.write(reinterpret_cast<const char*>(&d_in), sizeof(d_in));
        out.write(reinterpret_cast<const char*>(&d_out), sizeof(d_out));
        out.write(reinterpret_cast<const char*>(&tag), sizeof(tag));
        out.write(reinterpret_cast<const char*>(layer.weights.data()),
                  static_cast<std::streamsize>(layer.weights.flat().size() * sizeof(double)));
        out.write(reinterpret_cast<const char*>(layer.bias.data()),
                  static_cast<std::streamsize>(layer.bias.size() * sizeof(double)));
    }
}

DenseNetwork read_network(std::istream& in, const std::string& context) {
    char magic[8];
    in.read(magic, sizeof(magic));
    if (!in || std::memcmp(magic, kCheckpointMagic, sizeof(magic)) != 0) {
        throw Error(ErrorKind::IoError, context + ": not a network checkpoint");
    }
    std::uint64_t n_layers = 0;
    in.read(reinterpret_cast<char*>(&n_layers), sizeof(n_layers));
    DenseNetwork net;
    for (std::uint64_t l = 0; l < n_layers; ++l) {
        std::uint64_t d_in = 0, d_out = 0;
        std::uint8_t tag = 0;
        in.read(reinterpret_cast<char*>(&d_in), sizeof(d_in));
        in.read(reinterpret_cast<char*>(&d_out), sizeof(d_out));
        in.read(reinterpret_cast<char*>(&tag), sizeof(tag));
        if (!in) {
            throw Error(ErrorKind::IoError, context + ": truncated checkpoint");
        }
        Layer layer;
        layer.weights = Matrix(d_in, d_out);
        layer.bias.resize(d_out);
        in.read(reinterpret_cast<char*>(layer.weights.data()),
                static_cast<std::streamsize>(d_in * d_out * sizeof(double)));
        in.read(reinterpret_cast<char*>(layer.bias.data()),
                static_cast<std::streamsize>(d_out * sizeof(double)));
        layer.activation = static_cast<Activation>(tag);
        net.layers.push_back(std::move(layer));
    }
    if (!in) {
        throw Error(ErrorKind::IoError, context + ": truncated checkpoint");
    }
    return net;
}

void save_network(const DenseNetwork& net, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(ErrorKind::IoError, "cannot write " + path);
    }
    write_network(net, out);
    if (!out) {
        throw Error(ErrorKind::IoError, "write failed for " + path);
    }
}

DenseNetwork load_network(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorKind::IoError, "cannot open " + path);
    }
    return read_network(in, path);
}

} // namespace cigan
