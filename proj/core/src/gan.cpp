#include "cigan/gan.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numeric>

#include "cigan/error.hpp"

namespace cigan {

namespace {

// fixed stream offsets for deriving sub-seeds from a model seed
constexpr std::uint64_t kGeneratorInitStream = 1;
constexpr std::uint64_t kDiscriminatorInitStream = 2;
constexpr std::uint64_t kTrainStream = 3;

Matrix sample_latent(std::size_t rows, std::size_t coding_size, Rng& rng) {
    Matrix z(rows, coding_size);
    for (double& v : z.flat()) v = rng.normal();
    return z;
}

bool ascending(const std::vector<std::size_t>& v) {
    return std::is_sorted(v.begin(), v.end());
}

bool descending(const std::vector<std::size_t>& v) {
    return std::is_sorted(v.rbegin(), v.rend());
}

} // namespace

void GanConfig::validate() const {
    if (batch_size < 1) {
        throw Error(ErrorKind::InvalidConfig, "batch_size must be at least 1");
    }
    if (max_iter < 0) {
        throw Error(ErrorKind::InvalidConfig, "max_iter must be non-negative");
    }
    for (const auto* sizes : {&generator_hidden_layer_sizes, &discriminator_hidden_layer_sizes}) {
        if (sizes->empty()) {
            throw Error(ErrorKind::InvalidConfig, "hidden layer size lists must be non-empty");
        }
        for (std::size_t s : *sizes) {
            if (s < 1) {
                throw Error(ErrorKind::InvalidConfig, "hidden layer sizes must be positive");
            }
        }
    }
    if (!(generator_learning_rate > 0.0) || !(discriminator_learning_rate > 0.0)) {
        throw Error(ErrorKind::InvalidConfig, "learning rates must be positive");
    }
    if (coding_size && *coding_size < 1) {
        throw Error(ErrorKind::InvalidCodingSize, "explicit coding_size must be at least 1");
    }
    for (const auto& opt : {generator_optimizer, discriminator_optimizer}) {
        if (opt != "adam") {
            throw Error(ErrorKind::InvalidConfig, "unsupported optimizer '" + opt + "'");
        }
    }
    if (n_jobs < 1) {
        throw Error(ErrorKind::InvalidConfig, "n_jobs must be at least 1");
    }
}

std::vector<std::string> architecture_warnings(const GanConfig& config) {
    std::vector<std::string> warnings;
    if (!ascending(config.generator_hidden_layer_sizes)) {
        warnings.push_back("generator_hidden_layer_sizes is not in ascending order");
    }
    if (!descending(config.discriminator_hidden_layer_sizes)) {
        warnings.push_back("discriminator_hidden_layer_sizes is not in descending order");
    }
    return warnings;
}

std::size_t resolve_coding_size(const GanConfig& config, std::size_t feature_count) {
    if (config.coding_size) {
        if (*config.coding_size < 1) {
            throw Error(ErrorKind::InvalidCodingSize, "explicit coding_size must be at least 1");
        }
        return static_cast<std::size_t>(*config.coding_size);
    }
    return std::max<std::size_t>(1, feature_count / 2);
}

GanModel build_gan(const GanConfig& config, std::size_t feature_count,
                   const std::string& class_label, std::uint64_t seed) {
    const std::size_t coding = resolve_coding_size(config, feature_count);

    std::vector<std::size_t> gen_sizes;
    gen_sizes.push_back(coding);
    gen_sizes.insert(gen_sizes.end(), config.generator_hidden_layer_sizes.begin(),
                     config.generator_hidden_layer_sizes.end());
    gen_sizes.push_back(feature_count);

    std::vector<std::size_t> disc_sizes;
    disc_sizes.push_back(feature_count);
    disc_sizes.insert(disc_sizes.end(), config.discriminator_hidden_layer_sizes.begin(),
                      config.discriminator_hidden_layer_sizes.end());
    disc_sizes.push_back(1);

    GanModel model;
    model.class_label = class_label;
    model.coding_size = coding;
    model.rng_seed = seed;
    model.generator = init_network(gen_sizes, config.generator_hidden_layer_activation,
                                   Activation::Tanh, mix_seed(seed, kGeneratorInitStream));
    model.discriminator =
        init_network(disc_sizes, config.discriminator_hidden_layer_activation,
                     Activation::Sigmoid, mix_seed(seed, kDiscriminatorInitStream));
    return model;
}

void write_train_log_csv(const TrainLog& log, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw Error(ErrorKind::IoError, "cannot write " + path);
    }
    out << "epoch,d_loss,g_loss\n";
    char buf[80];
    for (std::size_t e = 0; e < log.epochs.size(); ++e) {
        std::snprintf(buf, sizeof(buf), "%zu,%.17g,%.17g\n", e, log.epochs[e].d_loss,
                      log.epochs[e].g_loss);
        out << buf;
    }
}

double gan_discriminator_step(GanModel& model, AdamState& disc_state,
                              const Matrix& real_batch, Rng& rng) {
    const std::size_t b = real_batch.rows();
    const Matrix fake = forward(model.generator, sample_latent(b, model.coding_size, rng));

    Matrix combined(2 * b, real_batch.cols());
    Matrix labels(2 * b, 1);
    for (std::size_t i = 0; i < b; ++i) {
        std::copy(real_batch.row(i).begin(), real_batch.row(i).end(), combined.row(i).begin());
        std::copy(fake.row(i).begin(), fake.row(i).end(), combined.row(b + i).begin());
        labels(i, 0) = 1.0;
        labels(b + i, 0) = 0.0;
    }

    const ForwardCache cache = forward_cached(model.discriminator, combined);
    const double loss = bce_loss(cache.output(), labels);
    const Gradients grads =
        backward(model.discriminator, cache, bce_grad(cache.output(), labels));
    adam_step(model.discriminator, grads, disc_state);
    return loss;
}

double gan_generator_step(GanModel& model, AdamState& gen_state, std::size_t batch_rows,
                          Rng& rng) {
    const ForwardCache gen_cache =
        forward_cached(model.generator, sample_latent(batch_rows, model.coding_size, rng));
    const ForwardCache disc_cache = forward_cached(model.discriminator, gen_cache.output());

    const Matrix ones(batch_rows, 1, 1.0);
    const double loss = bce_loss(disc_cache.output(), ones);

    // non-saturating loss: push D(G(z)) toward 1, updating the generator only
    const Matrix d_fake =
        backward_input(model.discriminator, disc_cache, bce_grad(disc_cache.output(), ones));
    const Gradients grads = backward(model.generator, gen_cache, d_fake);
    adam_step(model.generator, grads, gen_state);
    return loss;
}

TrainLog train_gan(GanModel& model, const Matrix& class_samples, const GanConfig& config) {
    config.validate();
    const std::size_t m = class_samples.rows();
    if (m < 2) {
        throw Error(ErrorKind::DegenerateClass,
                    "class '" + model.class_label + "' has " + std::to_string(m) +
                        " samples, need at least 2 to train");
    }
    if (class_samples.cols() != model.generator.output_size()) {
        throw Error(ErrorKind::DimensionMismatch, "sample width does not match generator output");
    }

    const std::size_t batch = std::min<std::size_t>(config.batch_size, m);
    Rng rng(mix_seed(model.rng_seed, kTrainStream));
    AdamState gen_state =
        make_adam_state(model.generator, AdamConfig{.learning_rate = config.generator_learning_rate});
    AdamState disc_state = make_adam_state(
        model.discriminator, AdamConfig{.learning_rate = config.discriminator_learning_rate});

    TrainLog log;
    log.minibatches_per_epoch = (m + batch - 1) / batch;
    log.epochs.reserve(static_cast<std::size_t>(config.max_iter));

    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);

    for (int epoch = 0; epoch < config.max_iter; ++epoch) {
        rng.shuffle(order);
        double d_sum = 0.0;
        double g_sum = 0.0;
        std::size_t batches = 0;
        for (std::size_t pos = 0; pos < m; pos += batch) {
            const std::size_t rows = std::min(batch, m - pos);
            Matrix real(rows, class_samples.cols());
            for (std::size_t i = 0; i < rows; ++i) {
                auto src = class_samples.row(order[pos + i]);
                std::copy(src.begin(), src.end(), real.row(i).begin());
            }
            const double d_loss = gan_discriminator_step(model, disc_state, real, rng);
            const double g_loss = gan_generator_step(model, gen_state, rows, rng);
            if (!std::isfinite(d_loss) || !std::isfinite(g_loss)) {
                throw Error(ErrorKind::NonFiniteLoss,
                            "training diverged at epoch " + std::to_string(epoch) +
                                " for class '" + model.class_label + "'");
            }
            d_sum += d_loss;
            g_sum += g_loss;
            ++batches;
        }
        auto finite = [](const DenseNetwork& net) {
            for (const auto& layer : net.layers) {
                if (!layer.weights.all_finite()) return false;
                for (double b : layer.bias) {
                    if (!std::isfinite(b)) return false;
                }
            }
            return true;
        };
        if (!finite(model.generator) || !finite(model.discriminator)) {
            throw Error(ErrorKind::NonFiniteLoss,
                        "parameters diverged at epoch " + std::to_string(epoch) +
                            " for class '" + model.class_label + "'");
        }
        log.epochs.push_back({d_sum / static_cast<double>(batches),
                              g_sum / static_cast<double>(batches)});
    }
    return log;
}

Matrix generate(const GanModel& model, std::size_t n, std::uint64_t noise_seed) {
    Rng rng(noise_seed);
    Matrix out = forward(model.generator, sample_latent(n, model.coding_size, rng));
    // tanh can round to exactly +/-1 for saturated pre-activations; nudge back
    // inside the open interval the contract promises
    const double hi = std::nextafter(1.0, 0.0);
    for (double& v : out.flat()) v = std::clamp(v, -hi, hi);
    return out;
}

namespace {
constexpr char kModelMagic[8] = {'C', 'I', 'G', 'A', 'N', 'G', 'M', '1'};
}

void save_gan_model(const GanModel& model, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(ErrorKind::IoError, "cannot write " + path);
    }
    out.write(kModelMagic, sizeof(kModelMagic));
    const std::uint64_t label_size = model.class_label.size();
    out.write(reinterpret_cast<const char*>(&label_size), sizeof(label_size));
    out.write(model.class_label.data(), static_cast<std::streamsize>(label_size));
    const std::uint64_t coding = model.coding_size;
    out.write(reinterpret_cast<const char*>(&coding), sizeof(coding));
    out.write(reinterpret_cast<const char*>(&model.rng_seed), sizeof(model.rng_seed));
    write_network(model.generator, out);
    write_network(model.discriminator, out);
    if (!out) {
        throw Error(ErrorKind::IoError, "write failed for " + path);
    }
}

GanModel load_gan_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorKind::IoError, "cannot open " + path);
    }
    char magic[8];
    in.read(magic, sizeof(magic));
    if (!in || std::memcmp(magic, kModelMagic, sizeof(magic)) != 0) {
        throw Error(ErrorKind::IoError, path + ": not a model checkpoint");
    }
    GanModel model;
    std::uint64_t label_size = 0;
    in.read(reinterpret_cast<char*>(&label_size), sizeof(label_size));
    model.class_label.resize(label_size);
    in.read(model.class_label.data(), static_cast<std::streamsize>(label_size));
    std::uint64_t coding = 0;
    in.read(reinterpret_cast<char*>(&coding), sizeof(coding));
    model.coding_size = coding;
    in.read(reinterpret_cast<char*>(&model.rng_seed), sizeof(model.rng_seed));
    if (!in) {
        throw Error(ErrorKind::IoError, path + ": truncated model checkpoint");
    }
    model.generator = read_network(in, path);
    model.discriminator = read_network(in, path);
    return model;
}

} // namespace cigan
