#ifndef CIGAN_GAN_HPP
#define CIGAN_GAN_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cigan/adam.hpp"
#include "cigan/network.hpp"
#include "cigan/rng.hpp"

namespace cigan {

/// The full tuning surface: one field per user-facing parameter, defaults
/// as documented. The training data itself travels separately as a Dataset.
struct GanConfig {
    /// Classes to oversample; empty optional means every minority class.
    std::optional<std::vector<std::string>> minor_classes;
    /// Latent noise width; empty optional means half the feature count.
    std::optional<int> coding_size;
    int batch_size = 32;
    int max_iter = 10;
    std::vector<std::size_t> generator_hidden_layer_sizes{100, 200, 300, 400, 500};
    std::vector<std::size_t> discriminator_hidden_layer_sizes{500, 400, 300, 200, 100};
    Activation generator_hidden_layer_activation = Activation::Selu;
    Activation discriminator_hidden_layer_activation = Activation::Selu;
    std::string generator_optimizer = "adam";
    std::string discriminator_optimizer = "adam";
    double generator_learning_rate = 1e-4;
    double discriminator_learning_rate = 1e-4;
    std::uint64_t random_seed = 42;
    int n_jobs = 1;

    void validate() const;
};

/// Hidden-size ordering guidance: generator widths should ascend and
/// discriminator widths descend. Violations warn, never error.
std::vector<std::string> architecture_warnings(const GanConfig& config);

/// 'auto' resolves to max(1, floor(d/2)); explicit values pass through.
std::size_t resolve_coding_size(const GanConfig& config, std::size_t feature_count);

/// A generator/discriminator pair bound to one class. The generator maps
/// coding_size-wide gaussian noise to a d-wide tanh output; the discriminator
/// maps d features to one sigmoid score.
struct GanModel {
    std::string class_label;
    DenseNetwork generator;
    DenseNetwork discriminator;
    std::size_t coding_size = 0;
    std::uint64_t rng_seed = 0;
};

GanModel build_gan(const GanConfig& config, std::size_t feature_count,
                   const std::string& class_label, std::uint64_t seed);

struct TrainLog {
    struct Epoch {
        double d_loss;
        double g_loss;
    };
    std::vector<Epoch> epochs;
    std::size_t minibatches_per_epoch = 0;
};

/// CSV export: header "epoch,d_loss,g_loss", one row per epoch.
void write_train_log_csv(const TrainLog& log, const std::string& path);

/// One discriminator update: BCE on `real_batch` labeled 1 against an
/// equal-sized generated batch labeled 0. Returns the minibatch loss.
double gan_discriminator_step(GanModel& model, AdamState& disc_state,
                              const Matrix& real_batch, Rng& rng);

/// One generator update with the non-saturating loss: BCE of the
/// discriminator's score on a fresh generated batch against label 1.
/// Gradients flow through the frozen discriminator into the generator only.
double gan_generator_step(GanModel& model, AdamState& gen_state, std::size_t batch_rows,
                          Rng& rng);

/// Adversarial training on the samples of one class (already in scaled
/// space). Per epoch: shuffle, then for each minibatch run one discriminator
/// step followed by one generator step. Aborts with NonFiniteLoss rather
/// than ever returning non-finite parameters.
TrainLog train_gan(GanModel& model, const Matrix& class_samples, const GanConfig& config);

/// Draws n synthetic rows in scaled space, deterministic given noise_seed.
Matrix generate(const GanModel& model, std::size_t n, std::uint64_t noise_seed);

/// Model checkpoint in the network round-trip format; bit-exact.
void save_gan_model(const GanModel& model, const std::string& path);
GanModel load_gan_model(const std::string& path);

} // namespace cigan

#endif
