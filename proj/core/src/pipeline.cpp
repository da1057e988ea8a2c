#include "cigan/pipeline.hpp"

#include <cmath>

#include "cigan/error.hpp"
#include "cigan/rng.hpp"

namespace cigan {

namespace {

constexpr std::uint64_t kClassifierSeedStream = 7;

struct Branch {
    Classifier classifier;
    ClassifierSpec choice;
    double val_macro_f1 = 0.0;
};

double validation_macro_f1(const Classifier& clf, const Matrix& val_x,
                           const std::vector<std::string>& val_y,
                           const std::vector<std::string>& class_order) {
    return precision_recall_f1(confusion(val_y, clf.predict(val_x), class_order)).macro_f1;
}

/// Candidate selection sees the training and validation splits only.
Branch select_and_train(const Matrix& train_x, const std::vector<std::string>& train_y,
                        const Matrix& val_x, const std::vector<std::string>& val_y,
                        const std::vector<std::string>& class_order,
                        const std::vector<ClassifierSpec>& candidates, std::uint64_t seed) {
    if (candidates.empty()) {
        throw Error(ErrorKind::InvalidConfig, "need at least one classifier candidate");
    }
    Branch best;
    bool have_best = false;
    for (const auto& spec : candidates) {
        Classifier clf = train_classifier(train_x, train_y, spec, seed);
        const double score = validation_macro_f1(clf, val_x, val_y, class_order);
        if (!have_best || score > best.val_macro_f1) {
            best = Branch{std::move(clf), spec, score};
            have_best = true;
        }
    }
    return best;
}

} // namespace

PipelineReport run_pipeline(const Dataset& dataset, const GanConfig& gan_config,
                            const SplitSpec& split,
                            const std::vector<ClassifierSpec>& candidates) {
    gan_config.validate();
    for (const auto& spec : candidates) spec.validate();

    PipelineReport report;
    report.class_order = dataset.class_labels;
    report.gan_config = gan_config;
    report.split = split;
    report.classifier_seed = mix_seed(gan_config.random_seed, kClassifierSeedStream);

    // step 1: split, then scale with a scaler fitted on the training split only
    const SplitResult parts = stratified_split(dataset, split);
    const FeatureScaler scaler = fit_scaler(parts.train);
    const Matrix train_x = scaler.transform(parts.train.features);
    const Matrix val_x = scaler.transform(parts.val.features);

    // step 2: augmentation touches the training split only
    ResampleResult resampled = fit_resample(parts.train, gan_config);
    const Matrix aug_x = scaler.transform(resampled.balanced.data.features);
    report.plan = std::move(resampled.plan);
    report.gan_logs = std::move(resampled.train_logs);

    // step 3: per-branch hyperparameter choice by validation macro-F1
    Branch baseline = select_and_train(train_x, parts.train.target, val_x, parts.val.target,
                                       report.class_order, candidates, report.classifier_seed);
    Branch augmented =
        select_and_train(aug_x, resampled.balanced.data.target, val_x, parts.val.target,
                         report.class_order, candidates, report.classifier_seed);
    report.baseline_choice = baseline.choice;
    report.augmented_choice = augmented.choice;
    report.baseline_val_macro_f1 = baseline.val_macro_f1;
    report.augmented_val_macro_f1 = augmented.val_macro_f1;

    // step 4: the only place the test split is read
    const Matrix test_x = scaler.transform(parts.test.features);
    report.baseline = precision_recall_f1(
        confusion(parts.test.target, baseline.classifier.predict(test_x), report.class_order));
    report.augmented = precision_recall_f1(
        confusion(parts.test.target, augmented.classifier.predict(test_x), report.class_order));
    return report;
}

double augmented_validation_score(const Dataset& dataset, const GanConfig& config,
                                  const SplitSpec& split, const ClassifierSpec& spec) {
    config.validate();
    spec.validate();
    const SplitResult parts = stratified_split(dataset, split);
    const FeatureScaler scaler = fit_scaler(parts.train);
    const ResampleResult resampled = fit_resample(parts.train, config);
    const Matrix aug_x = scaler.transform(resampled.balanced.data.features);
    const Matrix val_x = scaler.transform(parts.val.features);
    const Classifier clf =
        train_classifier(aug_x, resampled.balanced.data.target, spec,
                         mix_seed(config.random_seed, kClassifierSeedStream));
    return validation_macro_f1(clf, val_x, parts.val.target, dataset.class_labels);
}

std::vector<SweepTrial> sweep_grid(const GanConfig& base) {
    // base config first so a budget of one trial evaluates exactly the base
    const double lr_factors[] = {1.0, 0.1, 10.0};
    const double size_factors[] = {1.0, 0.1, 10.0};
    const int iter_factors[] = {1, 2};

    auto scale_sizes = [](const std::vector<std::size_t>& sizes, double f) {
        std::vector<std::size_t> out;
        out.reserve(sizes.size());
        for (std::size_t s : sizes) {
            out.push_back(std::max<std::size_t>(
                1, static_cast<std::size_t>(std::llround(static_cast<double>(s) * f))));
        }
        return out;
    };

    std::vector<SweepTrial> trials;
    for (double g_lr : lr_factors) {
        for (double d_lr : lr_factors) {
            for (double size : size_factors) {
                for (int iter : iter_factors) {
                    SweepTrial trial;
                    trial.g_lr_factor = g_lr;
                    trial.d_lr_factor = d_lr;
                    trial.size_factor = size;
                    trial.iter_factor = iter;
                    trial.config = base;
                    trial.config.generator_learning_rate = base.generator_learning_rate * g_lr;
                    trial.config.discriminator_learning_rate =
                        base.discriminator_learning_rate * d_lr;
                    trial.config.generator_hidden_layer_sizes =
                        scale_sizes(base.generator_hidden_layer_sizes, size);
                    trial.config.discriminator_hidden_layer_sizes =
                        scale_sizes(base.discriminator_hidden_layer_sizes, size);
                    trial.config.max_iter = base.max_iter * iter;
                    trials.push_back(std::move(trial));
                }
            }
        }
    }
    return trials;
}

std::size_t select_best_trial(const std::vector<SweepTrial>& trials) {
    std::size_t best = trials.size();
    for (std::size_t i = 0; i < trials.size(); ++i) {
        if (trials[i].failed) continue;
        if (best == trials.size() || trials[i].val_macro_f1 > trials[best].val_macro_f1) {
            best = i;
        }
    }
    if (best == trials.size()) {
        throw Error(ErrorKind::NonFiniteLoss, "all sweep trials failed");
    }
    return best;
}

SweepResult sweep_over(const Dataset& dataset, std::vector<SweepTrial> trials,
                       const SplitSpec& split, const ClassifierSpec& spec) {
    for (auto& trial : trials) {
        try {
            trial.val_macro_f1 = augmented_validation_score(dataset, trial.config, split, spec);
        } catch (const Error& e) {
            trial.failed = true;
            trial.error = e.what();
        }
    }
    SweepResult result;
    result.best_index = select_best_trial(trials);
    result.best = trials[result.best_index].config;
    result.trials = std::move(trials);
    return result;
}

SweepResult sweep(const Dataset& dataset, const GanConfig& base, const SplitSpec& split,
                  const ClassifierSpec& spec, std::size_t max_trials) {
    if (max_trials == 0) {
        throw Error(ErrorKind::InvalidConfig, "sweep needs a budget of at least one trial");
    }
    std::vector<SweepTrial> trials = sweep_grid(base);
    if (trials.size() > max_trials) trials.resize(max_trials);
    return sweep_over(dataset, std::move(trials), split, spec);
}

} // namespace cigan
