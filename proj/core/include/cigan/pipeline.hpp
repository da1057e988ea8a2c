#ifndef CIGAN_PIPELINE_HPP
#define CIGAN_PIPELINE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "cigan/classifier.hpp"
#include "cigan/dataset.hpp"
#include "cigan/gan.hpp"
#include "cigan/metrics.hpp"
#include "cigan/resampler.hpp"

namespace cigan {

/// Side-by-side test-set metrics for a classifier trained on the imbalanced
/// training split (baseline) and on the GAN-balanced one (augmented). Both
/// blocks are computed on the identical untouched test split.
struct PipelineReport {
    std::vector<std::string> class_order;
    ClassMetrics baseline;
    ClassMetrics augmented;
    ClassifierSpec baseline_choice;
    ClassifierSpec augmented_choice;
    double baseline_val_macro_f1 = 0.0;
    double augmented_val_macro_f1 = 0.0;
    GanConfig gan_config;
    SplitSpec split;
    std::uint64_t classifier_seed = 0;
    ResamplePlan plan;
    std::vector<ClassTrainLog> gan_logs;
};

/// Four steps: (1) stratified split and train-fitted scaling, (2) GAN
/// augmentation of the training split only, (3) classifier training with
/// candidate selection by validation macro-F1, (4) evaluation of both
/// branches on the test split. Steps 1-3 never see the test data.
PipelineReport run_pipeline(const Dataset& dataset, const GanConfig& gan_config,
                            const SplitSpec& split,
                            const std::vector<ClassifierSpec>& candidates);

inline PipelineReport run_pipeline(const Dataset& dataset, const GanConfig& gan_config,
                                   const SplitSpec& split, const ClassifierSpec& spec) {
    return run_pipeline(dataset, gan_config, split, std::vector<ClassifierSpec>{spec});
}

/// Validation macro-F1 of a classifier trained on the augmented training
/// split under `config`; the scoring function the sweep maximizes.
double augmented_validation_score(const Dataset& dataset, const GanConfig& config,
                                  const SplitSpec& split, const ClassifierSpec& spec);

struct SweepTrial {
    GanConfig config;
    double g_lr_factor = 1.0;
    double d_lr_factor = 1.0;
    double size_factor = 1.0;
    int iter_factor = 1;
    bool failed = false;
    std::string error;
    double val_macro_f1 = 0.0;
};

struct SweepResult {
    std::size_t best_index = 0;
    GanConfig best;
    std::vector<SweepTrial> trials;
};

/// The tuning grid: both learning rates x {1, 0.1, 10}, hidden layer widths
/// x {1, 0.1, 10}, max_iter x {1, 2}. 54 trials, base config first, in
/// fixed nesting order (generator lr, discriminator lr, width, iterations).
std::vector<SweepTrial> sweep_grid(const GanConfig& base);

/// Index of the highest validation score among non-failed trials, ties to
/// the earliest trial.
std::size_t select_best_trial(const std::vector<SweepTrial>& trials);

/// Evaluates the given trials in order; a failed trial is recorded and
/// skipped. Throws only when every trial failed.
SweepResult sweep_over(const Dataset& dataset, std::vector<SweepTrial> trials,
                       const SplitSpec& split, const ClassifierSpec& spec);

SweepResult sweep(const Dataset& dataset, const GanConfig& base, const SplitSpec& split,
                  const ClassifierSpec& spec, std::size_t max_trials);

} // namespace cigan

#endif
