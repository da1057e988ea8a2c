#ifndef CIGAN_RESAMPLER_HPP
#define CIGAN_RESAMPLER_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cigan/dataset.hpp"
#include "cigan/gan.hpp"

namespace cigan {

/// Per-class augmentation arithmetic: how many synthetic rows each class
/// needs to reach the majority count.
struct ResamplePlan {
    struct Entry {
        std::string label;
        std::size_t count = 0;
        std::size_t deficit = 0; // majority_count - count
        bool augment = false;
    };
    std::size_t majority_count = 0;
    std::vector<Entry> entries; // first-appearance class order

    bool anything_to_augment() const {
        for (const auto& e : entries) {
            if (e.augment) return true;
        }
        return false;
    }
};

/// minor_classes empty (= 'all') marks every class below the majority count;
/// an explicit list marks only those classes. Listing an unknown class or a
/// class already at the majority count is an error.
ResamplePlan make_plan(const std::vector<std::string>& y_train,
                       const std::optional<std::vector<std::string>>& minor_classes);

/// Every class tied at the maximum count counts as majority.
std::vector<std::string> majority_set(const std::map<std::string, std::size_t>& counts);

enum class RowOrigin : std::uint8_t { Original, Synthetic };

/// Balanced output: all original rows verbatim and first, synthetic rows
/// appended grouped by class in class-label order.
struct BalancedDataset {
    Dataset data;
    std::vector<RowOrigin> origin;         // per row
    std::vector<std::string> source_class; // per row, the class it was drawn for
};

struct ClassTrainLog {
    std::string label;
    TrainLog log;
};

struct ResampleResult {
    BalancedDataset balanced;
    ResamplePlan plan;
    std::vector<ClassTrainLog> train_logs; // augmented classes, class order
};

/// The end-to-end oversampler: fits the scaler on the given training data,
/// trains one GAN per augmented class on that class's scaled rows, generates
/// exactly the deficit, and maps it back to feature space. Per-class work
/// runs on up to config.n_jobs workers; results are merged in class order,
/// so output is identical for any n_jobs.
ResampleResult fit_resample(const Dataset& train, const GanConfig& config);

} // namespace cigan

#endif
