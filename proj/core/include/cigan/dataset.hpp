#ifndef CIGAN_DATASET_HPP
#define CIGAN_DATASET_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cigan/matrix.hpp"

namespace cigan {

/// Feature matrix plus a class-labeled target column. Immutable once built;
/// class_labels always lists the distinct target values in first-appearance
/// order.
struct Dataset {
    Matrix features;                        // n x d
    std::vector<std::string> target;        // length n
    std::vector<std::string> feature_names; // length d
    std::vector<std::string> class_labels;  // distinct, first-appearance order

    std::size_t size() const noexcept { return target.size(); }
    std::size_t dim() const noexcept { return features.cols(); }

    /// Rows whose target equals `label`, in original order.
    Matrix rows_of_class(const std::string& label) const;
    /// Original row indices whose target equals `label`.
    std::vector<std::size_t> indices_of_class(const std::string& label) const;
};

/// Validates the Dataset invariants and computes class_labels.
Dataset make_dataset(Matrix features, std::vector<std::string> target,
                     std::vector<std::string> feature_names);

Dataset load_csv(const std::string& path, const std::string& target_column);

/// Writes the round-trip CSV format: header row, comma separator, reals with
/// 17 significant digits, target as the last column. `extra` optionally
/// appends one more column after the target.
struct ExtraColumn {
    std::string name;
    std::vector<std::string> values;
};
void write_csv(const Dataset& dataset, const std::string& path,
               const std::string& target_name = "__target__",
               const ExtraColumn* extra = nullptr);

std::map<std::string, std::size_t> class_counts(const Dataset& dataset);

/// Per-feature min-max scaling onto [-1, 1]. Constant features map to 0 and
/// invert back to the constant.
struct FeatureScaler {
    std::vector<double> mins;
    std::vector<double> maxs;

    std::size_t dim() const noexcept { return mins.size(); }
    bool is_constant(std::size_t j) const { return maxs[j] == mins[j]; }

    Matrix transform(const Matrix& features) const;
    Matrix inverse_transform(const Matrix& scaled) const;
};

FeatureScaler fit_scaler(const Dataset& dataset);

struct SplitSpec {
    double train_fraction = 0.6;
    double val_fraction = 0.2;
    double test_fraction = 0.2;
    std::uint64_t seed = 42;

    void validate() const; // fractions in (0,1), summing to 1 within 1e-9
};

struct SplitResult {
    Dataset train;
    Dataset val;
    Dataset test;
};

/// Largest-remainder allocation of `count` items over `fractions`, with ties
/// broken in partition order and every partition guaranteed at least one item
/// (taking from the largest partition when the remainder rule leaves a zero).
std::vector<std::size_t> allocate_partitions(std::size_t count,
                                             const std::vector<double>& fractions);

/// Per-class largest-remainder split, deterministic given spec.seed. Every
/// class needs at least 3 samples so each partition can receive one.
SplitResult stratified_split(const Dataset& dataset, const SplitSpec& spec);

} // namespace cigan

#endif
