#ifndef CIGAN_ERROR_HPP
#define CIGAN_ERROR_HPP

#include <stdexcept>
#include <string>

namespace cigan {

/// What went wrong, at the granularity callers branch on.
enum class ErrorKind {
    // configuration / validation
    InvalidArchitecture,
    InvalidCodingSize,
    InvalidConfig,
    MajorityInMinorList,
    SingleClassSoftmax,
    // data
    MissingTargetColumn,
    NonNumericFeatureCell,
    RaggedRow,
    EmptyDataset,
    EmptyTrainingSet,
    ClassTooSmall,
    DegenerateClass,
    UnknownClass,
    UnknownLabel,
    DimensionMismatch,
    ShapeMismatch,
    LengthMismatch,
    CacheMismatch,
    IoError,
    // training
    NonFiniteLoss,
};

/// Broad category used for CLI exit codes: 1 config, 2 data, 3 training.
enum class ErrorCategory { Config = 1, Data = 2, Training = 3 };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string message)
        : std::runtime_error(std::move(message)), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

    ErrorCategory category() const noexcept {
        switch (kind_) {
        case ErrorKind::InvalidArchitecture:
        case ErrorKind::InvalidCodingSize:
        case ErrorKind::InvalidConfig:
        case ErrorKind::MajorityInMinorList:
        case ErrorKind::SingleClassSoftmax:
            return ErrorCategory::Config;
        case ErrorKind::NonFiniteLoss:
            return ErrorCategory::Training;
        default:
            return ErrorCategory::Data;
        }
    }

private:
    ErrorKind kind_;
};

const char* error_kind_name(ErrorKind kind);

} // namespace cigan

#endif
