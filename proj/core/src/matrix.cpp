#include "cigan/matrix.hpp"

#include <cmath>

#include "cigan/error.hpp"

namespace cigan {

Matrix Matrix::from_rows(std::size_t rows, std::size_t cols, std::vector<double> data) {
    if (data.size() != rows * cols) {
        throw Error(ErrorKind::ShapeMismatch, "from_rows: data size does not match shape");
    }
    Matrix m(rows, cols);
    m.data_ = std::move(data);
    return m;
}

bool Matrix::all_finite() const noexcept {
    for (double v : data_) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

// All three kernels keep the innermost loop contiguous over the output row
// so the compiler can vectorize them.

Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) {
        throw Error(ErrorKind::DimensionMismatch, "matmul: inner dimensions differ");
    }
    Matrix c(a.rows(), b.cols());
    const std::size_t n = b.cols();
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double* ci = c.data() + i * n;
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            const double* bk = b.data() + k * n;
            for (std::size_t j = 0; j < n; ++j) ci[j] += aik * bk[j];
        }
    }
    return c;
}

Matrix matmul_at(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows()) {
        throw Error(ErrorKind::DimensionMismatch, "matmul_at: row counts differ");
    }
    Matrix c(a.cols(), b.cols());
    const std::size_t n = b.cols();
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const double* bi = b.data() + i * n;
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            double* ck = c.data() + k * n;
            for (std::size_t j = 0; j < n; ++j) ck[j] += aik * bi[j];
        }
    }
    return c;
}

Matrix matmul_bt(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.cols()) {
        throw Error(ErrorKind::DimensionMismatch, "matmul_bt: column counts differ");
    }
    Matrix c(a.rows(), b.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const double* ai = a.data() + i * a.cols();
        for (std::size_t k = 0; k < b.rows(); ++k) {
            const double* bk = b.data() + k * b.cols();
            double acc = 0.0;
            for (std::size_t j = 0; j < a.cols(); ++j) acc += ai[j] * bk[j];
            c(i, k) = acc;
        }
    }
    return c;
}

const char* error_kind_name(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::InvalidArchitecture: return "InvalidArchitecture";
    case ErrorKind::InvalidCodingSize: return "InvalidCodingSize";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::MajorityInMinorList: return "MajorityInMinorList";
    case ErrorKind::SingleClassSoftmax: return "SingleClassSoftmax";
    case ErrorKind::MissingTargetColumn: return "MissingTargetColumn";
    case ErrorKind::NonNumericFeatureCell: return "NonNumericFeatureCell";
    case ErrorKind::RaggedRow: return "RaggedRow";
    case ErrorKind::EmptyDataset: return "EmptyDataset";
    case ErrorKind::EmptyTrainingSet: return "EmptyTrainingSet";
    case ErrorKind::ClassTooSmall: return "ClassTooSmall";
    case ErrorKind::DegenerateClass: return "DegenerateClass";
    case ErrorKind::UnknownClass: return "UnknownClass";
    case ErrorKind::UnknownLabel: return "UnknownLabel";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::CacheMismatch: return "CacheMismatch";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::NonFiniteLoss: return "NonFiniteLoss";
    }
    return "Unknown";
}

} // namespace cigan
