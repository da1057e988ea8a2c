#ifndef CIGAN_MATRIX_HPP
#define CIGAN_MATRIX_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace cigan {

/// Dense row-major matrix of doubles. Small by design: exactly the
/// operations the networks and classifiers need, nothing more.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix from_rows(std::size_t rows, std::size_t cols, std::vector<double> data);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return data_.empty(); }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    double* data() noexcept { return data_.data(); }
    const double* data() const noexcept { return data_.data(); }
    std::span<const double> flat() const noexcept { return {data_.data(), data_.size()}; }
    std::span<double> flat() noexcept { return {data_.data(), data_.size()}; }

    bool same_shape(const Matrix& other) const noexcept {
        return rows_ == other.rows_ && cols_ == other.cols_;
    }
    bool operator==(const Matrix& other) const = default;

    bool all_finite() const noexcept;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// C = A * B.
Matrix matmul(const Matrix& a, const Matrix& b);
/// C = A^T * B (A is m x k, B is m x n, C is k x n).
Matrix matmul_at(const Matrix& a, const Matrix& b);
/// C = A * B^T (A is m x k, B is n x k, C is m x n).
Matrix matmul_bt(const Matrix& a, const Matrix& b);

} // namespace cigan

#endif
