#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace strnet {

// Dense row-major matrix of doubles. Sized for the small kernels in this
// project (dimensions up to a few dozen), so plain loops throughout.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double value = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, value) {}

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }
    bool empty() const { return data_.empty(); }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }

    std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
    std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

    friend bool operator==(const Matrix& a, const Matrix& b) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

Matrix matmul(const Matrix& a, const Matrix& b);
Matrix transpose(const Matrix& a);
Matrix identity(std::size_t n);

// y = A x and y = A^T x
void matvec(const Matrix& a, std::span<const double> x, std::span<double> y);
void matvec_transpose(const Matrix& a, std::span<const double> x, std::span<double> y);

double dot(std::span<const double> x, std::span<const double> y);

double max_abs(const Matrix& a);
double frobenius_norm(const Matrix& a);
double one_norm(const Matrix& a);  // max absolute column sum

// Inverse by Gauss-Jordan elimination with partial pivoting.
// Throws std::runtime_error when a pivot vanishes.
Matrix invert(const Matrix& a);

// ||A||_1 * ||A^-1||_1; +inf when the inverse does not exist.
double condition_estimate(const Matrix& a);

}  // namespace strnet
