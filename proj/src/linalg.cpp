#include "strnet/linalg.hpp"

#include <cassert>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace strnet {

Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matmul: inner dimensions differ");
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    }
    return c;
}

Matrix transpose(const Matrix& a) {
    Matrix t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
    return t;
}

Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

void matvec(const Matrix& a, std::span<const double> x, std::span<double> y) {
    assert(x.size() == a.cols() && y.size() == a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double s = 0.0;
        const double* row = a.data() + i * a.cols();
        for (std::size_t j = 0; j < a.cols(); ++j) s += row[j] * x[j];
        y[i] = s;
    }
}

void matvec_transpose(const Matrix& a, std::span<const double> x, std::span<double> y) {
    assert(x.size() == a.rows() && y.size() == a.cols());
    for (std::size_t j = 0; j < a.cols(); ++j) y[j] = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const double xi = x[i];
        if (xi == 0.0) continue;
        const double* row = a.data() + i * a.cols();
        for (std::size_t j = 0; j < a.cols(); ++j) y[j] += row[j] * xi;
    }
}

double dot(std::span<const double> x, std::span<const double> y) {
    assert(x.size() == y.size());
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

double max_abs(const Matrix& a) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.data()[i]));
    return m;
}

double frobenius_norm(const Matrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a.data()[i] * a.data()[i];
    return std::sqrt(s);
}

double one_norm(const Matrix& a) {
    double m = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) {
        double col = 0.0;
        for (std::size_t i = 0; i < a.rows(); ++i) col += std::abs(a(i, j));
        m = std::max(m, col);
    }
    return m;
}

Matrix invert(const Matrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("invert: matrix not square");
    const std::size_t n = a.rows();

    // Gauss-Jordan on [A | I] with partial pivoting.
    Matrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
        aug(i, n + i) = 1.0;
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t i = col + 1; i < n; ++i)
            if (std::abs(aug(i, col)) > std::abs(aug(pivot, col))) pivot = i;
        if (aug(pivot, col) == 0.0) throw std::runtime_error("invert: singular matrix");
        if (pivot != col)
            for (std::size_t j = 0; j < 2 * n; ++j) std::swap(aug(pivot, j), aug(col, j));
        const double inv_p = 1.0 / aug(col, col);
        for (std::size_t j = 0; j < 2 * n; ++j) aug(col, j) *= inv_p;
        aug(col, col) = 1.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col) continue;
            const double f = aug(i, col);
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < 2 * n; ++j) aug(i, j) -= f * aug(col, j);
            aug(i, col) = 0.0;
        }
    }
    Matrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
    return inv;
}

double condition_estimate(const Matrix& a) {
    try {
        const Matrix inv = invert(a);
        return one_norm(a) * one_norm(inv);
    } catch (const std::runtime_error&) {
        return std::numeric_limits<double>::infinity();
    }
}

}  // namespace strnet
