// Test-only oracles, kept independent of the library code paths they
// check: plain-loop matrix products, an indicator-product construction of
// the multiplication tensor, an explicitly materialized G, and a Jacobi
// eigensolver for numerical-rank checks.
#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "strnet/network.hpp"
#include "strnet/rng.hpp"

namespace strnet::testing {

// c = unroll(roll(a) * roll(b)) by the schoolbook rule.
inline std::vector<double> oracle_product(int n, const std::vector<double>& a,
                                          const std::vector<double>& b) {
    std::vector<double> c(static_cast<std::size_t>(n) * n, 0.0);
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
            double s = 0.0;
            for (int m = 0; m < n; ++m) s += a[p * n + m] * b[m * n + q];
            c[p * n + q] = s;
        }
    return c;
}

// M(i,k,l) as coefficient of a(k) b(l) in c(i): multiply indicator
// matrices and read off the output entry.
inline MatMulTensor oracle_tensor(int n) {
    const int s = n * n;
    MatMulTensor t{n, std::vector<double>(static_cast<std::size_t>(s) * s * s, 0.0)};
    for (int k = 0; k < s; ++k)
        for (int l = 0; l < s; ++l) {
            std::vector<double> a(s, 0.0), b(s, 0.0);
            a[k] = 1.0;
            b[l] = 1.0;
            const std::vector<double> c = oracle_product(n, a, b);
            for (int i = 0; i < s; ++i) t.at(i, k, l) = c[i];
        }
    return t;
}

inline double frobenius_sq_distance(const MatMulTensor& a, const MatMulTensor& b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
        const double d = a.entries[i] - b.entries[i];
        acc += d * d;
    }
    return acc;
}

// G = (c*'c*) I + W_c diag(a*^2 + b*^2) W_c', dense.
inline Matrix materialize_G(const WeightSet& w, const ForwardState& fs) {
    const std::size_t s = w.w_c.rows();
    const std::size_t r = w.w_c.cols();
    double cc = 0.0;
    for (double v : fs.c_star) cc += v * v;
    Matrix g(s, s);
    for (std::size_t i = 0; i < s; ++i) {
        g(i, i) = cc;
        for (std::size_t i2 = 0; i2 < s; ++i2)
            for (std::size_t j = 0; j < r; ++j)
                g(i, i2) += w.w_c(i, j) *
                            (fs.a_star[j] * fs.a_star[j] + fs.b_star[j] * fs.b_star[j]) *
                            w.w_c(i2, j);
    }
    return g;
}

// Cyclic Jacobi on a symmetric matrix; eigenvalues sorted descending.
inline std::vector<double> jacobi_eigenvalues(Matrix a) {
    const std::size_t n = a.rows();
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
        if (off < 1e-300) break;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                if (a(p, q) == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
            }
    }
    std::vector<double> eig(n);
    for (std::size_t i = 0; i < n; ++i) eig[i] = a(i, i);
    std::sort(eig.begin(), eig.end(), std::greater<>());
    return eig;
}

// Singular values via the Gram matrix of the smaller side.
inline std::vector<double> singular_values(const Matrix& m) {
    const bool rows_small = m.rows() <= m.cols();
    const std::size_t k = rows_small ? m.rows() : m.cols();
    Matrix gram(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            double s = 0.0;
            const std::size_t inner = rows_small ? m.cols() : m.rows();
            for (std::size_t t = 0; t < inner; ++t)
                s += rows_small ? m(i, t) * m(j, t) : m(t, i) * m(t, j);
            gram(i, j) = s;
        }
    std::vector<double> sv = jacobi_eigenvalues(gram);
    for (double& v : sv) v = std::sqrt(std::max(v, 0.0));
    return sv;
}

inline Matrix random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng,
                            double half_width = 1.0) {
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < m.size(); ++i) m.data()[i] = uniform_symmetric(rng, half_width);
    return m;
}

inline std::vector<double> random_unit_vector(std::size_t len, std::mt19937_64& rng) {
    std::vector<double> v(len);
    double norm_sq = 0.0;
    do {
        norm_sq = 0.0;
        for (double& x : v) {
            x = uniform_symmetric(rng, 1.0);
            norm_sq += x * x;
        }
    } while (norm_sq < 1e-6);
    const double inv = 1.0 / std::sqrt(norm_sq);
    for (double& x : v) x *= inv;
    return v;
}

// Gram-Schmidt on random columns; redraws until well-conditioned.
inline Matrix random_orthogonal(std::size_t n, std::mt19937_64& rng) {
    for (;;) {
        Matrix q(n, n);
        bool ok = true;
        for (std::size_t col = 0; col < n && ok; ++col) {
            std::vector<double> v(n);
            for (double& x : v) x = uniform_symmetric(rng, 1.0);
            for (std::size_t prev = 0; prev < col; ++prev) {
                double proj = 0.0;
                for (std::size_t i = 0; i < n; ++i) proj += v[i] * q(i, prev);
                for (std::size_t i = 0; i < n; ++i) v[i] -= proj * q(i, prev);
            }
            double norm_sq = 0.0;
            for (double x : v) norm_sq += x * x;
            if (norm_sq < 1e-4) {
                ok = false;
                break;
            }
            const double inv = 1.0 / std::sqrt(norm_sq);
            for (std::size_t i = 0; i < n; ++i) q(i, col) = v[i] * inv;
        }
        if (ok) return q;
    }
}

// Normalizes raw A, B and fills in the exact product; for hand-built
// update-rule scenarios.
inline TrainingItem item_from_unrolled(int n, std::vector<double> a, std::vector<double> b) {
    double na = 0.0, nb = 0.0;
    for (double x : a) na += x * x;
    for (double x : b) nb += x * x;
    const double ia = 1.0 / std::sqrt(na), ib = 1.0 / std::sqrt(nb);
    for (double& x : a) x *= ia;
    for (double& x : b) x *= ib;
    TrainingItem item;
    item.c = oracle_product(n, a, b);
    item.a = std::move(a);
    item.b = std::move(b);
    return item;
}

}  // namespace strnet::testing
