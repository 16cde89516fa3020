#include "strnet/tensor_core.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace strnet {

namespace {

void check_dim(int n) {
    if (n < 1 || n > kMaxMatrixDim)
        throw std::invalid_argument("matrix dimension must be in [1, " +
                                    std::to_string(kMaxMatrixDim) + "], got " + std::to_string(n));
}

}  // namespace

void validate_shapes(const WeightSet& w) {
    check_dim(w.n);
    if (w.r < 0) throw std::invalid_argument("rank budget must be nonnegative");
    const std::size_t s = static_cast<std::size_t>(w.n) * static_cast<std::size_t>(w.n);
    const std::size_t r = static_cast<std::size_t>(w.r);
    if (w.w_a.rows() != r || w.w_a.cols() != s || w.w_b.rows() != r || w.w_b.cols() != s ||
        w.w_c.rows() != s || w.w_c.cols() != r)
        throw std::invalid_argument("weight matrix shapes inconsistent with (n, r)");
}

MatMulTensor build_matmul_tensor(int n) {
    check_dim(n);
    const std::size_t s = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
    MatMulTensor t{n, std::vector<double>(s * s * s, 0.0)};
    for (int p = 0; p < n; ++p)
        for (int m = 0; m < n; ++m)
            for (int q = 0; q < n; ++q)
                t.at(unroll_index(n, p, q), unroll_index(n, p, m), unroll_index(n, m, q)) = 1.0;
    return t;
}

double decomposition_error(const WeightSet& w, const MatMulTensor& t) {
    validate_shapes(w);
    if (w.n != t.n) throw std::invalid_argument("decomposition_error: dimension mismatch");
    const int s = t.side();
    std::vector<double> slice(static_cast<std::size_t>(s) * s);
    double acc = 0.0;
    for (int i = 0; i < s; ++i) {
        for (double& v : slice) v = 0.0;
        for (int j = 0; j < w.r; ++j) {
            const double wc = w.w_c(i, j);
            if (wc == 0.0) continue;
            for (int k = 0; k < s; ++k) {
                const double ca = wc * w.w_a(j, k);
                if (ca == 0.0) continue;
                double* out = slice.data() + static_cast<std::size_t>(k) * s;
                const double* wb = w.w_b.data() + static_cast<std::size_t>(j) * s;
                for (int l = 0; l < s; ++l) out[l] += ca * wb[l];
            }
        }
        const double* m_slice =
            t.entries.data() + static_cast<std::size_t>(i) * s * s;
        for (int kl = 0; kl < s * s; ++kl) {
            const double d = m_slice[kl] - slice[static_cast<std::size_t>(kl)];
            acc += d * d;
        }
    }
    const double cells = static_cast<double>(s) * s * s;
    return std::sqrt(acc / cells);
}

MatMulTensor reconstruct_tensor(const WeightSet& w) {
    validate_shapes(w);
    const int s = w.n * w.n;
    MatMulTensor t{w.n, std::vector<double>(static_cast<std::size_t>(s) * s * s, 0.0)};
    for (int i = 0; i < s; ++i) {
        for (int j = 0; j < w.r; ++j) {
            const double wc = w.w_c(i, j);
            if (wc == 0.0) continue;
            for (int k = 0; k < s; ++k) {
                const double ca = wc * w.w_a(j, k);
                if (ca == 0.0) continue;
                for (int l = 0; l < s; ++l) t.at(i, k, l) += ca * w.w_b(j, l);
            }
        }
    }
    return t;
}

Matrix unrolled_conjugation(const Matrix& p, const Matrix& q) {
    if (p.rows() != p.cols() || q.rows() != q.cols() || p.rows() != q.rows())
        throw std::invalid_argument("unrolled_conjugation: transforms must be square, same size");
    const std::size_t n = p.rows();
    Matrix s(n * n, n * n);
    // unroll(P M Q)(i,j) = sum_{u,v} P(i,u) M(u,v) Q(v,j)
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t u = 0; u < n; ++u)
                for (std::size_t v = 0; v < n; ++v)
                    s(i * n + j, u * n + v) = p(i, u) * q(v, j);
    return s;
}

WeightSet transform_decomposition(const WeightSet& w, const Matrix& u, const Matrix& v,
                                  const Matrix& x) {
    validate_shapes(w);
    const std::size_t n = static_cast<std::size_t>(w.n);
    for (const Matrix* m : {&u, &v, &x}) {
        if (m->rows() != n || m->cols() != n)
            throw std::invalid_argument("transform_decomposition: transform must be n x n");
        const double cond = condition_estimate(*m);
        if (!(cond <= kTransformConditionLimit))
            throw std::runtime_error("transform_decomposition: near-singular transform "
                                     "(condition estimate " + std::to_string(cond) + ")");
    }
    const Matrix s_a = unrolled_conjugation(invert(u), v);
    const Matrix s_b = unrolled_conjugation(invert(v), x);
    const Matrix s_c = unrolled_conjugation(u, invert(x));
    return WeightSet{w.n, w.r, matmul(w.w_a, s_a), matmul(w.w_b, s_b), matmul(s_c, w.w_c)};
}

}  // namespace strnet
