#pragma once

#include <vector>

#include "strnet/linalg.hpp"

namespace strnet {

// Largest supported matrix dimension: dense storage of the order-3 tensor
// needs (n^2)^3 doubles, which is 46656 at n = 6.
inline constexpr int kMaxMatrixDim = 6;

// Row-major unrolling: matrix entry (p,q), 0-based, lands at index p*n + q.
constexpr int unroll_index(int n, int p, int q) { return p * n + q; }

// Order-3 tensor over indices (i,k,l), each ranging over [0, n^2).
// build_matmul_tensor produces the 0/1 tensor that expresses every entry
// of C = A B as a bilinear form in the entries of A and B; the same shape
// also holds reconstructions from a weight set, whose entries are not 0/1.
struct MatMulTensor {
    int n = 0;
    std::vector<double> entries;  // (n^2)^3 values

    int side() const { return n * n; }

    double operator()(int i, int k, int l) const {
        const std::size_t s = static_cast<std::size_t>(side());
        return entries[(static_cast<std::size_t>(i) * s + static_cast<std::size_t>(k)) * s +
                       static_cast<std::size_t>(l)];
    }
    double& at(int i, int k, int l) {
        const std::size_t s = static_cast<std::size_t>(side());
        return entries[(static_cast<std::size_t>(i) * s + static_cast<std::size_t>(k)) * s +
                       static_cast<std::size_t>(l)];
    }
};

// A rank-r decomposition candidate: r multipliers for n x n matrices.
// W_a and W_b pool the unrolled inputs into the multipliers, W_c pools the
// multiplier outputs into the unrolled product.
struct WeightSet {
    int n = 0;
    int r = 0;
    Matrix w_a;  // r x n^2
    Matrix w_b;  // r x n^2
    Matrix w_c;  // n^2 x r

    friend bool operator==(const WeightSet& a, const WeightSet& b) = default;
};

// Throws std::invalid_argument when the matrix shapes are inconsistent
// with (n, r).
void validate_shapes(const WeightSet& w);

// The n x n matrix multiplication tensor: M(i,k,l) = 1 exactly when
// i = unroll(p,q), k = unroll(p,m), l = unroll(m,q) for some p, m, q.
MatMulTensor build_matmul_tensor(int n);

// Root-mean-square entrywise error between t and the tensor reconstructed
// from w. Zero iff the weights decompose t exactly.
double decomposition_error(const WeightSet& w, const MatMulTensor& t);

// T(i,k,l) = sum_j W_c(i,j) W_a(j,k) W_b(j,l).
MatMulTensor reconstruct_tensor(const WeightSet& w);

// Matrix S of the linear map unroll(M) -> unroll(P M Q) on n x n matrices,
// so that S * unroll(M) = unroll(P M Q).
Matrix unrolled_conjugation(const Matrix& p, const Matrix& q);

inline constexpr double kTransformConditionLimit = 1e8;

// Symmetry transform of the decomposition by invertible (U, V, X): exact
// decompositions map to exact decompositions. Rejects inputs whose
// condition estimate exceeds kTransformConditionLimit.
WeightSet transform_decomposition(const WeightSet& w, const Matrix& u, const Matrix& v,
                                  const Matrix& x);

}  // namespace strnet
