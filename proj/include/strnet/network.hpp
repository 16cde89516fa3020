#pragma once

#include <random>
#include <span>

#include "strnet/tensor_core.hpp"

namespace strnet {

// Intermediates of one forward pass through the multiplier network:
// a_star = W_a a, b_star = W_b b, c_star = a_star o b_star (componentwise),
// c_tilde = W_c c_star.
struct ForwardState {
    std::vector<double> a_star;
    std::vector<double> b_star;
    std::vector<double> c_star;
    std::vector<double> c_tilde;
};

// One normalized training triple: unrolled A and B with unit Frobenius
// norm, and c the unrolled product A B.
struct TrainingItem {
    std::vector<double> a;
    std::vector<double> b;
    std::vector<double> c;
};

// Every entry independently uniform on [-scale, +scale], drawn from rng in
// storage order W_a, W_b, W_c.
WeightSet init_weights(int n, int r, double scale, std::mt19937_64& rng);

ForwardState forward(const WeightSet& w, std::span<const double> a, std::span<const double> b);

// Same as forward, reusing the buffers in out.
void forward_into(const WeightSet& w, std::span<const double> a, std::span<const double> b,
                  ForwardState& out);

// The classical rank-7 scheme for 2 x 2 matrices; all nonzero weights
// are +-1. Transcribed constants; tests validate against the error metric
// and against direct products.
WeightSet strassen_fixture();

// Rank-n^3 decomposition mirroring the textbook algorithm: one multiplier
// per (p,m,q) product term A(p,m) * B(m,q) contributing to C(p,q).
WeightSet standard_weights(int n);

}  // namespace strnet
