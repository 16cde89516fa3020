#include "strnet/network.hpp"

#include <stdexcept>

#include "strnet/rng.hpp"

namespace strnet {

WeightSet init_weights(int n, int r, double scale, std::mt19937_64& rng) {
    if (r < 1) throw std::invalid_argument("init_weights: rank budget must be >= 1");
    if (!(scale > 0.0)) throw std::invalid_argument("init_weights: scale must be positive");
    const std::size_t s = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
    WeightSet w{n, r, Matrix(static_cast<std::size_t>(r), s),
                Matrix(static_cast<std::size_t>(r), s), Matrix(s, static_cast<std::size_t>(r))};
    validate_shapes(w);
    for (Matrix* m : {&w.w_a, &w.w_b, &w.w_c})
        for (std::size_t i = 0; i < m->size(); ++i) m->data()[i] = uniform_symmetric(rng, scale);
    return w;
}

void forward_into(const WeightSet& w, std::span<const double> a, std::span<const double> b,
                  ForwardState& out) {
    const std::size_t s = w.w_a.cols();
    const std::size_t r = w.w_a.rows();
    if (a.size() != s || b.size() != s)
        throw std::invalid_argument("forward: input length does not match n^2");
    out.a_star.resize(r);
    out.b_star.resize(r);
    out.c_star.resize(r);
    out.c_tilde.resize(s);
    matvec(w.w_a, a, out.a_star);
    matvec(w.w_b, b, out.b_star);
    for (std::size_t j = 0; j < r; ++j) out.c_star[j] = out.a_star[j] * out.b_star[j];
    matvec(w.w_c, out.c_star, out.c_tilde);
}

ForwardState forward(const WeightSet& w, std::span<const double> a, std::span<const double> b) {
    ForwardState fs;
    forward_into(w, a, b, fs);
    return fs;
}

WeightSet strassen_fixture() {
    // Multipliers, in the classical order:
    //   m0 = (a11 + a22)(b11 + b22)    m4 = (a11 + a12) b22
    //   m1 = (a21 + a22) b11           m5 = (a21 - a11)(b11 + b12)
    //   m2 = a11 (b12 - b22)           m6 = (a12 - a22)(b21 + b22)
    //   m3 = a22 (b21 - b11)
    //   c11 = m0 + m3 - m4 + m6        c21 = m1 + m3
    //   c12 = m2 + m4                  c22 = m0 - m1 + m2 + m5
    static constexpr int wa[7][4] = {{1, 0, 0, 1}, {0, 0, 1, 1}, {1, 0, 0, 0}, {0, 0, 0, 1},
                                     {1, 1, 0, 0}, {-1, 0, 1, 0}, {0, 1, 0, -1}};
    static constexpr int wb[7][4] = {{1, 0, 0, 1}, {1, 0, 0, 0}, {0, 1, 0, -1}, {-1, 0, 1, 0},
                                     {0, 0, 0, 1}, {1, 1, 0, 0}, {0, 0, 1, 1}};
    static constexpr int wc[4][7] = {{1, 0, 0, 1, -1, 0, 1},
                                     {0, 0, 1, 0, 1, 0, 0},
                                     {0, 1, 0, 1, 0, 0, 0},
                                     {1, -1, 1, 0, 0, 1, 0}};
    WeightSet w{2, 7, Matrix(7, 4), Matrix(7, 4), Matrix(4, 7)};
    for (int j = 0; j < 7; ++j)
        for (int i = 0; i < 4; ++i) {
            w.w_a(j, i) = wa[j][i];
            w.w_b(j, i) = wb[j][i];
            w.w_c(i, j) = wc[i][j];
        }
    return w;
}

WeightSet standard_weights(int n) {
    const int s = n * n;
    const int r = n * n * n;
    WeightSet w{n, r, Matrix(static_cast<std::size_t>(r), static_cast<std::size_t>(s)),
                Matrix(static_cast<std::size_t>(r), static_cast<std::size_t>(s)),
                Matrix(static_cast<std::size_t>(s), static_cast<std::size_t>(r))};
    validate_shapes(w);
    int j = 0;
    for (int p = 0; p < n; ++p)
        for (int m = 0; m < n; ++m)
            for (int q = 0; q < n; ++q) {
                w.w_a(j, unroll_index(n, p, m)) = 1.0;
                w.w_b(j, unroll_index(n, m, q)) = 1.0;
                w.w_c(unroll_index(n, p, q), j) = 1.0;
                ++j;
            }
    return w;
}

}  // namespace strnet
