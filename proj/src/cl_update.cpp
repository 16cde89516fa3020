#include "strnet/cl_update.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

#include "strnet/linalg.hpp"

namespace strnet {

const char* to_string(UpdateMode m) { return m == UpdateMode::CG1 ? "cg1" : "diag"; }

UpdateMode parse_update_mode(const std::string& name) {
    std::string s;
    for (char c : name) s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (s == "cg1") return UpdateMode::CG1;
    if (s == "diag") return UpdateMode::DIAG;
    throw std::invalid_argument("unknown update mode '" + name + "' (expected cg1 or diag)");
}

Matrix linear_cl_update(const Matrix& w, std::span<const double> x, std::span<const double> y) {
    if (x.size() != w.cols() || y.size() != w.rows())
        throw std::invalid_argument("linear_cl_update: vector lengths do not match W");
    if (std::abs(dot(x, x) - 1.0) > 1e-12)
        throw std::invalid_argument("linear_cl_update: input vector is not normalized");
    std::vector<double> wx(w.rows());
    matvec(w, x, wx);
    Matrix out = w;
    for (std::size_t i = 0; i < w.rows(); ++i) {
        const double d = y[i] - wx[i];
        if (d == 0.0) continue;
        for (std::size_t j = 0; j < w.cols(); ++j) out(i, j) += d * x[j];
    }
    return out;
}

namespace {

// out = G v, scratch_r holds W_c' v. All spans preallocated by the caller.
void apply_g_impl(const WeightSet& w, const ForwardState& fs, std::span<const double> v,
                  std::span<double> out, std::span<double> scratch_r) {
    const std::size_t r = fs.c_star.size();
    const double s = dot(fs.c_star, fs.c_star);
    matvec_transpose(w.w_c, v, scratch_r);
    for (std::size_t j = 0; j < r; ++j)
        scratch_r[j] *= fs.a_star[j] * fs.a_star[j] + fs.b_star[j] * fs.b_star[j];
    matvec(w.w_c, scratch_r, out);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += s * v[i];
}

// gamma starts as delta = c - c_tilde and is rescaled in place.
// Returns true when the update must be skipped (gamma zeroed).
bool compute_gamma_impl(const WeightSet& w, const ForwardState& fs, std::span<const double> c,
                        UpdateMode mode, std::span<double> gamma, std::span<double> scratch_r,
                        std::span<double> scratch_n2) {
    const std::size_t s = fs.c_tilde.size();
    for (std::size_t i = 0; i < s; ++i) gamma[i] = c[i] - fs.c_tilde[i];
    const double delta_sq = dot(gamma, gamma);
    const auto skip = [&] {
        for (std::size_t i = 0; i < s; ++i) gamma[i] = 0.0;
        return true;
    };
    if (delta_sq <= kSkipDeltaSqFloor) return skip();
    if (mode == UpdateMode::DIAG) {
        const double denom = dot(fs.c_star, fs.c_star);
        if (denom <= kSkipDenominatorFloor) return skip();
        const double scale = 1.0 / denom;
        for (std::size_t i = 0; i < s; ++i) gamma[i] *= scale;
        return false;
    }
    // CG1: one conjugate-gradient step from a zero estimate.
    apply_g_impl(w, fs, gamma, scratch_n2, scratch_r);
    const double denom = dot(gamma, std::span<const double>(scratch_n2));
    if (denom <= kSkipDenominatorFloor * delta_sq) return skip();
    const double scale = delta_sq / denom;
    for (std::size_t i = 0; i < s; ++i) gamma[i] *= scale;
    return false;
}

void check_forward_state(const WeightSet& w, const ForwardState& fs) {
    const std::size_t r = w.w_a.rows();
    const std::size_t s = w.w_a.cols();
    if (fs.a_star.size() != r || fs.b_star.size() != r || fs.c_star.size() != r ||
        fs.c_tilde.size() != s)
        throw std::invalid_argument("forward state does not match the weight shapes");
}

void validate_item(const WeightSet& w, const TrainingItem& item) {
    const std::size_t s = w.w_a.cols();
    const int n = w.n;
    if (item.a.size() != s || item.b.size() != s || item.c.size() != s)
        throw std::invalid_argument("training item length does not match n^2");
    if (std::abs(dot(item.a, item.a) - 1.0) > 1e-12 ||
        std::abs(dot(item.b, item.b) - 1.0) > 1e-12)
        throw std::invalid_argument("training item inputs are not normalized");
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
            double prod = 0.0;
            for (int m = 0; m < n; ++m)
                prod += item.a[unroll_index(n, p, m)] * item.b[unroll_index(n, m, q)];
            if (std::abs(prod - item.c[unroll_index(n, p, q)]) > 1e-12)
                throw std::invalid_argument("training item output is not the matrix product");
        }
}

}  // namespace

std::vector<double> apply_G(const WeightSet& w, const ForwardState& fs,
                            std::span<const double> v) {
    validate_shapes(w);
    check_forward_state(w, fs);
    if (v.size() != fs.c_tilde.size())
        throw std::invalid_argument("apply_G: vector length does not match n^2");
    std::vector<double> out(v.size());
    std::vector<double> scratch_r(fs.c_star.size());
    apply_g_impl(w, fs, v, out, scratch_r);
    return out;
}

GammaResult compute_gamma(const WeightSet& w, const ForwardState& fs, std::span<const double> c,
                          UpdateMode mode) {
    validate_shapes(w);
    check_forward_state(w, fs);
    if (c.size() != fs.c_tilde.size())
        throw std::invalid_argument("compute_gamma: output length does not match n^2");
    GammaResult res;
    res.gamma.resize(c.size());
    std::vector<double> scratch_r(fs.c_star.size());
    std::vector<double> scratch_n2(c.size());
    res.skipped = compute_gamma_impl(w, fs, c, mode, res.gamma, scratch_r, scratch_n2);
    return res;
}

BackpropResult backprop_alpha_beta(const WeightSet& w, const ForwardState& fs,
                                   std::span<const double> gamma) {
    validate_shapes(w);
    check_forward_state(w, fs);
    if (gamma.size() != fs.c_tilde.size())
        throw std::invalid_argument("backprop_alpha_beta: gamma length does not match n^2");
    const std::size_t r = fs.c_star.size();
    BackpropResult res;
    res.alpha.resize(r);
    res.beta.resize(r);
    std::vector<double> wct_gamma(r);
    matvec_transpose(w.w_c, gamma, wct_gamma);
    for (std::size_t j = 0; j < r; ++j) {
        res.alpha[j] = fs.b_star[j] * wct_gamma[j];
        res.beta[j] = fs.a_star[j] * wct_gamma[j];
    }
    return res;
}

const UpdateIntermediates& conservative_update_in_place(WeightSet& w, const TrainingItem& item,
                                                        UpdateMode mode, UpdateWorkspace& ws) {
    validate_shapes(w);
    validate_item(w, item);
    const std::size_t r = static_cast<std::size_t>(w.r);
    const std::size_t s = w.w_a.cols();

    forward_into(w, item.a, item.b, ws.fs);

    UpdateIntermediates& im = ws.im;
    im.delta.resize(s);
    im.gamma.resize(s);
    im.alpha.assign(r, 0.0);
    im.beta.assign(r, 0.0);
    ws.wct_gamma.resize(r);
    ws.g_delta.resize(s);

    for (std::size_t i = 0; i < s; ++i) im.delta[i] = item.c[i] - ws.fs.c_tilde[i];
    im.skipped = compute_gamma_impl(w, ws.fs, item.c, mode, im.gamma, ws.wct_gamma, ws.g_delta);
    if (im.skipped) return im;

    // Back-propagate through the *current* W_c before applying Delta_c.
    matvec_transpose(w.w_c, im.gamma, ws.wct_gamma);
    for (std::size_t j = 0; j < r; ++j) {
        im.alpha[j] = ws.fs.b_star[j] * ws.wct_gamma[j];
        im.beta[j] = ws.fs.a_star[j] * ws.wct_gamma[j];
    }

    // Rank-1 increments: Delta_c = gamma c_star', Delta_a = alpha a',
    // Delta_b = beta b'.
    for (std::size_t i = 0; i < s; ++i) {
        const double g = im.gamma[i];
        if (g == 0.0) continue;
        for (std::size_t j = 0; j < r; ++j) w.w_c(i, j) += g * ws.fs.c_star[j];
    }
    for (std::size_t j = 0; j < r; ++j) {
        const double aj = im.alpha[j];
        const double bj = im.beta[j];
        for (std::size_t k = 0; k < s; ++k) {
            w.w_a(j, k) += aj * item.a[k];
            w.w_b(j, k) += bj * item.b[k];
        }
    }
    return im;
}

std::pair<WeightSet, UpdateIntermediates> conservative_update(const WeightSet& w,
                                                              const TrainingItem& item,
                                                              UpdateMode mode) {
    WeightSet updated = w;
    UpdateWorkspace ws;
    UpdateIntermediates im = conservative_update_in_place(updated, item, mode, ws);
    return {std::move(updated), std::move(im)};
}

}  // namespace strnet
