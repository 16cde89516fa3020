#pragma once

#include <span>
#include <string>
#include <utility>

#include "strnet/network.hpp"

namespace strnet {

// How the output-layer multiplier gamma is obtained from the discrepancy
// delta = c - c_tilde:
//   CG1  — one conjugate-gradient iteration from a zero estimate, so
//          gamma = (delta'delta / delta'G delta) * delta;
//   DIAG — drop the off-diagonal part of G, gamma = delta / (c_star'c_star).
enum class UpdateMode { CG1, DIAG };

const char* to_string(UpdateMode m);
UpdateMode parse_update_mode(const std::string& name);

// Numerical floors below which an update is skipped rather than dividing
// by a vanishing quantity. Skipping is the zero-change completion of the
// rule; it is not a tuning knob.
inline constexpr double kSkipDeltaSqFloor = 1e-28;      // on |delta|^2
inline constexpr double kSkipDenominatorFloor = 1e-28;  // on delta'G delta / |delta|^2 (CG1)
                                                        // and on c_star'c_star (DIAG)

struct UpdateIntermediates {
    std::vector<double> delta;  // c - c_tilde
    std::vector<double> gamma;
    std::vector<double> alpha;
    std::vector<double> beta;
    bool skipped = false;  // implies gamma, alpha, beta all zero
};

// Minimal-Frobenius-change rule for a plain linear map: W' = W + (y - Wx) x'.
// Requires x'x = 1 to within 1e-12; W' then satisfies W'x = y.
Matrix linear_cl_update(const Matrix& w, std::span<const double> x, std::span<const double> y);

// v -> G v with G = (c_star'c_star) I + W_c diag(a_star^2 + b_star^2) W_c',
// computed matrix-free (G is never materialized).
std::vector<double> apply_G(const WeightSet& w, const ForwardState& fs,
                            std::span<const double> v);

struct GammaResult {
    std::vector<double> gamma;
    bool skipped = false;
};

// fs must come from forward() on the same weights. Degeneracy is a flagged
// outcome (gamma = 0, skipped = true), not an error.
GammaResult compute_gamma(const WeightSet& w, const ForwardState& fs,
                          std::span<const double> c, UpdateMode mode);

struct BackpropResult {
    std::vector<double> alpha;
    std::vector<double> beta;
};

// First-order back-propagation of gamma through the output weights:
// alpha = b_star o (W_c' gamma), beta = a_star o (W_c' gamma).
BackpropResult backprop_alpha_beta(const WeightSet& w, const ForwardState& fs,
                                   std::span<const double> gamma);

// The full per-item rule: forward pass, gamma, rank-1 increments
// Delta_c = gamma c_star', Delta_a = alpha a', Delta_b = beta b'. Returns
// the updated weights and the intermediates; weights pass through
// unchanged when the update was skipped.
std::pair<WeightSet, UpdateIntermediates> conservative_update(const WeightSet& w,
                                                              const TrainingItem& item,
                                                              UpdateMode mode);

// In-place form used by training loops; all scratch lives in the
// workspace so the per-item path does not allocate after the first call.
struct UpdateWorkspace {
    ForwardState fs;
    UpdateIntermediates im;
    std::vector<double> wct_gamma;  // W_c' gamma
    std::vector<double> g_delta;    // G delta
};

const UpdateIntermediates& conservative_update_in_place(WeightSet& w, const TrainingItem& item,
                                                        UpdateMode mode, UpdateWorkspace& ws);

}  // namespace strnet
