#include "strnet/trainer.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "strnet/rng.hpp"

namespace strnet {

const char* to_string(RunOutcome o) {
    return o == RunOutcome::Converged ? "converged" : "non_converged";
}

const char* to_string(RunClassification c) {
    switch (c) {
        case RunClassification::Converged: return "converged";
        case RunClassification::BorderSuspect: return "border_suspect";
        default: return "indeterminate";
    }
}

namespace {

// Entrywise uniform on [-1,1], redrawn in the (measure-zero) case of an
// all-zero draw, then rescaled to unit Euclidean norm.
void draw_normalized(std::mt19937_64& rng, std::vector<double>& v) {
    double norm_sq = 0.0;
    do {
        norm_sq = 0.0;
        for (double& x : v) {
            x = uniform_symmetric(rng, 1.0);
            norm_sq += x * x;
        }
    } while (norm_sq == 0.0);
    const double inv = 1.0 / std::sqrt(norm_sq);
    for (double& x : v) x *= inv;
}

void validate_config(const RunConfig& cfg) {
    if (cfg.n < 1 || cfg.n > kMaxMatrixDim)
        throw std::invalid_argument("matrix dimension must be in [1, 6], got " +
                                    std::to_string(cfg.n));
    if (cfg.r < 1) throw std::invalid_argument("rank budget must be >= 1");
    if (!(cfg.eps_target > 0.0)) throw std::invalid_argument("eps_target must be positive");
    if (cfg.eval_every < 1) throw std::invalid_argument("eval_every must be >= 1");
    if (!(cfg.init_scale > 0.0)) throw std::invalid_argument("init_scale must be positive");
}

double growth_factor(double initial, double final_value) {
    if (initial > 0.0) return final_value / initial;
    return final_value == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
}

}  // namespace

TrainingItem sample_item(int n, std::mt19937_64& rng) {
    if (n < 1 || n > kMaxMatrixDim)
        throw std::invalid_argument("sample_item: matrix dimension must be in [1, 6]");
    const std::size_t s = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
    TrainingItem item{std::vector<double>(s), std::vector<double>(s), std::vector<double>(s)};
    draw_normalized(rng, item.a);
    draw_normalized(rng, item.b);
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
            double prod = 0.0;
            for (int m = 0; m < n; ++m)
                prod += item.a[unroll_index(n, p, m)] * item.b[unroll_index(n, m, q)];
            item.c[unroll_index(n, p, q)] = prod;
        }
    return item;
}

double max_weight_magnitude(const WeightSet& w) {
    return std::max({max_abs(w.w_a), max_abs(w.w_b), max_abs(w.w_c)});
}

std::pair<WeightSet, RunTrace> run_training(const RunConfig& cfg,
                                            const std::optional<WeightSet>& initial_weights) {
    validate_config(cfg);
    const MatMulTensor tensor = build_matmul_tensor(cfg.n);
    std::mt19937_64 rng(cfg.seed);

    WeightSet w;
    if (initial_weights.has_value()) {
        w = *initial_weights;
        validate_shapes(w);
        if (w.n != cfg.n || w.r != cfg.r)
            throw std::invalid_argument("initial weights (n, r) do not match the run config");
    } else {
        w = init_weights(cfg.n, cfg.r, cfg.init_scale, rng);
    }

    RunTrace trace;
    trace.config = cfg;
    std::uint64_t skipped = 0;
    const auto record = [&](std::uint64_t items) {
        const double eps = decomposition_error(w, tensor);
        trace.samples.push_back({items, eps, max_weight_magnitude(w), skipped});
        return eps;
    };

    double eps = record(0);
    std::uint64_t items = 0;
    UpdateWorkspace ws;
    while (eps >= cfg.eps_target && items < cfg.max_items) {
        const TrainingItem item = sample_item(cfg.n, rng);
        if (conservative_update_in_place(w, item, cfg.mode, ws).skipped) ++skipped;
        ++items;
        if (items % cfg.eval_every == 0) eps = record(items);
    }
    if (trace.samples.back().items_seen != items) record(items);

    trace.items_used = items;
    trace.final_epsilon = trace.samples.back().epsilon;
    trace.outcome = trace.final_epsilon < cfg.eps_target ? RunOutcome::Converged
                                                         : RunOutcome::NonConverged;
    trace.weight_growth_factor =
        growth_factor(trace.samples.front().max_weight, trace.samples.back().max_weight);
    trace.classification = classify_run(trace);
    return {std::move(w), std::move(trace)};
}

RunClassification classify_run(const RunTrace& trace, double growth_threshold) {
    if (trace.outcome == RunOutcome::Converged) return RunClassification::Converged;
    if (trace.samples.empty()) return RunClassification::Indeterminate;
    const double first_eps = trace.samples.front().epsilon;
    const double final_eps = trace.samples.back().epsilon;
    const bool error_fell_10x = first_eps >= 10.0 * final_eps && first_eps > 0.0;
    const bool weights_grew = trace.weight_growth_factor >= growth_threshold;
    return (weights_grew && error_fell_10x) ? RunClassification::BorderSuspect
                                            : RunClassification::Indeterminate;
}

}  // namespace strnet
