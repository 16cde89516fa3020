#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "strnet/cl_update.hpp"

namespace strnet {

struct RunConfig {
    int n = 2;
    int r = 7;
    std::uint64_t seed = 1;
    std::uint64_t max_items = 100000;  // 0 means evaluate-only
    double eps_target = 1e-14;
    std::uint64_t eval_every = 1000;
    double init_scale = 1.0;
    UpdateMode mode = UpdateMode::CG1;
};

enum class RunOutcome { Converged, NonConverged };

// Converged:     the error target was reached.
// BorderSuspect: not converged, but the error keeps improving while the
//                weights diverge — the signature of a border approximation.
// Indeterminate: neither.
enum class RunClassification { Converged, BorderSuspect, Indeterminate };

const char* to_string(RunOutcome o);
const char* to_string(RunClassification c);

struct TraceSample {
    std::uint64_t items_seen = 0;
    double epsilon = 0.0;
    double max_weight = 0.0;
    std::uint64_t skipped_count = 0;

    friend bool operator==(const TraceSample&, const TraceSample&) = default;
};

struct RunTrace {
    RunConfig config;
    std::vector<TraceSample> samples;
    double final_epsilon = 0.0;
    std::uint64_t items_used = 0;
    RunOutcome outcome = RunOutcome::NonConverged;
    RunClassification classification = RunClassification::Indeterminate;
    double weight_growth_factor = 1.0;  // final max_weight / initial max_weight
};

// A and B entrywise uniform on [-1,1], rescaled to unit Frobenius norm;
// c is the unrolled product of the rescaled matrices.
TrainingItem sample_item(int n, std::mt19937_64& rng);

// max(|W_a|, |W_b|, |W_c|) over all entries.
double max_weight_magnitude(const WeightSet& w);

// Online training: init_weights (unless initial_weights is given), then
// sample_item / conservative_update until epsilon < eps_target or the item
// budget is exhausted. Epsilon and max-weight are recorded at item 0,
// every eval_every items, and at termination. One seeded generator drives
// the whole run, weights first, then items.
std::pair<WeightSet, RunTrace> run_training(
    const RunConfig& cfg, const std::optional<WeightSet>& initial_weights = std::nullopt);

inline constexpr double kDefaultGrowthThreshold = 20.0;

// Heuristic border detection: non-converged runs whose max weight grew by
// at least growth_threshold while epsilon fell at least 10x are flagged
// BorderSuspect.
RunClassification classify_run(const RunTrace& trace,
                               double growth_threshold = kDefaultGrowthThreshold);

}  // namespace strnet
