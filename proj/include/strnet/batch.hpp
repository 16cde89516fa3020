#pragma once

#include <filesystem>
#include <span>

#include "strnet/trainer.hpp"

namespace strnet {

// Ensemble of independent training runs. Run i copies base, overriding
// its seed with master_seed + i. Runs execute concurrently up to jobs;
// results do not depend on the schedule.
struct BatchConfig {
    RunConfig base;
    int runs = 1;
    std::uint64_t master_seed = 1;
    int jobs = 1;
};

struct RunSummaryRow {
    int run_id = 0;
    std::uint64_t seed = 0;
    double final_epsilon = 0.0;
    std::uint64_t items_used = 0;
    RunClassification classification = RunClassification::Indeterminate;
    double final_max_weight = 0.0;
    double weight_growth_factor = 0.0;
};

struct HistogramBin {
    double lo = 0.0;
    double hi = 0.0;
    std::uint64_t count = 0;
};

struct BatchSummary {
    std::vector<RunSummaryRow> rows;
    int runs = 0;
    int converged_count = 0;
    double converged_fraction = 0.0;
    std::vector<HistogramBin> histogram;
};

// Log-spaced bins spanning [1e-16, 1e1], two per decade; values outside
// the span land in the end bins, so counts always sum to the input size.
std::vector<HistogramBin> epsilon_histogram(std::span<const double> final_epsilons);

BatchSummary run_batch(const BatchConfig& cfg);

// summary: CSV with one row per run and an aggregate footer comment;
// histogram: CSV of {bin_low, bin_high, count}.
void save_batch_summary(const BatchSummary& summary, const std::filesystem::path& path);
void save_histogram(const BatchSummary& summary, const std::filesystem::path& path);

}  // namespace strnet
