#include "strnet/batch.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace strnet {

std::vector<HistogramBin> epsilon_histogram(std::span<const double> final_epsilons) {
    // Two bins per decade over [1e-16, 1e1].
    constexpr int kBins = 34;
    constexpr double kLowExp = -16.0;
    std::vector<HistogramBin> bins(kBins);
    for (int k = 0; k < kBins; ++k) {
        bins[k].lo = std::pow(10.0, kLowExp + 0.5 * k);
        bins[k].hi = std::pow(10.0, kLowExp + 0.5 * (k + 1));
    }
    for (double e : final_epsilons) {
        int idx = 0;
        if (e > 0.0) idx = static_cast<int>(std::floor((std::log10(e) - kLowExp) * 2.0));
        idx = std::clamp(idx, 0, kBins - 1);
        ++bins[idx].count;
    }
    return bins;
}

BatchSummary run_batch(const BatchConfig& cfg) {
    if (cfg.runs < 1) throw std::invalid_argument("batch: runs must be >= 1");
    const int jobs = std::clamp(cfg.jobs, 1, cfg.runs);

    std::vector<RunTrace> traces(static_cast<std::size_t>(cfg.runs));
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    const auto worker = [&] {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= cfg.runs) return;
            try {
                RunConfig rc = cfg.base;
                rc.seed = cfg.master_seed + static_cast<std::uint64_t>(i);
                traces[static_cast<std::size_t>(i)] = run_training(rc).second;
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(cfg.runs);
                return;
            }
        }
    };

    std::vector<std::thread> pool;
    for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
    worker();
    for (std::thread& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);

    BatchSummary summary;
    summary.runs = cfg.runs;
    std::vector<double> finals;
    finals.reserve(traces.size());
    for (int i = 0; i < cfg.runs; ++i) {
        const RunTrace& tr = traces[static_cast<std::size_t>(i)];
        summary.rows.push_back({i, tr.config.seed, tr.final_epsilon, tr.items_used,
                                tr.classification, tr.samples.back().max_weight,
                                tr.weight_growth_factor});
        if (tr.outcome == RunOutcome::Converged) ++summary.converged_count;
        finals.push_back(tr.final_epsilon);
    }
    summary.converged_fraction =
        static_cast<double>(summary.converged_count) / static_cast<double>(summary.runs);
    summary.histogram = epsilon_histogram(finals);
    return summary;
}

namespace {

void write_file(const std::string& text, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << text;
    if (!out.good()) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace

void save_batch_summary(const BatchSummary& summary, const std::filesystem::path& path) {
    std::string out =
        "run_id,seed,final_epsilon,items_used,classification,final_max_weight,"
        "weight_growth_factor\n";
    char buf[256];
    for (const RunSummaryRow& row : summary.rows) {
        std::snprintf(buf, sizeof(buf), "%d,%llu,%.17g,%llu,%s,%.17g,%.17g\n", row.run_id,
                      static_cast<unsigned long long>(row.seed), row.final_epsilon,
                      static_cast<unsigned long long>(row.items_used),
                      to_string(row.classification), row.final_max_weight,
                      row.weight_growth_factor);
        out += buf;
    }
    std::snprintf(buf, sizeof(buf), "# aggregate runs=%d converged_count=%d converged_fraction=%.17g\n",
                  summary.runs, summary.converged_count, summary.converged_fraction);
    out += buf;
    write_file(out, path);
}

void save_histogram(const BatchSummary& summary, const std::filesystem::path& path) {
    std::string out = "bin_low,bin_high,count\n";
    char buf[128];
    for (const HistogramBin& bin : summary.histogram) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%llu\n", bin.lo, bin.hi,
                      static_cast<unsigned long long>(bin.count));
        out += buf;
    }
    write_file(out, path);
}

}  // namespace strnet
