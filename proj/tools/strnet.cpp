// strnet — learn and inspect low-rank decompositions of the n x n matrix
// multiplication tensor with a three-layer multiplier network.
//
// Subcommands: train, batch, verify, transform, fixture.
// Exit codes: 0 success (train: converged; verify: below threshold),
// 1 usage/parse/config error, 2 negative result (train: not converged;
// verify: at or above threshold).

#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "strnet/batch.hpp"
#include "strnet/io.hpp"
#include "strnet/rng.hpp"

namespace {

using namespace strnet;

struct TrainOptions {
    RunConfig cfg;
    std::string mode = "cg1";
    std::string trace_path = "trace.jsonl";
    std::string save_weights_path;
    std::string init_weights_path;
    bool n_set = false;
    bool rank_set = false;
};

struct BatchOptions {
    RunConfig base;
    std::string mode = "cg1";
    int runs = 10;
    std::uint64_t master_seed = 1;
    int jobs = 1;
    std::string summary_path = "summary.csv";
    std::string histogram_path = "histogram.csv";
    bool full = false;
    bool n_set = false;
    bool rank_set = false;
    bool runs_set = false;
    bool max_items_set = false;
};

struct VerifyOptions {
    std::string weights_path;
    double threshold = 1e-12;
};

struct TransformOptions {
    std::string weights_path;
    std::string out_path;
    std::uint64_t seed = 1;
    bool identity = false;
};

struct FixtureOptions {
    std::string out_path = "strassen_weights.json";
};

void add_run_config_flags(CLI::App* cmd, RunConfig& cfg, std::string& mode) {
    cmd->add_option("--max-items", cfg.max_items, "Training item budget (0 = evaluate only)");
    cmd->add_option("--eps-target", cfg.eps_target, "Terminate when epsilon drops below this")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--eval-every", cfg.eval_every, "Evaluation cadence in items")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--init-scale", cfg.init_scale, "Half-width of the uniform weight init")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--mode", mode, "Update mode: cg1 or diag");
}

int cmd_train(const TrainOptions& opt) {
    RunConfig cfg = opt.cfg;
    cfg.mode = parse_update_mode(opt.mode);

    std::optional<WeightSet> init;
    if (!opt.init_weights_path.empty()) {
        init = load_weights(opt.init_weights_path);
        if (!opt.n_set) cfg.n = init->n;
        if (!opt.rank_set) cfg.r = init->r;
    }

    auto [weights, trace] = run_training(cfg, init);
    save_trace(trace, opt.trace_path);
    if (!opt.save_weights_path.empty()) save_weights(weights, opt.save_weights_path);

    std::printf("final_epsilon = %.17g\n", trace.final_epsilon);
    std::printf("items_used = %llu\n", static_cast<unsigned long long>(trace.items_used));
    std::printf("classification = %s\n", to_string(trace.classification));
    std::printf("trace = %s\n", opt.trace_path.c_str());
    if (!opt.save_weights_path.empty())
        std::printf("weights = %s\n", opt.save_weights_path.c_str());
    return trace.outcome == RunOutcome::Converged ? 0 : 2;
}

int cmd_batch(const BatchOptions& opt) {
    BatchConfig cfg;
    cfg.base = opt.base;
    cfg.base.mode = parse_update_mode(opt.mode);
    cfg.runs = opt.runs;
    cfg.master_seed = opt.master_seed;
    cfg.jobs = opt.jobs;
    if (opt.full) {
        // Full-budget preset; explicit flags still win.
        if (!opt.n_set) cfg.base.n = 3;
        if (!opt.rank_set) cfg.base.r = 23;
        if (!opt.runs_set) cfg.runs = 1000;
        if (!opt.max_items_set) cfg.base.max_items = 100000000ull;
    }

    const BatchSummary summary = run_batch(cfg);
    save_batch_summary(summary, opt.summary_path);
    save_histogram(summary, opt.histogram_path);

    std::printf("runs = %d\n", summary.runs);
    std::printf("converged_count = %d\n", summary.converged_count);
    std::printf("converged_fraction = %.17g\n", summary.converged_fraction);
    std::printf("summary = %s\n", opt.summary_path.c_str());
    std::printf("histogram = %s\n", opt.histogram_path.c_str());
    return 0;
}

int cmd_verify(const VerifyOptions& opt) {
    const WeightSet w = load_weights(opt.weights_path);
    const MatMulTensor tensor = build_matmul_tensor(w.n);
    const double eps = decomposition_error(w, tensor);
    const double mw = max_weight_magnitude(w);
    std::printf("n = %d\n", w.n);
    std::printf("r = %d\n", w.r);
    std::printf("epsilon = %.17g\n", eps);
    std::printf("max_weight = %.17g\n", mw);
    return eps < opt.threshold ? 0 : 2;
}

Matrix sample_well_conditioned(int n, std::mt19937_64& rng) {
    // Entrywise uniform, resampled until comfortably invertible.
    constexpr double kConditionLimit = 1e3;
    for (;;) {
        Matrix m(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
        for (std::size_t i = 0; i < m.size(); ++i) m.data()[i] = uniform_symmetric(rng, 1.0);
        if (condition_estimate(m) <= kConditionLimit) return m;
    }
}

int cmd_transform(const TransformOptions& opt) {
    const WeightSet w = load_weights(opt.weights_path);
    const MatMulTensor tensor = build_matmul_tensor(w.n);

    Matrix u, v, x;
    if (opt.identity) {
        u = v = x = identity(static_cast<std::size_t>(w.n));
    } else {
        std::mt19937_64 rng(opt.seed);
        u = sample_well_conditioned(w.n, rng);
        v = sample_well_conditioned(w.n, rng);
        x = sample_well_conditioned(w.n, rng);
    }
    const WeightSet out = transform_decomposition(w, u, v, x);

    std::printf("epsilon_before = %.17g\n", decomposition_error(w, tensor));
    std::printf("epsilon_after = %.17g\n", decomposition_error(out, tensor));
    save_weights(out, opt.out_path);
    std::printf("weights = %s\n", opt.out_path.c_str());
    return 0;
}

int cmd_fixture(const FixtureOptions& opt) {
    const WeightSet w = strassen_fixture();
    const double eps = decomposition_error(w, build_matmul_tensor(2));
    if (!(eps <= 1e-15))
        throw std::runtime_error("fixture self-validation failed: epsilon = " +
                                 std::to_string(eps));
    save_weights(w, opt.out_path);
    std::printf("epsilon = %.17g\n", eps);
    std::printf("weights = %s\n", opt.out_path.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Learns low-rank decompositions of the n x n matrix multiplication tensor\n"
                 "by online training of a three-layer multiplier network."};
    app.require_subcommand(1);

    TrainOptions train;
    CLI::App* train_cmd = app.add_subcommand("train", "Run one training run");
    auto* train_n = train_cmd->add_option("--n", train.cfg.n, "Matrix dimension");
    auto* train_rank = train_cmd->add_option("--rank", train.cfg.r, "Number of multipliers");
    train_cmd->add_option("--seed", train.cfg.seed, "Run seed (weights first, then items)");
    add_run_config_flags(train_cmd, train.cfg, train.mode);
    train_cmd->add_option("--trace", train.trace_path, "Trace output file (JSON lines)");
    train_cmd->add_option("--save-weights", train.save_weights_path, "Write final weights here");
    train_cmd->add_option("--init-weights", train.init_weights_path,
                          "Start from this weights file instead of random init");

    BatchOptions batch;
    CLI::App* batch_cmd = app.add_subcommand("batch", "Run an ensemble of independent runs");
    auto* batch_n = batch_cmd->add_option("--n", batch.base.n, "Matrix dimension");
    auto* batch_rank = batch_cmd->add_option("--rank", batch.base.r, "Number of multipliers");
    auto* batch_runs = batch_cmd->add_option("--runs", batch.runs, "Number of runs")
                           ->check(CLI::PositiveNumber);
    batch_cmd->add_option("--master-seed", batch.master_seed, "Run i uses seed master-seed + i");
    batch_cmd->add_option("--jobs", batch.jobs, "Concurrent runs")->check(CLI::PositiveNumber);
    auto* batch_max = batch_cmd->add_option("--max-items", batch.base.max_items,
                                            "Training item budget per run");
    batch_cmd->add_option("--eps-target", batch.base.eps_target,
                          "Terminate a run when epsilon drops below this")
        ->check(CLI::PositiveNumber);
    batch_cmd->add_option("--eval-every", batch.base.eval_every, "Evaluation cadence in items")
        ->check(CLI::PositiveNumber);
    batch_cmd->add_option("--init-scale", batch.base.init_scale,
                          "Half-width of the uniform weight init")
        ->check(CLI::PositiveNumber);
    batch_cmd->add_option("--mode", batch.mode, "Update mode: cg1 or diag");
    batch_cmd->add_option("--summary", batch.summary_path, "Summary CSV output");
    batch_cmd->add_option("--histogram", batch.histogram_path, "Histogram CSV output");
    batch_cmd->add_flag("--full", batch.full,
                        "Full-budget preset: n=3 rank=23 runs=1000 max-items=1e8");

    VerifyOptions verify;
    CLI::App* verify_cmd = app.add_subcommand("verify", "Evaluate a weights file against M_n");
    verify_cmd->add_option("weights", verify.weights_path, "Weights file")->required();
    verify_cmd->add_option("--threshold", verify.threshold,
                           "Exit 0 when epsilon is below this")
        ->check(CLI::PositiveNumber);

    TransformOptions transform;
    CLI::App* transform_cmd =
        app.add_subcommand("transform", "Apply a random symmetry transform to a weights file");
    transform_cmd->add_option("weights", transform.weights_path, "Weights file")->required();
    transform_cmd->add_option("--out", transform.out_path, "Transformed weights output")
        ->required();
    transform_cmd->add_option("--seed", transform.seed, "Seed for the random transform");
    transform_cmd->add_flag("--identity", transform.identity, "Use the identity transform");

    FixtureOptions fixture;
    CLI::App* fixture_cmd =
        app.add_subcommand("fixture", "Write the classical rank-7 scheme for n=2");
    fixture_cmd->add_option("--out", fixture.out_path, "Weights output file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    train.n_set = train_n->count() > 0;
    train.rank_set = train_rank->count() > 0;
    batch.n_set = batch_n->count() > 0;
    batch.rank_set = batch_rank->count() > 0;
    batch.runs_set = batch_runs->count() > 0;
    batch.max_items_set = batch_max->count() > 0;

    try {
        if (app.got_subcommand(train_cmd)) return cmd_train(train);
        if (app.got_subcommand(batch_cmd)) return cmd_batch(batch);
        if (app.got_subcommand(verify_cmd)) return cmd_verify(verify);
        if (app.got_subcommand(transform_cmd)) return cmd_transform(transform);
        if (app.got_subcommand(fixture_cmd)) return cmd_fixture(fixture);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
