#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "ilapf/filter.hpp"
#include "ilapf/noise.hpp"
#include "ilapf/ore.hpp"
#include "ilapf/ssm.hpp"

namespace ilapf {

/// Deterministic stream derivation for Monte Carlo work: every (task,
/// replicate, role) triple owns an independent stream of the master seed.
/// Roles: 0 = trajectory simulation, 1 = main filter, 2 = baseline filter.
RngStream make_stream(std::uint64_t master_seed, std::uint64_t task, std::uint64_t replicate,
                      std::uint64_t role);

/// Reference interval a range estimator is expected to approach for a given
/// generating law: the support endpoints for a uniform; mean -+ 3 std for
/// a Gaussian or Student t; (m1 - 3 sigma, m2 + 3 sigma) for a two-sided
/// mixture, with m1/m2 the smallest/largest component means.
std::pair<double, double> desired_bounds(const NoiseLaw& law);

/// The four outlier laws of the bundled convergence study.
std::vector<std::pair<std::string, NoiseLaw>> sweep_distributions();

struct SweepSpec {
    std::vector<std::pair<std::string, NoiseLaw>> distributions = sweep_distributions();
    std::vector<double> i_values = {10.0, 40.0, 70.0, 100.0};
    double lb0 = 20.0;
    double ub0 = 70.0;
    OreMode mode = OreMode::kExtrema;
    int n_samples = 300;
    std::uint64_t seed = 1;
};

struct SweepTrace {
    std::string dist_name;
    double i_value;
    std::vector<OreTraceRow> rows;
    double desired_lb, desired_ub;
    double data_min, data_max;  // extrema of the values actually drawn
    double final_lb, final_ub;
    double final_margin;        // I/n at the final observation
};

/// Feed n_samples sequential draws of each distribution into a fresh
/// estimator for every (distribution, I) pair and record the bound traces.
std::vector<SweepTrace> ore_sweep(const SweepSpec& spec);

struct BenchParams {
    int runs = 30;
    std::uint64_t seed = 1;
    FilterParams filter;
    double gamma_shape = 3.0;
    double gamma_scale = 0.5;
    bool fixed_trajectory = false;  // reuse one trajectory across replicates
};

struct AlgorithmSummary {
    double mean_mse = 0.0;
    double var_mse = 0.0;   // unbiased, (R - 1) denominator; 0 when R = 1
    double mean_wall = 0.0;
    bool degenerate_sample = false;  // R = 1: variance reported as 0 by convention
};

AlgorithmSummary summarize(const std::vector<RunMetrics>& runs);

struct BenchResult {
    int runs = 0;
    std::vector<RunMetrics> ilapf_runs;
    std::vector<RunMetrics> baseline_runs;
    AlgorithmSummary ilapf;
    AlgorithmSummary baseline;
};

/// Monte Carlo comparison of the full filter against the bootstrap baseline
/// on independently simulated benchmark scenarios.
BenchResult run_benchmark(const BenchParams& params);

struct TransferResult {
    int tasks = 0;
    int runs = 0;
    std::vector<std::vector<RunMetrics>> task_runs;  // [task][replicate]
    std::vector<AlgorithmSummary> per_task;
    std::vector<double> mean_final_width;            // reported ub - lb per task
    /// Concatenated bound trace of replicate 0 across tasks, one row per
    /// step: (task, k, lb_hat, ub_hat).
    struct BoundRow {
        int task;
        int k;
        double lb_hat, ub_hat;
    };
    std::vector<BoundRow> bound_trajectory;
};

/// Chain of consecutive filtering tasks; each task's range estimator is
/// warm-started from the previous task's final state.
TransferResult transfer_chain(int tasks, const BenchParams& params);

void write_bench_summary(const BenchResult& result, std::ostream& out);
void write_transfer_summary(const TransferResult& result, std::ostream& out);
void write_bound_trajectory_csv(const TransferResult& result, std::ostream& out);

}  // namespace ilapf
