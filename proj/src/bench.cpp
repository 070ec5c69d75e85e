#include "ilapf/bench.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "ilapf/io.hpp"

namespace ilapf {

RngStream make_stream(std::uint64_t master_seed, std::uint64_t task, std::uint64_t replicate,
                      std::uint64_t role) {
    const std::uint64_t id = mix64(mix64(mix64(task), replicate), role);
    return RngStream(master_seed, id);
}

std::pair<double, double> desired_bounds(const NoiseLaw& law) {
    if (const auto* u = std::get_if<Uniform>(&law.dist())) return {u->low, u->high};
    if (const auto* m = std::get_if<GaussianMixture>(&law.dist())) {
        double lo_mean = m->components.front().mean;
        double hi_mean = lo_mean;
        double sigma = std::sqrt(m->components.front().variance);
        for (const auto& c : m->components) {
            lo_mean = std::min(lo_mean, c.mean);
            hi_mean = std::max(hi_mean, c.mean);
            sigma = std::sqrt(c.variance);
        }
        return {lo_mean - 3.0 * sigma, hi_mean + 3.0 * sigma};
    }
    const double sd = std::sqrt(law.variance());
    return {law.mean() - 3.0 * sd, law.mean() + 3.0 * sd};
}

std::vector<std::pair<std::string, NoiseLaw>> sweep_distributions() {
    return {
        {"uniform", NoiseLaw::uniform(40.0, 50.0)},
        {"gaussian", NoiseLaw::gaussian(45.0, 1.0)},
        {"student_t", NoiseLaw::student_t(3.0, 45.0, 1.0)},
        {"mixture", NoiseLaw::gaussian_mixture({{0.5, 45.0, 1.0}, {0.5, 47.0, 1.0}})},
    };
}

std::vector<SweepTrace> ore_sweep(const SweepSpec& spec) {
    if (spec.n_samples < 1) throw std::invalid_argument("n_samples must be >= 1");
    std::vector<SweepTrace> traces;
    traces.reserve(spec.distributions.size() * spec.i_values.size());
    std::uint64_t dist_index = 0;
    for (const auto& [name, law] : spec.distributions) {
        std::uint64_t i_index = 0;
        for (double i_value : spec.i_values) {
            // one stream per (distribution, I) cell
            RngStream rng = make_stream(spec.seed, dist_index, i_index, 3);
            OutlierRangeEstimator est(spec.lb0, spec.ub0, i_value, spec.mode);
            SweepTrace trace;
            trace.dist_name = name;
            trace.i_value = i_value;
            std::tie(trace.desired_lb, trace.desired_ub) = desired_bounds(law);
            trace.rows.reserve(static_cast<std::size_t>(spec.n_samples));
            for (int n = 1; n <= spec.n_samples; ++n) {
                const double z = law.sample(rng);
                est.observe(z);
                const auto [lb, ub] = est.bounds();
                trace.rows.push_back(OreTraceRow{n, z, lb, ub});
            }
            if (spec.mode == OreMode::kExtrema) {
                trace.data_min = est.data_min();
                trace.data_max = est.data_max();
            } else {
                trace.data_min = trace.data_max = std::numeric_limits<double>::quiet_NaN();
            }
            std::tie(trace.final_lb, trace.final_ub) = est.bounds();
            trace.final_margin = est.margin();
            traces.push_back(std::move(trace));
            ++i_index;
        }
        ++dist_index;
    }
    return traces;
}

AlgorithmSummary summarize(const std::vector<RunMetrics>& runs) {
    if (runs.empty()) throw std::invalid_argument("summarize requires at least one run");
    AlgorithmSummary s;
    const auto r = static_cast<double>(runs.size());
    for (const auto& m : runs) {
        s.mean_mse += m.mse;
        s.mean_wall += m.wall_seconds;
    }
    s.mean_mse /= r;
    s.mean_wall /= r;
    if (runs.size() == 1) {
        s.var_mse = 0.0;
        s.degenerate_sample = true;
    } else {
        double sq = 0.0;
        for (const auto& m : runs) sq += (m.mse - s.mean_mse) * (m.mse - s.mean_mse);
        s.var_mse = sq / (r - 1.0);
    }
    return s;
}

namespace {

ScenarioConfig bench_scenario(const BenchParams& params) {
    return benchmark_scenario(params.gamma_shape, params.gamma_scale);
}

}  // namespace

BenchResult run_benchmark(const BenchParams& params) {
    if (params.runs < 1) throw std::invalid_argument("runs must be >= 1");
    const ScenarioConfig scenario = bench_scenario(params);
    BenchResult result;
    result.runs = params.runs;
    result.ilapf_runs.reserve(static_cast<std::size_t>(params.runs));
    result.baseline_runs.reserve(static_cast<std::size_t>(params.runs));
    for (int r = 0; r < params.runs; ++r) {
        const std::uint64_t sim_rep = params.fixed_trajectory ? 0 : static_cast<std::uint64_t>(r);
        RngStream sim_rng = make_stream(params.seed, 0, sim_rep, 0);
        const Trajectory traj = simulate(scenario, sim_rng);

        RngStream ilapf_rng = make_stream(params.seed, 0, static_cast<std::uint64_t>(r), 1);
        result.ilapf_runs.push_back(
            run_filter(traj, scenario.model, params.filter, ilapf_rng));

        RngStream base_rng = make_stream(params.seed, 0, static_cast<std::uint64_t>(r), 2);
        result.baseline_runs.push_back(
            run_bootstrap_filter(traj, scenario.model, params.filter, base_rng));
    }
    result.ilapf = summarize(result.ilapf_runs);
    result.baseline = summarize(result.baseline_runs);
    return result;
}

TransferResult transfer_chain(int tasks, const BenchParams& params) {
    if (tasks < 1) throw std::invalid_argument("tasks must be >= 1");
    if (params.runs < 1) throw std::invalid_argument("runs must be >= 1");
    const ScenarioConfig scenario = bench_scenario(params);
    TransferResult result;
    result.tasks = tasks;
    result.runs = params.runs;
    result.task_runs.assign(static_cast<std::size_t>(tasks), {});
    for (auto& v : result.task_runs) v.reserve(static_cast<std::size_t>(params.runs));

    for (int r = 0; r < params.runs; ++r) {
        std::optional<WarmStart> warm;
        for (int t = 0; t < tasks; ++t) {
            const std::uint64_t sim_rep =
                params.fixed_trajectory ? 0 : static_cast<std::uint64_t>(r);
            RngStream sim_rng =
                make_stream(params.seed, static_cast<std::uint64_t>(t), sim_rep, 0);
            const Trajectory traj = simulate(scenario, sim_rng);
            RngStream filter_rng = make_stream(params.seed, static_cast<std::uint64_t>(t),
                                               static_cast<std::uint64_t>(r), 1);
            RunMetrics run = run_filter(traj, scenario.model, params.filter, filter_rng, warm);
            warm = WarmStart{run.final_lb, run.final_ub, run.final_n};
            if (r == 0) {
                for (const auto& row : run.trace)
                    result.bound_trajectory.push_back(
                        TransferResult::BoundRow{t + 1, row.k, row.lb_hat, row.ub_hat});
            }
            result.task_runs[static_cast<std::size_t>(t)].push_back(std::move(run));
        }
    }
    for (const auto& runs : result.task_runs) {
        result.per_task.push_back(summarize(runs));
        double width = 0.0;
        for (const auto& run : runs) width += run.final_ub - run.final_lb;
        result.mean_final_width.push_back(width / static_cast<double>(runs.size()));
    }
    return result;
}

void write_bench_summary(const BenchResult& result, std::ostream& out) {
    write_kv(out, "runs", static_cast<std::int64_t>(result.runs));
    write_kv(out, "ilapf_mean_mse", result.ilapf.mean_mse);
    write_kv(out, "ilapf_var_mse", result.ilapf.var_mse);
    write_kv(out, "ilapf_mean_wall_seconds", result.ilapf.mean_wall);
    write_kv(out, "baseline_mean_mse", result.baseline.mean_mse);
    write_kv(out, "baseline_var_mse", result.baseline.var_mse);
    write_kv(out, "baseline_mean_wall_seconds", result.baseline.mean_wall);
    if (result.ilapf.degenerate_sample)
        write_kv(out, "warning", std::string("variance computed from a single run is 0"));
}

void write_transfer_summary(const TransferResult& result, std::ostream& out) {
    write_kv(out, "tasks", static_cast<std::int64_t>(result.tasks));
    write_kv(out, "runs", static_cast<std::int64_t>(result.runs));
    for (int t = 0; t < result.tasks; ++t) {
        const auto& s = result.per_task[static_cast<std::size_t>(t)];
        const std::string prefix = "task" + std::to_string(t + 1);
        write_kv(out, prefix + "_mean_mse", s.mean_mse);
        write_kv(out, prefix + "_var_mse", s.var_mse);
        write_kv(out, prefix + "_mean_final_width",
                 result.mean_final_width[static_cast<std::size_t>(t)]);
    }
}

void write_bound_trajectory_csv(const TransferResult& result, std::ostream& out) {
    out << "task,k,lb_hat,ub_hat\n";
    for (const auto& row : result.bound_trajectory) {
        out << row.task << ',' << row.k << ',' << format_double(row.lb_hat) << ','
            << format_double(row.ub_hat) << '\n';
    }
}

}  // namespace ilapf
