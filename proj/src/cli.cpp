#include "ilapf/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ilapf/bench.hpp"
#include "ilapf/filter.hpp"
#include "ilapf/io.hpp"
#include "ilapf/ssm.hpp"

namespace ilapf {

namespace {

struct CommonOpts {
    std::uint64_t seed = 1;
    int particles = 200;
    int runs = 30;
    double i_param = 20.0;
    double lb0 = 0.0;
    double ub0 = 70.0;
    std::string ore_mode = "extrema";
    std::string resampler = "multinomial";
    std::string out_dir = ".";
    double gamma_shape = 3.0;
    double gamma_scale = 0.5;
    bool fixed_trajectory = false;
    bool ess_trigger = false;
    double ess_fraction = 0.5;
};

FilterParams filter_params(const CommonOpts& o) {
    FilterParams p;
    p.particle_count = o.particles;
    p.lb0 = o.lb0;
    p.ub0 = o.ub0;
    p.i_param = o.i_param;
    p.ore_mode = o.ore_mode == "literal" ? OreMode::kLiteral : OreMode::kExtrema;
    p.resampler =
        o.resampler == "systematic" ? ResampleScheme::kSystematic : ResampleScheme::kMultinomial;
    p.ess_triggered_resampling = o.ess_trigger;
    p.ess_fraction = o.ess_fraction;
    return p;
}

BenchParams bench_params(const CommonOpts& o) {
    BenchParams p;
    p.runs = o.runs;
    p.seed = o.seed;
    p.filter = filter_params(o);
    p.gamma_shape = o.gamma_shape;
    p.gamma_scale = o.gamma_scale;
    p.fixed_trajectory = o.fixed_trajectory;
    return p;
}

std::filesystem::path prepare_out_dir(const CommonOpts& o) {
    std::filesystem::path dir(o.out_dir);
    std::filesystem::create_directories(dir);
    return dir;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    return out;
}

std::string i_value_label(double v) {
    if (v == std::floor(v) && std::abs(v) < 1e15) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.0f", v);
        return buf;
    }
    return format_double(v);
}

std::string run_file_name(const std::string& prefix, int index) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%03d", index);
    return prefix + "_run_" + buf + ".csv";
}

int run_ore_sim(const CommonOpts& o, int samples, bool i_given, bool lb0_given) {
    SweepSpec spec;
    spec.lb0 = lb0_given ? o.lb0 : 20.0;  // convergence-study init is (20, 70)
    spec.ub0 = o.ub0;
    spec.mode = o.ore_mode == "literal" ? OreMode::kLiteral : OreMode::kExtrema;
    spec.n_samples = samples;
    spec.seed = o.seed;
    if (i_given) spec.i_values = {o.i_param};
    const auto traces = ore_sweep(spec);

    const auto dir = prepare_out_dir(o);
    auto summary = open_out(dir / "ore_sim_summary.txt");
    for (const auto& t : traces) {
        const std::string stem = "ore_" + t.dist_name + "_I" + i_value_label(t.i_value);
        auto csv = open_out(dir / (stem + ".csv"));
        write_ore_trace_csv(t.rows, csv);
        write_kv(summary, stem + "_desired_lb", t.desired_lb);
        write_kv(summary, stem + "_desired_ub", t.desired_ub);
        write_kv(summary, stem + "_final_lb", t.final_lb);
        write_kv(summary, stem + "_final_ub", t.final_ub);
        write_kv(summary, stem + "_final_margin", t.final_margin);
    }
    return 0;
}

int run_simulate(const CommonOpts& o) {
    const ScenarioConfig scenario = benchmark_scenario(o.gamma_shape, o.gamma_scale);
    RngStream rng = make_stream(o.seed, 0, 0, 0);
    const Trajectory traj = simulate(scenario, rng);
    const auto dir = prepare_out_dir(o);
    auto csv = open_out(dir / "trajectory.csv");
    write_trajectory_csv(traj, csv);
    return 0;
}

int run_single_filter(const CommonOpts& o, const std::string& trajectory_file,
                      const std::string& warm_in, const std::string& warm_out) {
    const ScenarioConfig scenario = benchmark_scenario(o.gamma_shape, o.gamma_scale);
    Trajectory traj;
    if (trajectory_file.empty()) {
        RngStream sim_rng = make_stream(o.seed, 0, 0, 0);
        traj = simulate(scenario, sim_rng);
    } else {
        std::ifstream in(trajectory_file);
        if (!in) throw std::invalid_argument("cannot read trajectory " + trajectory_file);
        traj = read_trajectory_csv(in);
    }
    std::optional<WarmStart> warm;
    if (!warm_in.empty()) {
        std::ifstream in(warm_in);
        if (!in) throw std::invalid_argument("cannot read warm start " + warm_in);
        warm = read_warm_start(in);
    }

    RngStream filter_rng = make_stream(o.seed, 0, 0, 1);
    const RunMetrics metrics =
        run_filter(traj, scenario.model, filter_params(o), filter_rng, warm);

    const auto dir = prepare_out_dir(o);
    auto csv = open_out(dir / "ilapf_run.csv");
    write_run_csv(metrics, csv);
    auto summary = open_out(dir / "filter_summary.txt");
    write_kv(summary, "mse", metrics.mse);
    write_kv(summary, "final_lb_hat", metrics.final_lb);
    write_kv(summary, "final_ub_hat", metrics.final_ub);
    write_kv(summary, "final_n", static_cast<std::int64_t>(metrics.final_n));
    write_kv(summary, "wall_seconds", metrics.wall_seconds);
    if (!warm_out.empty()) {
        auto ws = open_out(warm_out);
        write_warm_start(WarmStart{metrics.final_lb, metrics.final_ub, metrics.final_n}, ws);
    }
    return 0;
}

int run_bench(const CommonOpts& o) {
    const BenchResult result = run_benchmark(bench_params(o));
    const auto dir = prepare_out_dir(o);
    for (int r = 0; r < result.runs; ++r) {
        auto ilapf_csv = open_out(dir / run_file_name("ilapf", r));
        write_run_csv(result.ilapf_runs[static_cast<std::size_t>(r)], ilapf_csv);
        auto base_csv = open_out(dir / run_file_name("baseline", r));
        write_run_csv(result.baseline_runs[static_cast<std::size_t>(r)], base_csv);
    }
    auto summary = open_out(dir / "bench_summary.txt");
    write_bench_summary(result, summary);
    return 0;
}

int run_transfer(const CommonOpts& o, int tasks) {
    const TransferResult result = transfer_chain(tasks, bench_params(o));
    const auto dir = prepare_out_dir(o);
    auto summary = open_out(dir / "transfer_summary.txt");
    write_transfer_summary(result, summary);
    auto bounds = open_out(dir / "transfer_bounds.csv");
    write_bound_trajectory_csv(result, bounds);
    return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
    CLI::App app{"Robust particle filtering with online outlier-range learning"};
    app.require_subcommand(1);
    app.fallthrough();

    CommonOpts opts;
    app.add_option("--seed", opts.seed, "Master seed")->capture_default_str();
    app.add_option("--particles", opts.particles, "Particle count N")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    app.add_option("--runs", opts.runs, "Monte Carlo replicates")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    auto* i_opt = app.add_option("--i-param", opts.i_param, "Range-estimator uncertainty I")
                      ->capture_default_str()
                      ->check(CLI::PositiveNumber);
    auto* lb0_opt =
        app.add_option("--lb0", opts.lb0, "Initial lower bound guess")->capture_default_str();
    app.add_option("--ub0", opts.ub0, "Initial upper bound guess")->capture_default_str();
    app.add_option("--ore-mode", opts.ore_mode, "Range update mode")
        ->capture_default_str()
        ->check(CLI::IsMember({"extrema", "literal"}));
    app.add_option("--resampler", opts.resampler, "Resampling scheme")
        ->capture_default_str()
        ->check(CLI::IsMember({"multinomial", "systematic"}));
    app.add_option("--out", opts.out_dir, "Output directory")->capture_default_str();
    app.add_option("--gamma-shape", opts.gamma_shape, "Process-noise gamma shape")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    app.add_option("--gamma-scale", opts.gamma_scale, "Process-noise gamma scale")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    app.add_flag("--fixed-trajectory", opts.fixed_trajectory,
                 "Reuse one simulated trajectory across replicates");
    app.add_flag("--ess-trigger", opts.ess_trigger,
                 "Resample only when the effective sample size drops (study option)");
    app.add_option("--ess-fraction", opts.ess_fraction,
                   "ESS fraction of N below which to resample")
        ->capture_default_str()
        ->check(CLI::Range(0.0, 1.0));
    app.set_config("--config", "", "key=value file overriding flag defaults");

    int ore_samples = 300;
    auto* ore_cmd = app.add_subcommand(
        "ore-sim", "Range-estimator convergence traces over reference outlier laws");
    ore_cmd->add_option("--samples", ore_samples, "Outliers fed per trace")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);

    auto* sim_cmd = app.add_subcommand("simulate", "Write one benchmark trajectory as CSV");

    std::string trajectory_file, warm_in, warm_out;
    auto* filter_cmd =
        app.add_subcommand("filter", "Run the outlier-aware filter on one trajectory");
    filter_cmd->add_option("--trajectory", trajectory_file,
                           "Input trajectory CSV (default: simulate from seed)");
    filter_cmd->add_option("--warm-in", warm_in, "Warm-start record to load");
    filter_cmd->add_option("--warm-out", warm_out, "Where to write the final range state");

    auto* bench_cmd =
        app.add_subcommand("bench", "Monte Carlo comparison against the bootstrap baseline");

    int tasks = 4;
    auto* transfer_cmd = app.add_subcommand(
        "transfer", "Consecutive filtering tasks with carried-over range state");
    transfer_cmd->add_option("--tasks", tasks, "Number of chained tasks")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);

    try {
        app.parse(argc, const_cast<char**>(argv));
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n\n" << app.help() << std::flush;
        return 2;
    }

    try {
        if (ore_cmd->parsed())
            return run_ore_sim(opts, ore_samples, i_opt->count() > 0, lb0_opt->count() > 0);
        if (sim_cmd->parsed()) return run_simulate(opts);
        if (filter_cmd->parsed())
            return run_single_filter(opts, trajectory_file, warm_in, warm_out);
        if (bench_cmd->parsed()) return run_bench(opts);
        if (transfer_cmd->parsed()) return run_transfer(opts, tasks);
    } catch (const std::invalid_argument& e) {
        std::cerr << "parameter error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace ilapf
