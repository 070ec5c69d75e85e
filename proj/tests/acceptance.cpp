// Acceptance suite: end-to-end checks of the library's headline behavior,
// one printed pass/fail line per check. Exit code is the failure count.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "ilapf/bench.hpp"
#include "ilapf/cli.hpp"
#include "ilapf/filter.hpp"
#include "ilapf/ssm.hpp"

using namespace ilapf;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(bool pass, const std::string& name, const std::string& detail) {
    std::printf("[%s] %s: %s\n", pass ? "PASS" : "FAIL", name.c_str(), detail.c_str());
    if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

// --- check 1: range estimator converges onto uniform support -------------

void check_bound_convergence() {
    const auto start = std::chrono::steady_clock::now();
    const auto law = NoiseLaw::uniform(40.0, 50.0);
    int worst_good = 100;
    for (double i_param : {10.0, 40.0}) {
        int good = 0;
        for (int trial = 0; trial < 100; ++trial) {
            RngStream rng(1000 + static_cast<std::uint64_t>(i_param),
                          static_cast<std::uint64_t>(trial));
            OutlierRangeEstimator est(20.0, 70.0, i_param);
            for (int n = 0; n < 300; ++n) est.observe(law.sample(rng));
            const auto [lb, ub] = est.bounds();
            if (std::abs(lb - 40.0) <= 0.5 && std::abs(ub - 50.0) <= 0.5) ++good;
        }
        worst_good = std::min(worst_good, good);
    }
    const double elapsed = seconds_since(start);
    report(worst_good >= 99 && elapsed < 1.0, "range-estimator convergence",
           "bounds within +-0.5 of (40,50) in " + std::to_string(worst_good) +
               "/100 trials for I in {10,40}; " + fmt(elapsed) + " s");
}

// --- check 2: full sweep covers its data with exact margins ---------------

void check_sweep() {
    const auto start = std::chrono::steady_clock::now();
    SweepSpec spec;  // four laws x I in {10,40,70,100}, init (20,70), 300 draws
    const auto traces = ore_sweep(spec);
    bool ok = traces.size() == 16;
    std::string why;
    for (const auto& t : traces) {
        const bool covered = t.final_lb <= t.data_min && t.final_ub >= t.data_max;
        const bool margin_exact = t.final_margin == t.i_value / 300.0;
        const bool has_rows = t.rows.size() == 300;
        if (!(covered && margin_exact && has_rows)) {
            ok = false;
            why = t.dist_name + " I=" + fmt(t.i_value);
        }
    }
    const double elapsed = seconds_since(start);
    ok = ok && elapsed < 5.0;
    report(ok, "range-estimator sweep",
           ok ? "16 traces; final intervals cover data extrema; margin width exactly 2I/n; " +
                    fmt(elapsed) + " s"
              : "failed at " + why);
}

// --- checks 3 and 4 share one benchmark run -------------------------------

BenchResult shared_bench() {
    BenchParams params;  // 30 runs, N = 200, (lb0, ub0) = (0, 70), I = 20
    params.seed = 1;
    return run_benchmark(params);
}

void check_benchmark_mse(const BenchResult& bench, double elapsed) {
    const double ilapf_mse = bench.ilapf.mean_mse;
    const double base_mse = bench.baseline.mean_mse;
    const bool in_band = ilapf_mse >= 0.2 && ilapf_mse <= 0.6;
    const bool gap = ilapf_mse < 0.5 * base_mse;
    const bool timed = elapsed < 30.0;
    report(in_band && gap && timed, "benchmark accuracy",
           "mean MSE " + fmt(ilapf_mse) + " (band [0.2, 0.6]); baseline " + fmt(base_mse) +
               " => ratio " + fmt(base_mse / ilapf_mse) + " (need > 2); " + fmt(elapsed) + " s");
}

void check_discrimination(const BenchResult& bench) {
    const auto& schedule = benchmark_scenario().outlier_steps;
    std::vector<int> hits, false_alarms;
    for (const auto& run : bench.ilapf_runs) {
        int hit = 0, fp = 0;
        for (const auto& row : run.trace) {
            const bool scheduled =
                std::find(schedule.begin(), schedule.end(), row.k) != schedule.end();
            if (row.pi1 > 0.5) (scheduled ? hit : fp) += 1;
        }
        hits.push_back(hit);
        false_alarms.push_back(fp);
    }
    auto median = [](std::vector<int> v) {
        std::nth_element(v.begin(), v.begin() + v.size() / 2, v.end());
        return v[v.size() / 2];
    };
    const int med_hits = median(hits);
    const int med_fp = median(false_alarms);
    report(med_hits >= 7 && med_fp <= 3, "outlier discrimination",
           "median " + std::to_string(med_hits) + "/8 outlier steps flagged, " +
               std::to_string(med_fp) + "/52 clean steps flagged");
}

// --- check 5: transfer learning -------------------------------------------

void check_transfer() {
    BenchParams params;
    params.seed = 1;
    const auto chain = transfer_chain(4, params);
    const double mse1 = chain.per_task.front().mean_mse;
    const double mse4 = chain.per_task.back().mean_mse;
    // final reported width per task along the emitted bound trajectory
    double w1 = 0.0, w4 = 0.0;
    for (const auto& row : chain.bound_trajectory) {
        if (row.task == 1) w1 = row.ub_hat - row.lb_hat;
        if (row.task == 4) w4 = row.ub_hat - row.lb_hat;
    }
    const bool mse_improves = mse4 < mse1;
    const bool width_shrinks = w4 < w1;
    report(mse_improves && width_shrinks, "transfer learning",
           "task MSE " + fmt(mse1) + " -> " + fmt(mse4) +
               (mse_improves ? " (improves)" : " (no improvement)") + "; trajectory width " +
               fmt(w1) + " -> " + fmt(w4) + (width_shrinks ? " (shrinks)" : " (no shrink)") +
               "; replicate-mean width " + fmt(chain.mean_final_width.front()) + " -> " +
               fmt(chain.mean_final_width.back()));
}

// --- check 6: property suite -----------------------------------------------

bool prop_weight_normalization(std::string& why) {
    const auto config = benchmark_scenario();
    RngStream sim_rng(61);
    const auto traj = simulate(config, sim_rng);
    FilterParams params;
    IlapfState state = make_ilapf_state(traj.state(1), params);
    RngStream rng(62);
    for (int k = 1; k <= traj.horizon(); ++k) {
        ilapf_step(state, traj.measurement(k), config.model, params, rng);
        if (std::abs(state.ensemble.weight_sum() - 1.0) > 1e-12) {
            why = "weights drifted at step " + std::to_string(k);
            return false;
        }
    }
    return true;
}

bool prop_posterior_identities(std::string& why) {
    const std::vector<double> w0{0.2, 0.1};
    const std::vector<double> w1{0.05, 0.05};
    const auto post = hypothesis_posterior(w0, w1);
    if (!post || std::abs(post->pi0 - 0.75) > 1e-12 || std::abs(post->pi1 - 0.25) > 1e-12) {
        why = "posterior ratio";
        return false;
    }
    const std::vector<double> n0{0.5, 0.5};
    const std::vector<double> n1{1.0, 0.0};
    const auto mixed = mix_weights(n0, n1, HypothesisPosterior{0.25, 0.75});
    if (std::abs(mixed[0] - 0.875) > 1e-12 || std::abs(mixed[1] - 0.125) > 1e-12) {
        why = "mixed-weight arithmetic";
        return false;
    }
    return true;
}

bool prop_scale_invariance(std::string& why) {
    RngStream rng(63);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> w0(16), w1(16);
        for (auto& w : w0) w = rng.next_unit();
        for (auto& w : w1) w = 0.01 * rng.next_unit();
        const double c = std::exp(20.0 * (rng.next_unit() - 0.5));
        std::vector<double> w0c(16), w1c(16);
        for (std::size_t i = 0; i < 16; ++i) {
            w0c[i] = c * w0[i];
            w1c[i] = c * w1[i];
        }
        const auto a = hypothesis_posterior(w0, w1);
        const auto b = hypothesis_posterior(w0c, w1c);
        if (std::abs(a->pi1 - b->pi1) > 1e-12) {
            why = "posterior changed under weight scaling";
            return false;
        }
        const auto ma = mix_weights(w0, w1, *a);
        const auto mb = mix_weights(w0c, w1c, *b);
        for (std::size_t i = 0; i < 16; ++i) {
            if (std::abs(ma[i] - mb[i]) > 1e-12) {
                why = "mixed weights changed under scaling";
                return false;
            }
        }
    }
    return true;
}

bool prop_resampling_unbiased(std::string& why) {
    ParticleEnsemble ens{{-2.0, -0.5, 0.1, 1.3, 2.7, 5.0},
                         {0.05, 0.15, 0.3, 0.25, 0.2, 0.05}};
    const double target = ens.weighted_mean();
    for (auto scheme : {ResampleScheme::kMultinomial, ResampleScheme::kSystematic}) {
        RngStream rng(64);
        const int reps = 10000;
        double sum = 0.0, sq = 0.0;
        for (int t = 0; t < reps; ++t) {
            const double m = resample(ens, scheme, rng).weighted_mean();
            sum += m;
            sq += m * m;
        }
        const double mean = sum / reps;
        const double se = std::sqrt((sq / reps - mean * mean) / reps);
        if (std::abs(mean - target) > 5.0 * se + 1e-12) {
            why = "resampled mean off by more than 5 SE";
            return false;
        }
    }
    return true;
}

bool prop_ore_shift_and_coverage(std::string& why) {
    RngStream rng(65);
    for (int trial = 0; trial < 100; ++trial) {
        OutlierRangeEstimator a(0.0, 70.0, 16.0);
        OutlierRangeEstimator b(4.5, 74.5, 16.0);
        double lo = 1e300, hi = -1e300;
        for (int i = 0; i < 50; ++i) {
            const double z = std::floor(rng.next_unit() * 4096.0) / 1024.0 + 20.0;
            a.observe(z);
            b.observe(z + 4.5);
            lo = std::min(lo, z);
            hi = std::max(hi, z);
            if (a.bounds().first >= lo || a.bounds().second <= hi) {
                why = "bounds failed to cover observed values";
                return false;
            }
        }
        if (b.bounds().first != a.bounds().first + 4.5 ||
            b.bounds().second != a.bounds().second + 4.5) {
            why = "shift equivariance violated";
            return false;
        }
    }
    return true;
}

bool prop_literal_harmonic(std::string& why) {
    OutlierRangeEstimator est(20.0, 70.0, 10.0, OreMode::kLiteral);
    double expected = 20.0;
    for (int j = 1; j <= 60; ++j) {
        est.observe(45.0);
        expected = std::min(expected, 45.0) - 10.0 / j;
        if (est.bounds().first != expected) {
            why = "literal-mode lower bound deviates from the harmonic identity";
            return false;
        }
    }
    return true;
}

bool prop_kalman_oracle(std::string& why) {
    const double m0 = 0.0, P0 = 0.5, Q = 0.5, R = 1.0, y = 1.2;
    const double K = (P0 + Q) / (P0 + Q + R);
    const double kalman_mean = m0 + K * (y - m0);
    StateSpaceModel model{
        [](double x, int) { return x; },
        [](double x, int) { return x; },
        NoiseLaw::gaussian(0.0, Q),
        R,
    };
    const int blocks = 25, n = 4000;  // 1e5 particles total
    double sum = 0.0, sq = 0.0;
    const auto prior_law = NoiseLaw::gaussian(m0, P0);
    for (int b = 0; b < blocks; ++b) {
        RngStream rng(66, static_cast<std::uint64_t>(b));
        ParticleEnsemble prior;
        prior.states.resize(n);
        prior.weights.assign(n, 1.0 / n);
        for (auto& x : prior.states) x = prior_law.sample(rng);
        const double est = bootstrap_pf_step(prior, y, model, 2, rng).estimate;
        sum += est;
        sq += est * est;
    }
    const double mean = sum / blocks;
    const double se = std::sqrt((sq / blocks - mean * mean) / blocks);
    if (std::abs(mean - kalman_mean) > 3.0 * se) {
        why = "posterior mean off the Kalman value by more than 3 MC standard errors";
        return false;
    }
    return true;
}

void check_properties() {
    struct Suite {
        const char* name;
        bool (*run)(std::string&);
    };
    const Suite suites[] = {
        {"weight normalization", prop_weight_normalization},
        {"posterior identities", prop_posterior_identities},
        {"scale invariance", prop_scale_invariance},
        {"resampling unbiasedness", prop_resampling_unbiased},
        {"range shift/coverage", prop_ore_shift_and_coverage},
        {"literal-mode harmonic identity", prop_literal_harmonic},
        {"bootstrap vs Kalman oracle", prop_kalman_oracle},
    };
    std::string detail, why;
    bool ok = true;
    for (const auto& s : suites) {
        if (!s.run(why)) {
            ok = false;
            detail = std::string(s.name) + ": " + why;
            break;
        }
        detail += detail.empty() ? s.name : std::string(", ") + s.name;
    }
    report(ok, "property suites", detail);
}

// --- check 7: determinism and per-step cost --------------------------------

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void check_determinism_and_cost() {
    const auto stamp = std::chrono::steady_clock::now().time_since_epoch().count();
    const auto base = fs::temp_directory_path() / ("ilapf_accept_" + std::to_string(stamp));
    const auto dir_a = base / "a";
    const auto dir_b = base / "b";

    auto invoke = [](const fs::path& out) {
        const std::string out_str = out.string();
        const char* argv[] = {"ilapf", "bench", "--runs", "30",
                              "--seed", "1",    "--out",  out_str.c_str()};
        return cli_main(8, argv);
    };
    bool identical = invoke(dir_a) == 0 && invoke(dir_b) == 0;
    int compared = 0;
    for (const auto& entry : fs::directory_iterator(dir_a)) {
        if (entry.path().extension() != ".csv") continue;
        ++compared;
        if (slurp(entry.path()) != slurp(dir_b / entry.path().filename())) identical = false;
    }
    identical = identical && compared == 60;
    fs::remove_all(base);

    // coarse O(N) scaling: doubling the particle count should roughly double
    // per-step time, far from quadratic
    const auto config = benchmark_scenario();
    RngStream sim_rng(71);
    const auto traj = simulate(config, sim_rng);
    auto time_filter = [&](int particles) {
        FilterParams params;
        params.particle_count = particles;
        double best = 1e300;
        for (int rep = 0; rep < 5; ++rep) {
            RngStream rng(72, static_cast<std::uint64_t>(rep));
            const auto t0 = std::chrono::steady_clock::now();
            run_filter(traj, config.model, params, rng);
            best = std::min(best, seconds_since(t0));
        }
        return best;
    };
    const double t1 = time_filter(2000);
    const double t2 = time_filter(4000);
    const bool linear = t2 / t1 < 3.0;

    report(identical && linear, "determinism and step cost",
           std::string(identical ? "60 CSVs byte-identical across invocations"
                                 : "CSV outputs differ between invocations") +
               "; N: 2000 -> 4000 time ratio " + fmt(t2 / t1) + " (need < 3)");
}

}  // namespace

int main() {
    check_bound_convergence();
    check_sweep();
    const auto bench_start = std::chrono::steady_clock::now();
    const auto bench = shared_bench();
    const double bench_elapsed = seconds_since(bench_start);
    check_benchmark_mse(bench, bench_elapsed);
    check_discrimination(bench);
    check_transfer();
    check_properties();
    check_determinism_and_cost();
    if (failures == 0) std::printf("all acceptance checks passed\n");
    return failures;
}
