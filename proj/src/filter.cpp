#include "ilapf/filter.hpp"

#include <chrono>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "ilapf/io.hpp"

namespace ilapf {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double sum(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
}

double effective_sample_size(std::span<const double> w) {
    double sq = 0.0;
    for (double x : w) sq += x * x;
    return sq > 0.0 ? 1.0 / sq : 0.0;
}

}  // namespace

void write_warm_start(const WarmStart& ws, std::ostream& out) {
    write_kv(out, "lb_hat", ws.lb_hat);
    write_kv(out, "ub_hat", ws.ub_hat);
    write_kv(out, "n", static_cast<std::int64_t>(ws.n));
}

WarmStart read_warm_start(std::istream& in) {
    WarmStart ws{0.0, 0.0, -1};
    bool have_lb = false, have_ub = false;
    std::string line;
    while (std::getline(in, line)) {
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = line.substr(0, eq);
        const std::string value = line.substr(eq + 1);
        if (key == "lb_hat") {
            ws.lb_hat = std::stod(value);
            have_lb = true;
        } else if (key == "ub_hat") {
            ws.ub_hat = std::stod(value);
            have_ub = true;
        } else if (key == "n") {
            ws.n = std::stoi(value);
        }
    }
    if (!have_lb || !have_ub || ws.n < 0)
        throw std::invalid_argument("warm start record needs lb_hat, ub_hat and n");
    return ws;
}

IlapfState make_ilapf_state(double x1, const FilterParams& params,
                            std::optional<WarmStart> warm, RngStream* init_rng) {
    if (params.particle_count < 1) throw std::invalid_argument("particle_count must be >= 1");
    auto ore = warm ? OutlierRangeEstimator::warm_started(warm->lb_hat, warm->ub_hat, warm->n,
                                                          params.i_param, params.ore_mode)
                    : OutlierRangeEstimator(params.lb0, params.ub0, params.i_param,
                                            params.ore_mode);
    const auto n = static_cast<std::size_t>(params.particle_count);
    ParticleEnsemble ens = ParticleEnsemble::uniform_at(x1, n);
    if (params.initial_law) {
        if (init_rng == nullptr)
            throw std::invalid_argument("initial_law requires an init rng");
        for (double& x : ens.states) x = params.initial_law->sample(*init_rng);
    }
    return IlapfState{std::move(ens), std::move(ore), 0};
}

std::vector<double> propagate(const ParticleEnsemble& ens, const StateSpaceModel& model, int k,
                              RngStream& rng) {
    std::vector<double> proposed(ens.size());
    for (std::size_t i = 0; i < ens.size(); ++i)
        proposed[i] = model.transition(ens.states[i], k) + model.process_noise.sample(rng);
    return proposed;
}

HypothesisWeights hypothesis_weights(std::span<const double> proposed,
                                     std::span<const double> prior_weights, double y,
                                     const StateSpaceModel& model, int k, double lb, double ub) {
    if (!(ub > lb)) throw std::invalid_argument("hypothesis_weights requires lb < ub");
    HypothesisWeights w;
    w.w0.resize(proposed.size());
    w.w1.resize(proposed.size());
    const double R = model.measurement_variance;
    for (std::size_t i = 0; i < proposed.size(); ++i) {
        const double e = y - model.measurement(proposed[i], k);
        w.w0[i] = prior_weights[i] * std::exp(log_likelihood_nonoutlier(e, R));
        w.w1[i] = prior_weights[i] * likelihood_outlier(e, lb, ub);
    }
    return w;
}

std::optional<HypothesisPosterior> hypothesis_posterior(std::span<const double> w0,
                                                        std::span<const double> w1) {
    const double l0 = sum(w0);
    const double l1 = sum(w1);
    if (l0 + l1 <= 0.0) return std::nullopt;
    return HypothesisPosterior{l0 / (l0 + l1), l1 / (l0 + l1)};
}

std::vector<double> mix_weights(std::span<const double> w0, std::span<const double> w1,
                                const HypothesisPosterior& post) {
    const double l0 = sum(w0);
    const double l1 = sum(w1);
    if (post.pi0 > 0.0 && !(l0 > 0.0))
        throw std::logic_error("mix_weights: pi0 > 0 but hypothesis-0 weights sum to zero");
    if (post.pi1 > 0.0 && !(l1 > 0.0))
        throw std::logic_error("mix_weights: pi1 > 0 but hypothesis-1 weights sum to zero");
    std::vector<double> mixed(w0.size(), 0.0);
    if (post.pi1 == 0.0) {
        // single-hypothesis collapse; identical arithmetic to a plain
        // Gaussian-likelihood weight update
        for (std::size_t i = 0; i < mixed.size(); ++i) mixed[i] = w0[i] / l0;
        return mixed;
    }
    if (post.pi0 == 0.0) {
        for (std::size_t i = 0; i < mixed.size(); ++i) mixed[i] = w1[i] / l1;
        return mixed;
    }
    for (std::size_t i = 0; i < mixed.size(); ++i)
        mixed[i] = post.pi0 * (w0[i] / l0) + post.pi1 * (w1[i] / l1);
    const double total = sum(mixed);
    for (double& w : mixed) w /= total;
    return mixed;
}

double extract_outlier_value(std::span<const double> proposed,
                             std::span<const double> prior_weights, double y,
                             const StateSpaceModel& model, int k) {
    double predicted = 0.0;
    for (std::size_t i = 0; i < proposed.size(); ++i)
        predicted += prior_weights[i] * model.measurement(proposed[i], k);
    return y - predicted;
}

bool declares_outlier(double pi1) { return pi1 > 0.5; }

StepReport ilapf_step(IlapfState& state, double y, const StateSpaceModel& model,
                      const FilterParams& params, RngStream& rng) {
    const int k = state.step + 1;
    // step 1 ingests the first measurement with the initial particles; there
    // is no transition leading into it
    std::vector<double> proposed =
        k == 1 ? state.ensemble.states : propagate(state.ensemble, model, k - 1, rng);
    const auto [lb, ub] = state.ore.bounds();
    const auto weights =
        hypothesis_weights(proposed, state.ensemble.weights, y, model, k, lb, ub);
    const auto post = hypothesis_posterior(weights.w0, weights.w1);

    StepReport report{};
    std::vector<double> mixed;
    if (!post) {
        // degenerate: measurement is a surprise outlier; expand the range
        // and carry the prior weights forward unchanged
        report.degenerate = true;
        report.outlier_declared = true;
        report.pi1 = 1.0;
        state.ore.observe(
            extract_outlier_value(proposed, state.ensemble.weights, y, model, k));
        mixed = state.ensemble.weights;
    } else {
        report.pi1 = post->pi1;
        report.outlier_declared = declares_outlier(post->pi1);
        mixed = mix_weights(weights.w0, weights.w1, *post);
        if (report.outlier_declared)
            state.ore.observe(
                extract_outlier_value(proposed, state.ensemble.weights, y, model, k));
    }

    report.estimate = dot(mixed, proposed);
    std::tie(report.lb_hat, report.ub_hat) = state.ore.bounds();

    ParticleEnsemble weighted{std::move(proposed), std::move(mixed)};
    const double n = static_cast<double>(weighted.size());
    if (params.ess_triggered_resampling &&
        effective_sample_size(weighted.weights) >= params.ess_fraction * n) {
        state.ensemble = std::move(weighted);
    } else {
        state.ensemble = resample(weighted, params.resampler, rng);
    }
    state.step = k;
    return report;
}

namespace {

RunMetrics finish_run(std::vector<StepTrace> trace,
                      std::chrono::steady_clock::time_point start, double final_lb,
                      double final_ub, int final_n) {
    RunMetrics metrics;
    double sq = 0.0;
    for (const auto& row : trace) sq += (row.x_hat - row.x_true) * (row.x_hat - row.x_true);
    metrics.mse = sq / static_cast<double>(trace.size());
    metrics.trace = std::move(trace);
    metrics.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    metrics.final_lb = final_lb;
    metrics.final_ub = final_ub;
    metrics.final_n = final_n;
    return metrics;
}

}  // namespace

RunMetrics run_filter(const Trajectory& traj, const StateSpaceModel& model,
                      const FilterParams& params, RngStream& rng,
                      std::optional<WarmStart> warm) {
    const auto start = std::chrono::steady_clock::now();
    IlapfState state = make_ilapf_state(traj.state(1), params, warm, &rng);
    std::vector<StepTrace> trace;
    trace.reserve(static_cast<std::size_t>(traj.horizon()));
    for (int k = 1; k <= traj.horizon(); ++k) {
        const StepReport rep = ilapf_step(state, traj.measurement(k), model, params, rng);
        trace.push_back(StepTrace{k, traj.state(k), traj.measurement(k), rep.estimate, rep.pi1,
                                  rep.outlier_declared, rep.lb_hat, rep.ub_hat,
                                  rep.degenerate});
    }
    const auto [lb, ub] = state.ore.bounds();
    return finish_run(std::move(trace), start, lb, ub, state.ore.count());
}

RunMetrics run_bootstrap_filter(const Trajectory& traj, const StateSpaceModel& model,
                                const FilterParams& params, RngStream& rng) {
    const auto start = std::chrono::steady_clock::now();
    if (params.particle_count < 1) throw std::invalid_argument("particle_count must be >= 1");
    ParticleEnsemble ens =
        ParticleEnsemble::uniform_at(traj.state(1), static_cast<std::size_t>(params.particle_count));
    std::vector<StepTrace> trace;
    trace.reserve(static_cast<std::size_t>(traj.horizon()));
    for (int k = 1; k <= traj.horizon(); ++k) {
        const double y = traj.measurement(k);
        double estimate;
        bool degenerate = false;
        if (k == 1) {
            // weight the initial particles directly; no transition yet
            ParticleEnsemble weighted = ens;
            const double R = model.measurement_variance;
            double s = 0.0;
            for (std::size_t i = 0; i < weighted.size(); ++i) {
                const double e = y - model.measurement(weighted.states[i], k);
                weighted.weights[i] =
                    ens.weights[i] * std::exp(log_likelihood_nonoutlier(e, R));
                s += weighted.weights[i];
            }
            if (s > 0.0) {
                for (double& w : weighted.weights) w /= s;
            } else {
                weighted.weights = ens.weights;
                degenerate = true;
            }
            estimate = weighted.weighted_mean();
            ens = resample(weighted, params.resampler, rng);
        } else {
            auto result = bootstrap_pf_step(ens, y, model, k, rng, params.resampler);
            estimate = result.estimate;
            degenerate = result.degenerate;
            ens = std::move(result.ensemble);
        }
        trace.push_back(
            StepTrace{k, traj.state(k), y, estimate, kNaN, false, kNaN, kNaN, degenerate});
    }
    return finish_run(std::move(trace), start, kNaN, kNaN, 0);
}

void write_run_csv(const RunMetrics& metrics, std::ostream& out) {
    out << "k,x_true,y,x_hat,pi1,outlier_declared,lb_hat,ub_hat,degenerate\n";
    for (const auto& r : metrics.trace) {
        out << r.k << ',' << format_double(r.x_true) << ',' << format_double(r.y) << ','
            << format_double(r.x_hat) << ',' << format_double(r.pi1) << ','
            << (r.outlier_declared ? 1 : 0) << ',' << format_double(r.lb_hat) << ','
            << format_double(r.ub_hat) << ',' << (r.degenerate ? 1 : 0) << '\n';
    }
}

}  // namespace ilapf
