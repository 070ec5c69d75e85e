#include "ilapf/particle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ilapf {

ParticleEnsemble ParticleEnsemble::uniform_at(double x, std::size_t n) {
    ParticleEnsemble ens;
    ens.states.assign(n, x);
    ens.weights.assign(n, 1.0 / static_cast<double>(n));
    return ens;
}

double ParticleEnsemble::weight_sum() const {
    double s = 0.0;
    for (double w : weights) s += w;
    return s;
}

double ParticleEnsemble::weighted_mean() const {
    double s = 0.0;
    for (std::size_t i = 0; i < states.size(); ++i) s += weights[i] * states[i];
    return s;
}

void ParticleEnsemble::normalize() {
    const double s = weight_sum();
    if (s <= 0.0) throw DegenerateEnsembleError{};
    for (double& w : weights) w /= s;
}

double likelihood_nonoutlier(double e, double R) { return gaussian_density(e, R); }

double log_likelihood_nonoutlier(double e, double R) { return gaussian_log_density(e, R); }

double likelihood_outlier(double e, double lb, double ub) {
    if (!(ub > lb)) throw std::invalid_argument("likelihood_outlier requires ub > lb");
    return (e >= lb && e <= ub) ? 1.0 / (ub - lb) : 0.0;
}

namespace {

std::vector<double> cumulative_weights(const ParticleEnsemble& ens) {
    std::vector<double> cdf(ens.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < ens.size(); ++i) {
        acc += ens.weights[i];
        cdf[i] = acc;
    }
    if (!(acc > 0.0)) throw DegenerateEnsembleError{};
    return cdf;
}

ParticleEnsemble from_indices(const ParticleEnsemble& ens, const std::vector<std::size_t>& idx) {
    ParticleEnsemble out;
    out.states.reserve(idx.size());
    for (std::size_t i : idx) out.states.push_back(ens.states[i]);
    out.weights.assign(idx.size(), 1.0 / static_cast<double>(idx.size()));
    return out;
}

}  // namespace

ParticleEnsemble resample_multinomial(const ParticleEnsemble& ens, RngStream& rng) {
    const auto cdf = cumulative_weights(ens);
    const double total = cdf.back();
    const std::size_t last = ens.size() - 1;
    std::vector<std::size_t> idx(ens.size());
    for (std::size_t i = 0; i < ens.size(); ++i) {
        const double u = total * rng.next_unit();
        // first cdf entry strictly above u; zero-weight particles span empty
        // intervals and are never selected
        const auto pos = static_cast<std::size_t>(
            std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
        idx[i] = std::min(pos, last);
    }
    return from_indices(ens, idx);
}

ParticleEnsemble resample_systematic(const ParticleEnsemble& ens, RngStream& rng) {
    const auto cdf = cumulative_weights(ens);
    const double total = cdf.back();
    const std::size_t n = ens.size();
    std::vector<std::size_t> idx(n);
    const double step = total / static_cast<double>(n);
    double u = step * rng.next_unit();
    std::size_t j = 0;
    for (std::size_t i = 0; i < n; ++i) {
        while (j + 1 < n && cdf[j] <= u) ++j;
        idx[i] = j;
        u += step;
    }
    return from_indices(ens, idx);
}

ParticleEnsemble resample(const ParticleEnsemble& ens, ResampleScheme scheme, RngStream& rng) {
    return scheme == ResampleScheme::kMultinomial ? resample_multinomial(ens, rng)
                                                  : resample_systematic(ens, rng);
}

BootstrapStepResult bootstrap_pf_step(const ParticleEnsemble& ens, double y,
                                      const StateSpaceModel& model, int k, RngStream& rng,
                                      ResampleScheme scheme) {
    const std::size_t n = ens.size();
    ParticleEnsemble next;
    next.states.resize(n);
    next.weights.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        next.states[i] =
            model.transition(ens.states[i], k - 1) + model.process_noise.sample(rng);

    std::vector<double> log_lik(n);
    double sum = 0.0;
    double max_log = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        const double e = y - model.measurement(next.states[i], k);
        log_lik[i] = log_likelihood_nonoutlier(e, model.measurement_variance);
        max_log = std::max(max_log, log_lik[i]);
        next.weights[i] = ens.weights[i] * std::exp(log_lik[i]);
        sum += next.weights[i];
    }

    bool degenerate = false;
    if (sum > 0.0) {
        for (double& w : next.weights) w /= sum;
    } else if (std::isfinite(max_log)) {
        // every linear-domain product underflowed; weight by likelihood ratios
        double ratio_sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            next.weights[i] = ens.weights[i] * std::exp(log_lik[i] - max_log);
            ratio_sum += next.weights[i];
        }
        for (double& w : next.weights) w /= ratio_sum;
    } else {
        next.weights = ens.weights;  // keep prior weights, flag the step
        degenerate = true;
    }

    const double estimate = next.weighted_mean();
    auto resampled = resample(next, scheme, rng);
    return BootstrapStepResult{std::move(resampled), estimate, degenerate};
}

}  // namespace ilapf
