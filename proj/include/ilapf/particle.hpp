#pragma once

#include <stdexcept>
#include <vector>

#include "ilapf/rng.hpp"
#include "ilapf/ssm.hpp"

namespace ilapf {

/// All importance weights are exactly zero, so the ensemble carries no
/// usable posterior information. Callers apply their degenerate-step policy.
class DegenerateEnsembleError : public std::runtime_error {
public:
    DegenerateEnsembleError() : std::runtime_error("ensemble weights sum to zero") {}
};

/// Weighted particle set approximating the state posterior.
struct ParticleEnsemble {
    std::vector<double> states;
    std::vector<double> weights;

    std::size_t size() const { return states.size(); }

    static ParticleEnsemble uniform_at(double x, std::size_t n);

    double weight_sum() const;
    double weighted_mean() const;

    /// Scale weights to sum 1. Throws DegenerateEnsembleError on zero sum.
    void normalize();
};

/// N(e | 0, R) - the measurement likelihood under the nominal hypothesis.
double likelihood_nonoutlier(double e, double R);
double log_likelihood_nonoutlier(double e, double R);

/// Bounded-uniform likelihood: 1/(ub - lb) if e is in the closed interval
/// [lb, ub], else 0. Throws std::invalid_argument if ub <= lb.
double likelihood_outlier(double e, double lb, double ub);

enum class ResampleScheme { kMultinomial, kSystematic };

/// Draw n particles i.i.d. from the weighted empirical distribution and
/// reset all weights to 1/n. Throws DegenerateEnsembleError on all-zero
/// weights.
ParticleEnsemble resample_multinomial(const ParticleEnsemble& ens, RngStream& rng);

/// Stratified variant with a single uniform offset; lower variance, same
/// marginals in expectation.
ParticleEnsemble resample_systematic(const ParticleEnsemble& ens, RngStream& rng);

ParticleEnsemble resample(const ParticleEnsemble& ens, ResampleScheme scheme, RngStream& rng);

struct BootstrapStepResult {
    ParticleEnsemble ensemble;  // after resampling
    double estimate;            // posterior mean before resampling
    bool degenerate;            // prior weights were kept for this step
};

/// One iteration of the plain bootstrap particle filter: propagate through
/// the transition prior, weight by the Gaussian likelihood alone, resample.
/// Serves as the non-robust baseline; it has no outlier hypothesis, so an
/// outlying measurement is absorbed into the N(0, R) likelihood.
///
/// Weights are first formed in the linear domain (prior weight times
/// density). If every product underflows to zero the step falls back to
/// max-shifted log-weight ratios; if even the log-likelihoods are all
/// -infinity the prior weights are kept and the step is flagged.
BootstrapStepResult bootstrap_pf_step(const ParticleEnsemble& ens, double y,
                                      const StateSpaceModel& model, int k, RngStream& rng,
                                      ResampleScheme scheme = ResampleScheme::kMultinomial);

}  // namespace ilapf
