#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "ilapf/ore.hpp"
#include "ilapf/particle.hpp"
#include "ilapf/rng.hpp"
#include "ilapf/ssm.hpp"

namespace ilapf {

/// Posterior probabilities of the non-outlier (pi0) and outlier (pi1)
/// hypotheses for the current measurement; pi0 + pi1 = 1.
struct HypothesisPosterior {
    double pi0;
    double pi1;
};

/// Tuning knobs of a filter run. Defaults match the bundled benchmark.
struct FilterParams {
    int particle_count = 200;
    double lb0 = 0.0;     // initial outlier-range guess
    double ub0 = 70.0;
    double i_param = 20.0;
    OreMode ore_mode = OreMode::kExtrema;
    ResampleScheme resampler = ResampleScheme::kMultinomial;
    bool ess_triggered_resampling = false;  // study option; default resamples every step
    double ess_fraction = 0.5;
    std::optional<NoiseLaw> initial_law;    // particle init when x1 is not known exactly
};

/// Learned outlier-range state carried from one filtering task to the next.
struct WarmStart {
    double lb_hat;
    double ub_hat;
    int n;
};

/// Key-value text form: lb_hat=, ub_hat=, n= lines.
void write_warm_start(const WarmStart& ws, std::ostream& out);
WarmStart read_warm_start(std::istream& in);

struct StepReport {
    double estimate;        // posterior-mean state, from mixed weights, pre-resampling
    double pi1;
    bool outlier_declared;  // pi1 > 0.5, or forced by the degenerate policy
    double lb_hat;          // bounds after any range update this step
    double ub_hat;
    bool degenerate;        // both hypothesis likelihoods were exactly zero
};

/// Mutable per-run filter state: the ensemble from the previous step, the
/// outlier-range estimator, and the step counter.
struct IlapfState {
    ParticleEnsemble ensemble;
    OutlierRangeEstimator ore;
    int step = 0;  // index of the last processed measurement; 0 before any

    int outliers_found() const { return ore.count(); }
};

IlapfState make_ilapf_state(double x1, const FilterParams& params,
                            std::optional<WarmStart> warm = std::nullopt,
                            RngStream* init_rng = nullptr);

/// Draw proposals from the state-transition prior: f(x_i, k) + u_i with one
/// independent process-noise draw per particle. k is the time index of the
/// *current* particles; the result represents step k + 1.
std::vector<double> propagate(const ParticleEnsemble& ens, const StateSpaceModel& model, int k,
                              RngStream& rng);

/// Per-particle unnormalized weights under both measurement hypotheses:
///   w0_i = prior_i * N(e_i | 0, R)          (computed in the log domain and
///                                            exponentiated, so underflow to
///                                            exact zero is well defined)
///   w1_i = prior_i * uniform(e_i; lb, ub)
/// with e_i = y - h(proposed_i, k).
struct HypothesisWeights {
    std::vector<double> w0;
    std::vector<double> w1;
};
HypothesisWeights hypothesis_weights(std::span<const double> proposed,
                                     std::span<const double> prior_weights, double y,
                                     const StateSpaceModel& model, int k, double lb, double ub);

/// Hypothesis likelihoods are the weight sums; the posterior is their ratio
/// (the uniform 0.5/0.5 prior cancels). Returns nullopt when both sums are
/// exactly zero - the degenerate-step signal.
std::optional<HypothesisPosterior> hypothesis_posterior(std::span<const double> w0,
                                                        std::span<const double> w1);

/// Blend the per-hypothesis normalized weights by the hypothesis posterior;
/// a hypothesis with zero posterior contributes nothing. Result sums to 1.
std::vector<double> mix_weights(std::span<const double> w0, std::span<const double> w1,
                                const HypothesisPosterior& post);

/// Scalar fed to the range estimator for a detected outlier: the residual
/// of the measurement against the prior-predictive mean
///   z = y - sum_i prior_i * h(proposed_i, k).
/// An outlying y carries little state information, so the propagated
/// particles' predicted measurement is the reference for isolating the
/// noise component that the learned bounds describe.
double extract_outlier_value(std::span<const double> proposed,
                             std::span<const double> prior_weights, double y,
                             const StateSpaceModel& model, int k);

bool declares_outlier(double pi1);  // strict: pi1 > 0.5

/// One full filter iteration: propagate, weight under both hypotheses,
/// infer the outlier posterior, mix weights, update the learned range on a
/// declared outlier, resample. The reported estimate uses the mixed weights
/// before resampling.
///
/// Degenerate steps (both hypothesis likelihoods exactly zero - the
/// measurement is far in the Gaussian tail *and* outside the learned range)
/// declare an outlier, feed z to the range estimator so the range can
/// expand, and carry the prior weights forward unchanged.
StepReport ilapf_step(IlapfState& state, double y, const StateSpaceModel& model,
                      const FilterParams& params, RngStream& rng);

struct StepTrace {
    int k;
    double x_true;
    double y;
    double x_hat;
    double pi1;
    bool outlier_declared;
    double lb_hat;
    double ub_hat;
    bool degenerate;
};

struct RunMetrics {
    double mse = 0.0;
    std::vector<StepTrace> trace;
    double wall_seconds = 0.0;
    double final_lb = 0.0;
    double final_ub = 0.0;
    int final_n = 0;
};

/// Run the full filter over a simulated trajectory; per-step traces and
/// MSE = mean_k (estimate_k - x_k)^2.
RunMetrics run_filter(const Trajectory& traj, const StateSpaceModel& model,
                      const FilterParams& params, RngStream& rng,
                      std::optional<WarmStart> warm = std::nullopt);

/// Same loop for the bootstrap baseline. Range/posterior columns of the
/// trace are not applicable and recorded as NaN.
RunMetrics run_bootstrap_filter(const Trajectory& traj, const StateSpaceModel& model,
                                const FilterParams& params, RngStream& rng);

/// CSV with header `k,x_true,y,x_hat,pi1,outlier_declared,lb_hat,ub_hat,degenerate`.
void write_run_csv(const RunMetrics& metrics, std::ostream& out);

}  // namespace ilapf
