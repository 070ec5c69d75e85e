#pragma once

#include <functional>
#include <iosfwd>
#include <vector>

#include "ilapf/noise.hpp"
#include "ilapf/rng.hpp"

namespace ilapf {

/// Scalar state-space model
///   x_{k+1} = f(x_k, k) + u_k,   y_k = h(x_k, k) + n_k.
/// Both f and h take the time index so time-varying models are expressible.
/// Under nominal conditions n_k ~ N(0, R); the filter treats R as known.
struct StateSpaceModel {
    std::function<double(double x, int k)> transition;
    std::function<double(double x, int k)> measurement;
    NoiseLaw process_noise;
    double measurement_variance;  // R > 0
};

/// The bundled benchmark model: drifting sinusoidal growth with a quadratic
/// measurement map that switches to an affine one after step 30.
///   f(x, k) = 1 + sin(0.04*pi*(k+1)) + 0.5*x
///   h(x, k) = 0.2*x^2            for k <= 30
///             0.2*x - 2          for k >  30
/// Process noise is Gamma(shape, scale), R = 0.01. The default Gamma
/// parameters are (3, 1/2); pass explicit values for other conventions.
StateSpaceModel benchmark_model(double gamma_shape = 3.0, double gamma_scale = 0.5);

/// Full description of one synthetic filtering experiment.
struct ScenarioConfig {
    int horizon = 60;                 // K >= 1
    double initial_state = 1.0;       // x_1, known to the filter
    std::vector<int> outlier_steps;   // subset of {1, ..., K}
    NoiseLaw outlier_law;             // measurement noise at scheduled steps
    NoiseLaw clean_noise;             // measurement noise elsewhere
    StateSpaceModel model;

    bool is_outlier_step(int k) const;
    void validate() const;  // throws std::invalid_argument on bad config
};

/// Benchmark scenario: K = 60, x_1 = 1, outliers U(20, 30) injected at
/// steps {7, 8, 9, 20, 37, 38, 39, 50}, clean noise N(0, 0.01).
ScenarioConfig benchmark_scenario(double gamma_shape = 3.0, double gamma_scale = 0.5);

/// Ground truth states/measurements, index 0 holds step k = 1.
struct Trajectory {
    std::vector<double> states;
    std::vector<double> measurements;
    std::vector<bool> outlier_flags;

    int horizon() const { return static_cast<int>(states.size()); }
    double state(int k) const { return states[static_cast<std::size_t>(k - 1)]; }
    double measurement(int k) const { return measurements[static_cast<std::size_t>(k - 1)]; }
    bool is_outlier(int k) const { return outlier_flags[static_cast<std::size_t>(k - 1)]; }
};

Trajectory simulate(const ScenarioConfig& config, RngStream& rng);

/// CSV with header `k,x_true,y,is_outlier`, one row per step.
void write_trajectory_csv(const Trajectory& traj, std::ostream& out);
Trajectory read_trajectory_csv(std::istream& in);

}  // namespace ilapf
