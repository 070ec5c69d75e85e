#include "ilapf/ssm.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "ilapf/io.hpp"

namespace ilapf {

StateSpaceModel benchmark_model(double gamma_shape, double gamma_scale) {
    StateSpaceModel m{
        [](double x, int k) {
            return 1.0 + std::sin(0.04 * RngStream::pi() * (k + 1)) + 0.5 * x;
        },
        [](double x, int k) { return k <= 30 ? 0.2 * x * x : 0.2 * x - 2.0; },
        NoiseLaw::gamma(gamma_shape, gamma_scale),
        0.01,
    };
    return m;
}

ScenarioConfig benchmark_scenario(double gamma_shape, double gamma_scale) {
    return ScenarioConfig{
        60,
        1.0,
        {7, 8, 9, 20, 37, 38, 39, 50},
        NoiseLaw::uniform(20.0, 30.0),
        NoiseLaw::gaussian(0.0, 0.01),
        benchmark_model(gamma_shape, gamma_scale),
    };
}

bool ScenarioConfig::is_outlier_step(int k) const {
    return std::find(outlier_steps.begin(), outlier_steps.end(), k) != outlier_steps.end();
}

void ScenarioConfig::validate() const {
    if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
    if (!(model.measurement_variance > 0.0))
        throw std::invalid_argument("measurement variance must be > 0");
    if (!model.transition || !model.measurement)
        throw std::invalid_argument("model functions must be set");
    for (int k : outlier_steps)
        if (k < 1 || k > horizon)
            throw std::invalid_argument("outlier steps must lie in {1, ..., K}");
}

Trajectory simulate(const ScenarioConfig& config, RngStream& rng) {
    config.validate();
    const int K = config.horizon;
    Trajectory traj;
    traj.states.resize(static_cast<std::size_t>(K));
    traj.measurements.resize(static_cast<std::size_t>(K));
    traj.outlier_flags.resize(static_cast<std::size_t>(K));

    traj.states[0] = config.initial_state;
    for (int k = 1; k < K; ++k) {
        const double u = config.model.process_noise.sample(rng);
        traj.states[static_cast<std::size_t>(k)] =
            config.model.transition(traj.states[static_cast<std::size_t>(k - 1)], k) + u;
    }
    for (int k = 1; k <= K; ++k) {
        const bool outlier = config.is_outlier_step(k);
        const double n = outlier ? config.outlier_law.sample(rng) : config.clean_noise.sample(rng);
        traj.measurements[static_cast<std::size_t>(k - 1)] =
            config.model.measurement(traj.states[static_cast<std::size_t>(k - 1)], k) + n;
        traj.outlier_flags[static_cast<std::size_t>(k - 1)] = outlier;
    }
    return traj;
}

void write_trajectory_csv(const Trajectory& traj, std::ostream& out) {
    out << "k,x_true,y,is_outlier\n";
    for (int k = 1; k <= traj.horizon(); ++k) {
        out << k << ',' << format_double(traj.state(k)) << ',' << format_double(traj.measurement(k))
            << ',' << (traj.is_outlier(k) ? 1 : 0) << '\n';
    }
}

Trajectory read_trajectory_csv(std::istream& in) {
    Trajectory traj;
    std::string line;
    if (!std::getline(in, line) || line.rfind("k,x_true,y,is_outlier", 0) != 0)
        throw std::invalid_argument("trajectory CSV missing expected header");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string field;
        std::getline(row, field, ',');  // k, implied by position
        std::getline(row, field, ',');
        traj.states.push_back(std::stod(field));
        std::getline(row, field, ',');
        traj.measurements.push_back(std::stod(field));
        std::getline(row, field, ',');
        traj.outlier_flags.push_back(field != "0");
    }
    return traj;
}

}  // namespace ilapf
