#pragma once

#include <string>
#include <variant>
#include <vector>

#include "ilapf/rng.hpp"

namespace ilapf {

struct Gaussian {
    double mean;
    double variance;  // >= 0; zero gives a point mass
};

struct Uniform {
    double low;
    double high;  // low < high; draws land in [low, high)
};

struct Gamma {
    double shape;  // > 0
    double scale;  // > 0
};

struct StudentT {
    double dof;       // > 0
    double location;
    double scale;     // > 0
};

struct MixtureComponent {
    double weight;
    double mean;
    double variance;
};

struct GaussianMixture {
    std::vector<MixtureComponent> components;  // weights >= 0, summing to 1
};

/// A validated, sampleable noise distribution. Parameter constraints are
/// enforced at construction; violations throw std::invalid_argument.
class NoiseLaw {
public:
    using Distribution = std::variant<Gaussian, Uniform, Gamma, StudentT, GaussianMixture>;

    static NoiseLaw gaussian(double mean, double variance);
    static NoiseLaw uniform(double low, double high);
    static NoiseLaw gamma(double shape, double scale);
    static NoiseLaw student_t(double dof, double location, double scale);
    static NoiseLaw gaussian_mixture(std::vector<MixtureComponent> components);

    /// Degenerate distribution that always returns v. Handy in tests.
    static NoiseLaw point_mass(double v) { return gaussian(v, 0.0); }

    double sample(RngStream& rng) const;

    double mean() const;
    double variance() const;

    const Distribution& dist() const { return dist_; }

    /// Short lowercase tag ("gaussian", "uniform", ...) for file naming.
    std::string tag() const;

private:
    explicit NoiseLaw(Distribution d) : dist_(std::move(d)) {}
    Distribution dist_;
};

/// N(e | 0, variance). Throws std::invalid_argument unless variance > 0.
double gaussian_density(double e, double variance);

/// log N(e | 0, variance); underflow-safe companion of gaussian_density.
double gaussian_log_density(double e, double variance);

}  // namespace ilapf
