#include "ilapf/noise.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ilapf {

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
}

bool finite(double v) { return std::isfinite(v); }

/// Marsaglia-Tsang squeeze method for Gamma(shape, 1), shape >= 1.
double sample_gamma_unit(RngStream& rng, double shape) {
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = rng.next_gaussian();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = rng.next_unit_open();
        const double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
    }
}

double sample_gamma(RngStream& rng, double shape, double scale) {
    if (shape < 1.0) {
        // boost: X ~ Gamma(shape+1), X * U^(1/shape) ~ Gamma(shape)
        const double u = rng.next_unit_open();
        return scale * sample_gamma_unit(rng, shape + 1.0) * std::pow(u, 1.0 / shape);
    }
    return scale * sample_gamma_unit(rng, shape);
}

struct SampleVisitor {
    RngStream& rng;

    double operator()(const Gaussian& g) const {
        return g.mean + std::sqrt(g.variance) * rng.next_gaussian();
    }
    double operator()(const Uniform& u) const {
        return u.low + (u.high - u.low) * rng.next_unit();
    }
    double operator()(const Gamma& g) const {
        return sample_gamma(rng, g.shape, g.scale);
    }
    double operator()(const StudentT& t) const {
        // z / sqrt(chi2_dof / dof), chi-square via Gamma(dof/2, 2)
        const double z = rng.next_gaussian();
        const double chi2 = sample_gamma(rng, t.dof / 2.0, 2.0);
        return t.location + t.scale * z / std::sqrt(chi2 / t.dof);
    }
    double operator()(const GaussianMixture& m) const {
        const double u = rng.next_unit();
        double acc = 0.0;
        for (const auto& c : m.components) {
            acc += c.weight;
            if (u < acc) return c.mean + std::sqrt(c.variance) * rng.next_gaussian();
        }
        const auto& last = m.components.back();
        return last.mean + std::sqrt(last.variance) * rng.next_gaussian();
    }
};

struct MeanVisitor {
    double operator()(const Gaussian& g) const { return g.mean; }
    double operator()(const Uniform& u) const { return 0.5 * (u.low + u.high); }
    double operator()(const Gamma& g) const { return g.shape * g.scale; }
    double operator()(const StudentT& t) const { return t.location; }  // dof > 1
    double operator()(const GaussianMixture& m) const {
        double s = 0.0;
        for (const auto& c : m.components) s += c.weight * c.mean;
        return s;
    }
};

struct VarianceVisitor {
    double operator()(const Gaussian& g) const { return g.variance; }
    double operator()(const Uniform& u) const {
        const double w = u.high - u.low;
        return w * w / 12.0;
    }
    double operator()(const Gamma& g) const { return g.shape * g.scale * g.scale; }
    double operator()(const StudentT& t) const {
        if (t.dof <= 2.0) return std::numeric_limits<double>::infinity();
        return t.scale * t.scale * t.dof / (t.dof - 2.0);
    }
    double operator()(const GaussianMixture& m) const {
        const double mu = MeanVisitor{}(m);
        double s = 0.0;
        for (const auto& c : m.components)
            s += c.weight * (c.variance + (c.mean - mu) * (c.mean - mu));
        return s;
    }
};

struct TagVisitor {
    std::string operator()(const Gaussian&) const { return "gaussian"; }
    std::string operator()(const Uniform&) const { return "uniform"; }
    std::string operator()(const Gamma&) const { return "gamma"; }
    std::string operator()(const StudentT&) const { return "student_t"; }
    std::string operator()(const GaussianMixture&) const { return "mixture"; }
};

}  // namespace

NoiseLaw NoiseLaw::gaussian(double mean, double variance) {
    require(finite(mean) && finite(variance) && variance >= 0.0,
            "Gaussian requires finite mean and variance >= 0");
    return NoiseLaw{Gaussian{mean, variance}};
}

NoiseLaw NoiseLaw::uniform(double low, double high) {
    require(finite(low) && finite(high) && low < high, "Uniform requires low < high");
    return NoiseLaw{Uniform{low, high}};
}

NoiseLaw NoiseLaw::gamma(double shape, double scale) {
    require(finite(shape) && shape > 0.0 && finite(scale) && scale > 0.0,
            "Gamma requires shape > 0 and scale > 0");
    return NoiseLaw{Gamma{shape, scale}};
}

NoiseLaw NoiseLaw::student_t(double dof, double location, double scale) {
    require(finite(dof) && dof > 0.0 && finite(location) && finite(scale) && scale > 0.0,
            "StudentT requires dof > 0 and scale > 0");
    return NoiseLaw{StudentT{dof, location, scale}};
}

NoiseLaw NoiseLaw::gaussian_mixture(std::vector<MixtureComponent> components) {
    require(!components.empty(), "GaussianMixture requires at least one component");
    double total = 0.0;
    for (const auto& c : components) {
        require(finite(c.weight) && c.weight >= 0.0, "mixture weights must be >= 0");
        require(finite(c.mean) && finite(c.variance) && c.variance >= 0.0,
                "mixture components require finite mean and variance >= 0");
        total += c.weight;
    }
    require(std::abs(total - 1.0) <= 1e-9, "mixture weights must sum to 1");
    return NoiseLaw{GaussianMixture{std::move(components)}};
}

double NoiseLaw::sample(RngStream& rng) const {
    return std::visit(SampleVisitor{rng}, dist_);
}

double NoiseLaw::mean() const { return std::visit(MeanVisitor{}, dist_); }

double NoiseLaw::variance() const { return std::visit(VarianceVisitor{}, dist_); }

std::string NoiseLaw::tag() const { return std::visit(TagVisitor{}, dist_); }

double gaussian_density(double e, double variance) {
    if (!(variance > 0.0)) throw std::invalid_argument("gaussian_density requires variance > 0");
    return std::exp(gaussian_log_density(e, variance));
}

double gaussian_log_density(double e, double variance) {
    if (!(variance > 0.0))
        throw std::invalid_argument("gaussian_log_density requires variance > 0");
    constexpr double log_two_pi = 1.8378770664093454835606594728112353;
    return -0.5 * (log_two_pi + std::log(variance)) - e * e / (2.0 * variance);
}

}  // namespace ilapf
