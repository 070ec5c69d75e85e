#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "ilapf/noise.hpp"
#include "ilapf/rng.hpp"

using namespace ilapf;

namespace {

struct Moments {
    double mean;
    double variance;
};

Moments sample_moments(const NoiseLaw& law, RngStream& rng, int n) {
    double sum = 0.0, sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = law.sample(rng);
        sum += x;
        sq += x * x;
    }
    const double mean = sum / n;
    return {mean, sq / n - mean * mean};
}

}  // namespace

TEST_CASE("identical seeds give bitwise-identical integer output") {
    RngStream a(42), b(42);
    for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("derived streams do not share state") {
    RngStream a(42, 0), b(42, 1);
    bool all_equal = true;
    for (int i = 0; i < 64; ++i)
        if (a.next_u64() != b.next_u64()) all_equal = false;
    CHECK_FALSE(all_equal);
}

TEST_CASE("unit draws stay in [0, 1)") {
    RngStream rng(7);
    for (int i = 0; i < 10000; ++i) {
        const double u = rng.next_unit();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("gamma(3, 2) moments match shape*scale over 1e5 draws") {
    const auto law = NoiseLaw::gamma(3.0, 2.0);
    RngStream rng(1);
    const auto m = sample_moments(law, rng, 100000);
    // mean 6, sd 3.464; 5 SE of the mean = 5 * 3.464 / sqrt(1e5) = 0.055
    CHECK(m.mean == doctest::Approx(6.0).epsilon(0.1 / 6.0));
    CHECK(std::abs(m.mean - 6.0) < 0.055);
    // var 12; Var(s^2) ~ sigma^4 (2 + excess kurtosis)/n, kurtosis 6/shape = 2
    CHECK(std::abs(m.variance - 12.0) < 5.0 * 12.0 * std::sqrt(4.0 / 100000.0));
}

TEST_CASE("gamma with shape < 1 still matches analytic moments") {
    const auto law = NoiseLaw::gamma(0.5, 2.0);
    RngStream rng(3);
    const auto m = sample_moments(law, rng, 100000);
    CHECK(std::abs(m.mean - 1.0) < 5.0 * std::sqrt(2.0 / 100000.0));
    CHECK(std::abs(m.variance - 2.0) < 5.0 * 2.0 * std::sqrt((2.0 + 12.0) / 100000.0));
}

TEST_CASE("uniform(20, 30) draws stay inside [20, 30)") {
    const auto law = NoiseLaw::uniform(20.0, 30.0);
    RngStream rng(2);
    double lo = 1e300, hi = -1e300;
    for (int i = 0; i < 100000; ++i) {
        const double x = law.sample(rng);
        CHECK(x >= 20.0);
        CHECK(x < 30.0);
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    }
    CHECK(lo < 20.01);
    CHECK(hi > 29.99);
}

TEST_CASE("two-component mixture has mean 46 over 1e5 draws") {
    const auto law = NoiseLaw::gaussian_mixture({{0.5, 45.0, 1.0}, {0.5, 47.0, 1.0}});
    RngStream rng(4);
    const auto m = sample_moments(law, rng, 100000);
    CHECK(std::abs(m.mean - 46.0) < 0.05);
    CHECK(std::abs(m.variance - law.variance()) <
          5.0 * law.variance() * std::sqrt(3.0 / 100000.0));
    CHECK(law.mean() == doctest::Approx(46.0));
    CHECK(law.variance() == doctest::Approx(2.0));  // 1 + (45-46)^2*0.5 + (47-46)^2*0.5
}

TEST_CASE("gaussian law moments") {
    const auto law = NoiseLaw::gaussian(45.0, 1.0);
    RngStream rng(5);
    const auto m = sample_moments(law, rng, 100000);
    CHECK(std::abs(m.mean - 45.0) < 5.0 / std::sqrt(100000.0));
    CHECK(std::abs(m.variance - 1.0) < 5.0 * std::sqrt(2.0 / 100000.0));
}

TEST_CASE("student t mean and symmetry") {
    // dof 3, location 45, scale 1; the variance estimator of a t(3) sample
    // has no finite standard error, so check the mean and the median
    const auto law = NoiseLaw::student_t(3.0, 45.0, 1.0);
    RngStream rng(6);
    std::vector<double> xs(100000);
    for (auto& x : xs) x = law.sample(rng);
    double sum = 0.0;
    for (double x : xs) sum += x;
    const double mean = sum / xs.size();
    CHECK(std::abs(mean - 45.0) < 5.0 * std::sqrt(3.0 / 100000.0));
    std::nth_element(xs.begin(), xs.begin() + xs.size() / 2, xs.end());
    CHECK(std::abs(xs[xs.size() / 2] - 45.0) < 0.05);
    CHECK(law.variance() == doctest::Approx(3.0));
}

TEST_CASE("construction rejects invalid parameters") {
    CHECK_THROWS_AS(NoiseLaw::gaussian(0.0, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(NoiseLaw::uniform(1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(NoiseLaw::uniform(2.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(NoiseLaw::gamma(0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(NoiseLaw::gamma(1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(NoiseLaw::student_t(0.0, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(NoiseLaw::student_t(3.0, 0.0, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(NoiseLaw::gaussian_mixture({}), std::invalid_argument);
    CHECK_THROWS_AS(NoiseLaw::gaussian_mixture({{0.5, 0.0, 1.0}, {0.6, 1.0, 1.0}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(NoiseLaw::gaussian_mixture({{0.5, 0.0, 1.0}, {0.5, 1.0, -1.0}}),
                    std::invalid_argument);
}

TEST_CASE("gaussian density reference values") {
    CHECK(gaussian_density(0.0, 0.01) == doctest::Approx(3.989423).epsilon(1e-6));
    CHECK(gaussian_density(0.3, 0.01) == doctest::Approx(0.044318).epsilon(1e-4));
    CHECK(gaussian_density(25.0, 0.01) == 0.0);  // underflows in double precision
    CHECK(gaussian_log_density(25.0, 0.01) == doctest::Approx(-31248.616353).epsilon(1e-9));
    CHECK_THROWS_AS(gaussian_density(0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(gaussian_density(0.0, -0.5), std::invalid_argument);
}

TEST_CASE("gaussian density is symmetric in e") {
    RngStream rng(8);
    for (int i = 0; i < 200; ++i) {
        const double e = 10.0 * (rng.next_unit() - 0.5);
        const double v = 0.01 + 5.0 * rng.next_unit();
        CHECK(gaussian_density(e, v) == gaussian_density(-e, v));
    }
}

TEST_CASE("point mass law always returns its value") {
    const auto law = NoiseLaw::point_mass(3.25);
    RngStream rng(9);
    for (int i = 0; i < 100; ++i) CHECK(law.sample(rng) == 3.25);
}
