#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace ilapf {

/// Stateless 64-bit mixing function (splitmix64 finalizer). Used to derive
/// independent stream seeds from (seed, id) pairs without correlated state.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t mix64(std::uint64_t a, std::uint64_t b) {
    return mix64(mix64(a) ^ b);
}

/// Seedable random stream. The generator is std::mt19937_64, whose integer
/// output sequence is fully specified by the standard, so identical seeds
/// give bitwise-identical sequences on every platform. All samplers in this
/// library draw from the stream's uniform/gaussian primitives only, keeping
/// whole-simulation reproducibility independent of the C++ runtime.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : gen_(mix64(seed)), seed_(seed) {}

    /// Independent stream derived from a (seed, stream-id) pair.
    RngStream(std::uint64_t seed, std::uint64_t stream_id)
        : gen_(mix64(mix64(seed) ^ stream_id)), seed_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform double in [0, 1), 53-bit resolution.
    double next_unit() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in (0, 1]; safe as a log() argument.
    double next_unit_open() { return 1.0 - next_unit(); }

    /// Standard normal draw (Box-Muller, second value cached).
    double next_gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double r = std::sqrt(-2.0 * std::log(next_unit_open()));
        const double theta = 2.0 * pi() * next_unit();
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

    std::uint64_t seed() const { return seed_; }

    static constexpr double pi() { return 3.141592653589793238462643383279502884; }

private:
    std::mt19937_64 gen_;
    std::uint64_t seed_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace ilapf
