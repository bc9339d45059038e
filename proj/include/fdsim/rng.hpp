#pragma once

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace fdsim {

/// Purpose tag mixed into every stream key so distinct uses never collide.
enum class StreamTag : std::uint64_t {
    UserDrop = 1,
    LinkLos = 2,
    UserOrder = 3,
    Traffic = 4,
    Direction = 5,
    Fading = 6,
    CsiError = 7,
    Test = 99,
};

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z)
{
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Hash a (seed, tag, coordinates...) key into a 64-bit stream seed.
inline std::uint64_t stream_key(std::uint64_t seed, StreamTag tag,
                                std::initializer_list<std::uint64_t> coords)
{
    std::uint64_t h = mix64(seed ^ mix64(static_cast<std::uint64_t>(tag)));
    for (auto c : coords) {
        h = mix64(h ^ mix64(c + 0x632be59bd9b4e019ULL));
    }
    return h;
}

/**
 * Independent random stream addressed by a key rather than by draw order.
 *
 * Every consumer derives its own stream from (seed, tag, coordinates), so the
 * values it sees do not depend on which other streams were used before it or
 * on which worker thread evaluates it.
 */
class Stream {
public:
    explicit Stream(std::uint64_t key) : engine_(key) {}
    Stream(std::uint64_t seed, StreamTag tag, std::initializer_list<std::uint64_t> coords)
        : engine_(stream_key(seed, tag, coords))
    {}

    double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }
    double uniform(double lo, double hi)
    {
        return std::uniform_real_distribution<double>(lo, hi)(engine_);
    }
    bool bernoulli(double p) { return uniform() < p; }
    double normal() { return normal_(engine_); }

    /// Circularly-symmetric complex Gaussian with unit variance.
    std::complex<double> complex_normal()
    {
        constexpr double kHalf = 0.70710678118654752440;
        const double re = normal_(engine_);
        const double im = normal_(engine_);
        return {kHalf * re, kHalf * im};
    }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace fdsim
