#pragma once

#include <cstdint>
#include <random>

namespace lpai {

/**
 * Seeded random stream for Monte-Carlo shot generation.
 *
 * Streams are split by mixing a stream id into the parent seed with
 * splitmix64, so a batch of shots can be handed to a worker with its own
 * stream and the results stay reproducible regardless of scheduling.
 */
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed, std::uint64_t stream_id = 0)
        : seed_(mix(seed ^ mix(stream_id + 0x9e3779b97f4a7c15ULL))), engine_(seed_) {}

    /// Independent child stream; does not advance this stream.
    RandomStream split(std::uint64_t stream_id) const { return RandomStream(seed_, stream_id + 1); }

    std::uint64_t seed() const noexcept { return seed_; }

    double normal(double mean, double stddev) {
        if (stddev == 0.0) return mean;
        return std::normal_distribution<double>(mean, stddev)(engine_);
    }

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }

    std::int64_t binomial(std::int64_t trials, double p) {
        if (trials <= 0 || p <= 0.0) return 0;
        if (p >= 1.0) return trials;
        return std::binomial_distribution<std::int64_t>(trials, p)(engine_);
    }

    std::int64_t poisson(double mean) {
        if (mean <= 0.0) return 0;
        return std::poisson_distribution<std::int64_t>(mean)(engine_);
    }

    std::mt19937_64& engine() noexcept { return engine_; }

    static std::uint64_t mix(std::uint64_t x) noexcept {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

}  // namespace lpai
