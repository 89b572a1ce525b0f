#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace axelrod {

/// Independent sub-streams of one seed. Each consumer of randomness in a
/// replicate draws from its own lane so attaching an observer (the coupled
/// urn, say) never shifts the trajectory's stream.
enum class Lane : std::uint64_t {
    replicate = 0,
    initial = 1,
    dynamics = 2,
    urn = 3,
    rounds = 4,
};

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Seed of stream `index` on `lane` under `seed`. Pure function, so replicate
/// r of master seed s is reproducible regardless of scheduling.
constexpr std::uint64_t derive_seed(std::uint64_t seed, Lane lane, std::uint64_t index = 0) noexcept {
    return mix64(mix64(seed ^ mix64(static_cast<std::uint64_t>(lane) + 0x51ed270b27fa8cd3ULL)) + index);
}

/// mt19937_64 with distribution code written out explicitly; the standard
/// distributions are implementation-defined and would break bit-exact replay
/// across standard libraries.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(mix64(seed)) {}

    std::uint64_t bits() { return engine_(); }

    /// Uniform on [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform on the open interval (0, 1).
    double uniform_open() {
        for (;;) {
            const double u = uniform();
            if (u > 0.0) return u;
        }
    }

    /// Uniform integer in {0, ..., n - 1}; n > 0.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = (~std::uint64_t{0}) - (~std::uint64_t{0}) % n;
        for (;;) {
            const std::uint64_t x = engine_();
            if (x < limit) return x % n;
        }
    }

    double exponential(double rate) { return -std::log(uniform_open()) / rate; }

    bool bernoulli(double p) { return uniform() < p; }

  private:
    std::mt19937_64 engine_;
};

}  // namespace axelrod
