#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace grnevo {

/// SplitMix64 finalizer, used to decorrelate derived seeds.
[[nodiscard]] constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Purpose tags for substreams. Values are part of the reproducibility
/// contract; do not renumber.
enum class Stream : std::uint64_t {
    Init = 1,
    Mutation = 2,
    Crossover = 3,
    Evaluation = 4,
    Restart = 5,
    Robustness = 6,
    Trial = 7,
};

/// Derive an independent seed from a master seed and a key path, e.g.
/// (trial seed, Stream::Mutation, generation, member).
[[nodiscard]] constexpr std::uint64_t derive_seed(std::uint64_t master,
                                                  std::initializer_list<std::uint64_t> keys) noexcept
{
    std::uint64_t h = splitmix64(master);
    for (std::uint64_t k : keys) {
        h = splitmix64(h ^ splitmix64(k + 0x632be59bd9b4e019ULL));
    }
    return h;
}

[[nodiscard]] constexpr std::uint64_t derive_seed(std::uint64_t master, Stream stream,
                                                  std::initializer_list<std::uint64_t> keys = {}) noexcept
{
    std::uint64_t h = derive_seed(master, {static_cast<std::uint64_t>(stream)});
    for (std::uint64_t k : keys) {
        h = splitmix64(h ^ splitmix64(k + 0x632be59bd9b4e019ULL));
    }
    return h;
}

// Distributions are implemented here instead of using <random>'s so that
// streams are identical across standard library implementations.
class Rng {
public:
    using engine_type = std::mt19937_64;

    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    [[nodiscard]] double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    [[nodiscard]] double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n).
    [[nodiscard]] std::size_t index(std::size_t n)
    {
        const std::uint64_t bound = static_cast<std::uint64_t>(n);
        const std::uint64_t limit = engine_type::max() - engine_type::max() % bound;
        std::uint64_t x = 0;
        do {
            x = engine_();
        } while (x >= limit);
        return static_cast<std::size_t>(x % bound);
    }

    [[nodiscard]] bool bernoulli(double p) { return uniform() < p; }

private:
    engine_type engine_;
};

} // namespace grnevo
