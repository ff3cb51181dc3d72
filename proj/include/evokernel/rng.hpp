#pragma once

#include <cstdint>
#include <initializer_list>
#include <limits>
#include <span>
#include <utility>

namespace evk {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Tags separating the independent consumers of the master seed.
enum class StreamPurpose : std::uint64_t {
    Augmentation = 0x61756700,
    Folds = 0x666f6c64,
    Test = 0x74657374,
};

/// SplitMix64 generator whose stream is fully determined by a seed and a
/// list of integer keys. Output is specified bit-for-bit, independent of
/// platform and of the standard library's distribution implementations.
class StreamRng {
public:
    using result_type = std::uint64_t;

    explicit StreamRng(std::uint64_t seed) noexcept : state_(seed) {}

    /// Stream for (seed, purpose, keys...): e.g. (seed, Augmentation, graph, step).
    static StreamRng derive(std::uint64_t seed, StreamPurpose purpose,
                            std::initializer_list<std::uint64_t> keys = {}) noexcept;

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    /// true with probability p (p <= 0 never, p >= 1 always).
    bool bernoulli(double p) noexcept { return uniform01() < p; }

    /// Uniform integer in [0, bound), bound > 0, by rejection.
    std::uint64_t below(std::uint64_t bound) noexcept;

private:
    std::uint64_t state_;
};

/// Fisher-Yates shuffle driven by StreamRng::below.
template <typename T>
void shuffle(std::span<T> items, StreamRng& rng) {
    for (std::size_t i = items.size(); i > 1; --i) {
        const auto j = static_cast<std::size_t>(rng.below(i));
        std::swap(items[i - 1], items[j]);
    }
}

} // namespace evk
