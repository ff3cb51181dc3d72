#include "evokernel/rng.hpp"

namespace evk {

StreamRng StreamRng::derive(std::uint64_t seed, StreamPurpose purpose,
                            std::initializer_list<std::uint64_t> keys) noexcept {
    std::uint64_t h = mix64(seed ^ mix64(static_cast<std::uint64_t>(purpose)));
    for (std::uint64_t k : keys) {
        h = mix64(h ^ mix64(k + 0x5bd1e995ULL));
    }
    return StreamRng(h);
}

std::uint64_t StreamRng::below(std::uint64_t bound) noexcept {
    // 2^64 mod bound values at the top form a partial bucket; reject them.
    const std::uint64_t partial = (max() % bound + 1) % bound;
    std::uint64_t x = (*this)();
    while (partial != 0 && x > max() - partial) {
        x = (*this)();
    }
    return x % bound;
}

} // namespace evk
