#include "topk/rng.hpp"

#include "topk/errors.hpp"

namespace topk {

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t index) {
    return mix64(mix64(base_seed) ^ mix64(index + 0x632BE59BD9B4E019ULL));
}

double Rng::uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t Rng::uniform_below(std::uint64_t bound) {
    if (bound == 0) {
        throw DomainError("uniform_below needs a positive bound");
    }
    // Rejection on the top multiple of bound.
    const std::uint64_t limit = -bound % bound;  // == 2^64 mod bound
    for (;;) {
        const std::uint64_t x = next_u64();
        if (x >= limit) {
            return x % bound;
        }
    }
}

}  // namespace topk
