#pragma once

#include <cstdint>
#include <random>

namespace topk {

/// SplitMix64 finalizer; used to derive independent per-trial seeds.
std::uint64_t mix64(std::uint64_t x);

/// Seed for trial `index` of a run with `base_seed`. Independent of execution order.
std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t index);

/// Deterministic generator: std::mt19937_64 (its output sequence is fixed by the standard)
/// plus hand-written uniform draws, since <random> distributions are implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }
    /// Uniform in [0, 1) with 53 random bits.
    double uniform01();
    /// Uniform in [0, bound), unbiased. bound must be > 0.
    std::uint64_t uniform_below(std::uint64_t bound);

private:
    std::mt19937_64 engine_;
};

}  // namespace topk
