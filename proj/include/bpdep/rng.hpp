#pragma once

#include <cstdint>
#include <string_view>

namespace bpdep {

/// Counter-based generator: draw k of stream `seed` is the SplitMix64
/// finalizer applied to seed + (k + 1) * golden. Any draw can be recomputed
/// from (seed, k) alone, which keeps sample tables reproducible across
/// implementations. Bump kVersion if the mapping ever changes.
class CounterRng {
public:
    static constexpr std::string_view kVersion = "splitmix64-counter/1";

    explicit CounterRng(std::uint64_t seed, std::uint64_t counter = 0) : seed_(seed), counter_(counter) {}

    static std::uint64_t at(std::uint64_t seed, std::uint64_t counter);

    std::uint64_t next_u64() { return at(seed_, counter_++); }

    /// Uniform on the open interval (0, 1) with 53-bit resolution.
    double uniform();

    /// Standard normal by inverse CDF of one uniform draw.
    double normal();

    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n);

    std::uint64_t counter() const { return counter_; }

private:
    std::uint64_t seed_;
    std::uint64_t counter_;
};

}  // namespace bpdep
