#include "bpdep/rng.hpp"

#include <stdexcept>

#include "bpdep/normal.hpp"

namespace bpdep {

std::uint64_t CounterRng::at(std::uint64_t seed, std::uint64_t counter) {
    std::uint64_t z = seed + (counter + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double CounterRng::uniform() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double CounterRng::normal() { return normal_quantile(uniform()); }

std::uint64_t CounterRng::below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("CounterRng::below(0)");
    // Rejection keeps the result exactly uniform.
    const std::uint64_t limit = (~std::uint64_t{0} / n) * n;
    std::uint64_t v;
    do {
        v = next_u64();
    } while (v >= limit);
    return v % n;
}

}  // namespace bpdep
