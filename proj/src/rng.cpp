#include "polarss/rng.hpp"

#include <cmath>
#include <numbers>

namespace polarss {

double Rng::next_gaussian() {
    const double u1 = 1.0 - next_unit();  // (0,1], keeps log finite
    const double u2 = next_unit();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t mix64(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + (stream + 1) * 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

std::uint64_t entropy_seed() {
    std::random_device rd;
    return (std::uint64_t(rd()) << 32) ^ rd();
}

}  // namespace polarss
