#ifndef POLARSS_RNG_HPP
#define POLARSS_RNG_HPP

#include <cstdint>
#include <random>

namespace polarss {

// Deterministic random source. mt19937_64 output is fully specified by the
// standard and the derived draws below avoid std::distribution types, so a
// seed reproduces the same stream on any platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    int next_bit() { return int(next_u64() >> 63); }

    // Uniform in [0,1), 53 bits.
    double next_unit() { return double(next_u64() >> 11) * 0x1.0p-53; }

    // Standard normal via Box-Muller; two uniforms per draw, no cached spare.
    double next_gaussian();

private:
    std::mt19937_64 engine_;
};

// Per-stream sub-seed derivation (split-mix finalizer). Trial i of a
// simulation uses Rng(mix64(master_seed, i)), making results independent of
// execution order and thread count.
std::uint64_t mix64(std::uint64_t seed, std::uint64_t stream);

// Fresh seed from the system entropy source, for unseeded dealing.
std::uint64_t entropy_seed();

}  // namespace polarss

#endif
