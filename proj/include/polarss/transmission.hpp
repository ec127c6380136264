#ifndef POLARSS_TRANSMISSION_HPP
#define POLARSS_TRANSMISSION_HPP

#include <cstdint>
#include <vector>

#include "polarss/access.hpp"
#include "polarss/sharing.hpp"

namespace polarss {

struct SimOptions {
    std::uint64_t trials = 100000;
    std::uint64_t seed = 0;
    unsigned workers = 1;
    AccessMode mode = AccessMode::Effective;
};

struct SimReport {
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    AccessMode mode = AccessMode::Effective;
    // Entry i-1 is the erasure (BEC) or hard-decision error rate of position
    // i; the secret position is never transmitted and reads 0.
    std::vector<double> per_position_failure;
    std::vector<std::pair<Coalition, double>> coalition_success;

    bool operator==(const SimReport&) const = default;

    std::string to_csv() const;  // position block, then coalition block
};

// Monte-Carlo delivery simulation: each trial deals a fresh random secret,
// sends every dealt coordinate once through the construction channel, applies
// per-symbol hard decisions (no block decoding is possible at a member), and
// counts a coalition as successful when its surviving shares (plus surviving
// public values in effective mode) still reconstruct the true secret.
//
// Trial i draws from Rng(mix64(seed, i)), so the report is identical for any
// worker count.
SimReport simulate(const CodeSpec& spec, const std::vector<Coalition>& coalitions,
                   const SimOptions& opt);

}  // namespace polarss

#endif
