#ifndef POLARSS_ACCESS_HPP
#define POLARSS_ACCESS_HPP

#include <vector>

#include "polarss/construction.hpp"

namespace polarss {

// Share positions forming a (prospective) coalition: ascending, 1-based,
// never containing the secret position. An empty coalition is legal input;
// it also appears as output when the public frozen-position values alone
// determine the secret.
struct Coalition {
    std::vector<std::size_t> members;

    bool operator==(const Coalition&) const = default;
    bool operator<(const Coalition& other) const {
        return members < other.members;
    }
    std::string label() const;  // "P4,P6" or "(empty)"
    static Coalition parse(std::string_view text);  // accepts "P4,P6" or "4,6"
};

// full: a coalition holds exactly its own positions' shares.
// effective: the dealer's public transcript (all frozen-position values) is
// additionally available to everyone.
enum class AccessMode { Full, Effective };

const char* mode_name(AccessMode mode);

struct Qualification {
    bool qualified = false;
    // Positions whose shares sum to the secret (the combination solving
    // g_p = sum of the selected columns); empty when unqualified.
    std::vector<std::size_t> combination;
};

// A coalition can compute the secret iff column g_p of G_U lies in the GF(2)
// span of the columns at its positions (plus all frozen columns in effective
// mode). Deterministic: same inputs give the same combination.
Qualification is_qualified(const CodeSpec& spec, std::size_t p,
                           const Coalition& coalition, AccessMode mode);

// All dual codewords whose coordinate p equals 1 (2^(N-k-1) of them, or none
// when the dual code is identically zero at p). Enumeration is bounded by
// N-k <= 24 (std::length_error beyond).
std::vector<BitVector> enumerate_p_codewords(const CodeSpec& spec, std::size_t p);

struct AccessStructure {
    std::size_t p = 0;
    AccessMode mode = AccessMode::Full;
    std::vector<Coalition> minimal_sets;   // antichain, lexicographic order
    std::vector<std::size_t> dictators;    // members present in every minimal set
};

// Minimal qualified coalitions, from the supports of the dual p-codewords:
// full mode keeps supports minus p; effective mode also removes frozen
// positions; both are then reduced to the antichain of set-minimal elements.
AccessStructure minimal_access_sets(const CodeSpec& spec, std::size_t p, AccessMode mode);

// Members present in every minimal access set. Errors on an empty structure.
std::vector<std::size_t> dictator_analysis(const AccessStructure& structure);

struct MinimalityCheck {
    bool sufficient_by_weight = false;  // w_min/w_max > 1/2 over nonzero codewords
    bool exact = false;                 // brute force: no codeword covers another
};

// Both answers to "is every nonzero codeword of span(gen) minimal":
// the weight-ratio sufficient condition and the exhaustive cover check.
MinimalityCheck all_minimal_check(const BitMatrix& gen);

// For a code whose nonzero codewords are all minimal, the secret-sharing
// scheme drawing its access sets from span(gen) has exactly 2^(d-1) minimal
// access sets (d = rank). Verifies that count; preconditions (all minimal,
// column p nonzero) are argument errors.
bool theorem1_count_check(const BitMatrix& gen, std::size_t p);

}  // namespace polarss

#endif
