#ifndef POLARSS_CONSTRUCTION_HPP
#define POLARSS_CONSTRUCTION_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "polarss/bitvec.hpp"
#include "polarss/channel.hpp"

namespace polarss {

// A constructed polar code prepared for secret sharing. All index fields are
// 1-based. Immutable after construction; treat the fields as read-only.
struct CodeSpec {
    ChannelModel channel;
    unsigned n = 0;           // N = 2^n
    std::size_t N = 1;
    std::size_t k = 0;
    std::vector<std::size_t> A;       // information set, ascending, |A| = k
    std::vector<std::size_t> frozen;  // complement of A, ascending
    std::size_t p = 0;                // secret position, p in A
    std::vector<double> reliability;  // length N, lower = better
    BitVector frozen_values;          // length N-k, all zero by default
};

// Checks every structural invariant (partition, p membership, lengths);
// throws std::invalid_argument on violation.
void validate(const CodeSpec& spec);

// Exact Bhattacharyya evolution for BEC(eps): z- = 2z - z^2, z+ = z^2,
// applied along the binary expansion of i-1, most significant bit first.
// 1-based entry i holds Z of the i-th synthesized channel.
std::vector<double> bec_reliabilities(double eps, std::size_t N);

// Gaussian-approximation density evolution for BiAWGN(sigma). Entries are
// estimated bit error probabilities Q(sqrt(m/2)) of the synthesized channels
// (lower = better), from mean-LLR m_1 = 2/sigma^2 with m -> 2m on the plus
// branch and m -> phi^-1(1 - (1 - phi(m))^2) on the minus branch.
std::vector<double> awgn_reliabilities(double sigma, std::size_t N);

// Reliability scores for any supported channel; BSC uses the Bhattacharyya
// evolution seeded with Z = 2*sqrt(d(1-d)) (upper-bound heuristic).
std::vector<double> channel_reliabilities(const ChannelModel& ch, std::size_t N);

// Indices of the k smallest scores, ties toward the smaller index, ascending.
std::vector<std::size_t> select_information_set(const std::vector<double>& reliability,
                                                std::size_t k);

// Computes reliabilities, selects A and the secret position. When p is not
// given it defaults to the best-scoring index of A; a requested p outside the
// computed A is a configuration error (std::invalid_argument).
CodeSpec build_code(const ChannelModel& ch, unsigned n, std::size_t k,
                    std::optional<std::size_t> p = std::nullopt);

// Row i of G_N / H_N (1-based), generated without materializing the matrix.
BitVector generator_row(std::size_t N, std::size_t i);
BitVector dual_row(std::size_t N, std::size_t i);

// G_U: rows of G_N at A (k x N). H_U: rows of H_N at A's complement
// ((N-k) x N). G_U * H_U^T = 0 always.
BitMatrix generator_submatrix(const CodeSpec& spec);
BitMatrix dual_submatrix(const CodeSpec& spec);

// Coset encoding x = u_A G_N(A) + frozen_values G_N(A^c).
BitVector encode(const CodeSpec& spec, const BitVector& u_A);

// The unique codeword x with x restricted to A equal to x_U and
// x * H_U^T = 0 (frozen coordinates solved from the parity equations).
BitVector systematic_encode(const CodeSpec& spec, const BitVector& x_U);

// Column weight of G_N: 2^(number of zero bits in the n-bit expansion of j-1).
std::size_t column_weight(std::size_t j, std::size_t N);

// Largest subset of A whose G_N row weights are all equal; ties between
// equally sized weight classes go to the larger weight. Schemes built on the
// result give every participant a symmetric role.
std::vector<std::size_t> select_equal_weight_rows(const CodeSpec& spec);

// --- POLARSS-CODE v1 file format -------------------------------------------
//
//   POLARSS-CODE v1
//   channel = bec:0.5
//   n = 3
//   k = 4
//   A = 4,6,7,8
//   p = 8
//   frozen_values = 0000
//   reliability = 0.996094,...   (6 decimal places)
//
// '#' starts a comment; unknown or missing keys are hard errors (FormatError).

std::string canonical_code_text(const CodeSpec& spec);
void save_code(const CodeSpec& spec, std::ostream& out);
CodeSpec load_code(std::istream& in);

// FNV-1a 64-bit digest over the canonical code file bytes.
std::uint64_t code_digest(const CodeSpec& spec);
std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace polarss

#endif
