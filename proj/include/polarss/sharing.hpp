#ifndef POLARSS_SHARING_HPP
#define POLARSS_SHARING_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "polarss/access.hpp"
#include "polarss/construction.hpp"
#include "polarss/rng.hpp"

namespace polarss {

enum class ShareRole { Member, Public };

// One codeword coordinate handed out by the dealer. role is Public exactly
// when the position is frozen.
struct Share {
    std::size_t position = 0;  // 1-based, never the secret position
    int bit = 0;
    ShareRole role = ShareRole::Member;

    bool operator==(const Share&) const = default;
};

// One sharing instance: the k-1 member shares plus the N-k public
// frozen-position values. The random information vector u is used once and
// never stored.
struct Dealing {
    std::uint64_t code_digest = 0;
    std::size_t p = 0;
    std::vector<Share> member_shares;   // positions A minus p, ascending
    std::vector<Share> public_values;   // frozen positions, ascending
};

// Samples u uniformly from the 2^(k-1) vectors with u * g_p = secret and
// deals t = u * G_U. The secret coordinate t_p is never emitted.
Dealing deal(const CodeSpec& spec, int secret, Rng& rng);

// Recovers the secret from the provided shares. The reconstruction
// combination is drawn from member-share positions; effective mode also uses
// any provided public values. Throws UnqualifiedError when the available
// positions cannot span g_p, IntegrityError when the provided bits are not
// consistent with any codeword (detected when they over-determine one).
int reconstruct(const CodeSpec& spec, std::size_t p,
                const std::vector<Share>& shares, AccessMode mode);

// Bitwise sharing of a 0/1 string: one independent dealing per bit.
std::vector<Dealing> deal_string(const CodeSpec& spec, std::string_view secret_bits,
                                 Rng& rng);
std::string reconstruct_string(const CodeSpec& spec, std::size_t p,
                               const std::vector<std::vector<Share>>& per_bit_shares,
                               AccessMode mode);

// Exhaustive secrecy check: enumerate all 2^k information vectors, bucket
// them by the share assignment a coalition would observe (plus the public
// transcript in effective mode), and count how many vectors in each bucket
// encode secret 0 vs 1. Perfect secrecy at the bit level means every bucket
// is balanced; a qualified coalition instead drives one count to zero.
struct AuditSummary {
    std::uint64_t assignments = 0;  // buckets with at least one consistent u
    std::uint64_t count0_min = 0, count0_max = 0;
    std::uint64_t count1_min = 0, count1_max = 0;
    bool balanced = false;    // every bucket has count0 == count1
    bool determined = false;  // every bucket has count0 == 0 or count1 == 0
};

AuditSummary security_audit(const CodeSpec& spec, std::size_t p,
                            const Coalition& coalition, AccessMode mode);

// --- POLARSS-SHARES v1 file format ------------------------------------------
//
//   POLARSS-SHARES v1
//   code_digest = 9d2c5680e176ed80
//   p = 8
//   public 1 0
//   ...
//   share 4 1
//
// A member file carries the header plus that member's single share line; the
// public file carries the header plus all public lines.

void save_shares(const Dealing& dealing, std::ostream& out);
void save_member_file(const Dealing& dealing, std::size_t position, std::ostream& out);
void save_public_file(const Dealing& dealing, std::ostream& out);

struct ParsedShares {
    std::uint64_t code_digest = 0;
    std::size_t p = 0;
    std::vector<Share> shares;
};

ParsedShares load_shares(std::istream& in);

// Merge share files for one dealing, refusing digest or p mismatches against
// the loaded code (IntegrityError) and duplicate positions.
std::vector<Share> merge_shares(const CodeSpec& spec,
                                const std::vector<ParsedShares>& files);

}  // namespace polarss

#endif
