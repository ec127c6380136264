#include "polarss/sharing.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "polarss/errors.hpp"

namespace polarss {

Dealing deal(const CodeSpec& spec, int secret, Rng& rng) {
    if (secret != 0 && secret != 1)
        throw std::invalid_argument("deal: secret must be 0 or 1");
    const BitMatrix g_u = generator_submatrix(spec);
    const BitVector g_p = g_u.column(spec.p - 1);

    // g_p is nonzero (the diagonal of G_N is one), so a pivot always exists.
    std::size_t pivot = 0;
    while (!g_p.get(pivot)) ++pivot;

    BitVector u(spec.k);
    bool acc = false;
    for (std::size_t i = 0; i < spec.k; ++i) {
        if (i == pivot) continue;
        const bool b = rng.next_bit();
        u.set(i, b);
        acc ^= b && g_p.get(i);
    }
    u.set(pivot, acc ^ (secret != 0));

    const BitVector t = vec_mat_mul(u, g_u);

    Dealing d{code_digest(spec), spec.p, {}, {}};
    for (std::size_t i : spec.A)
        if (i != spec.p)
            d.member_shares.push_back({i, t.get(i - 1) ? 1 : 0, ShareRole::Member});
    for (std::size_t i : spec.frozen)
        d.public_values.push_back({i, t.get(i - 1) ? 1 : 0, ShareRole::Public});
    return d;
}

namespace {

void check_shares(const CodeSpec& spec, std::size_t p, const std::vector<Share>& shares) {
    std::vector<bool> seen(spec.N + 1, false);
    for (const Share& s : shares) {
        if (s.position < 1 || s.position > spec.N)
            throw std::invalid_argument("share position out of range");
        if (s.position == p)
            throw std::invalid_argument("share at the secret position is not allowed");
        if (seen[s.position])
            throw std::invalid_argument("duplicate share position");
        seen[s.position] = true;
        const bool frozen = !std::binary_search(spec.A.begin(), spec.A.end(), s.position);
        if (frozen != (s.role == ShareRole::Public))
            throw std::invalid_argument("share role does not match its position");
        if (s.bit != 0 && s.bit != 1)
            throw std::invalid_argument("share bit must be 0 or 1");
    }
}

}  // namespace

int reconstruct(const CodeSpec& spec, std::size_t p,
                const std::vector<Share>& shares, AccessMode mode) {
    if (p < 1 || p > spec.N) throw std::invalid_argument("secret position out of range");
    check_shares(spec, p, shares);

    std::vector<Share> usable;
    for (const Share& s : shares)
        if (mode == AccessMode::Effective || s.role == ShareRole::Member)
            usable.push_back(s);
    std::sort(usable.begin(), usable.end(),
              [](const Share& a, const Share& b) { return a.position < b.position; });

    const BitMatrix g_u = generator_submatrix(spec);

    // Consistency first: the provided bits must extend to some codeword.
    // This only bites when the positions over-determine the codeword.
    {
        BitMatrix m(shares.size(), spec.k);
        BitVector bits(shares.size());
        for (std::size_t i = 0; i < shares.size(); ++i) {
            m.set_row(i, g_u.column(shares[i].position - 1));
            bits.set(i, shares[i].bit != 0);
        }
        if (!solve(transpose(m), bits).has_value())
            throw IntegrityError("shares are not consistent with any codeword");
    }

    BitMatrix m(usable.size(), spec.k);
    for (std::size_t i = 0; i < usable.size(); ++i)
        m.set_row(i, g_u.column(usable[i].position - 1));
    const auto x = solve(m, g_u.column(p - 1));
    if (!x.has_value())
        throw UnqualifiedError(std::string("coalition is not qualified in ") +
                               mode_name(mode) + " mode");

    bool s = false;
    for (std::size_t i = 0; i < usable.size(); ++i)
        if (x->get(i)) s ^= usable[i].bit != 0;
    return s ? 1 : 0;
}

std::vector<Dealing> deal_string(const CodeSpec& spec, std::string_view secret_bits,
                                 Rng& rng) {
    if (secret_bits.empty())
        throw std::invalid_argument("deal_string: empty secret");
    std::vector<Dealing> out;
    out.reserve(secret_bits.size());
    for (char c : secret_bits) {
        if (c != '0' && c != '1')
            throw std::invalid_argument("deal_string: secret must be a 0/1 string");
        out.push_back(deal(spec, c - '0', rng));
    }
    return out;
}

std::string reconstruct_string(const CodeSpec& spec, std::size_t p,
                               const std::vector<std::vector<Share>>& per_bit_shares,
                               AccessMode mode) {
    if (per_bit_shares.empty())
        throw std::invalid_argument("reconstruct_string: no share groups");
    std::string out;
    for (const auto& group : per_bit_shares)
        out += char('0' + reconstruct(spec, p, group, mode));
    return out;
}

AuditSummary security_audit(const CodeSpec& spec, std::size_t p,
                            const Coalition& coalition, AccessMode mode) {
    if (spec.k > 20) throw std::length_error("security_audit: k above 20");
    if (p < 1 || p > spec.N) throw std::invalid_argument("secret position out of range");
    for (std::size_t m : coalition.members)
        if (m == p) throw std::invalid_argument("coalition must not contain the secret position");

    std::vector<std::size_t> observed = coalition.members;
    if (mode == AccessMode::Effective) {
        for (std::size_t f : spec.frozen)
            if (f != p) observed.push_back(f);
    }
    std::sort(observed.begin(), observed.end());
    observed.erase(std::unique(observed.begin(), observed.end()), observed.end());
    if (observed.size() > 63)
        throw std::length_error("security_audit: more than 63 observed positions");

    const BitMatrix g_u = generator_submatrix(spec);
    // Row masks over the observed positions: flipping u bit j flips the
    // observed share pattern by row_mask[j]. Gray-code enumeration then
    // costs O(1) per information vector.
    std::vector<std::uint64_t> row_mask(spec.k, 0);
    for (std::size_t j = 0; j < spec.k; ++j)
        for (std::size_t i = 0; i < observed.size(); ++i)
            if (g_u.get(j, observed[i] - 1))
                row_mask[j] |= std::uint64_t(1) << i;
    std::uint64_t secret_mask = 0;  // u bits feeding t_p
    for (std::size_t j = 0; j < spec.k; ++j)
        if (g_u.get(j, p - 1)) secret_mask |= std::uint64_t(1) << j;

    std::unordered_map<std::uint64_t, std::pair<std::uint64_t, std::uint64_t>> buckets;
    buckets.reserve(std::size_t(1)
                    << std::min<std::size_t>(spec.k, observed.size() + 1));
    std::uint64_t pattern = 0;
    std::uint64_t gray = 0;
    // u = 0 first, then Gray steps
    {
        auto& b = buckets[pattern];
        b.first++;  // secret of u=0 is 0
    }
    for (std::uint64_t m = 1; m < (std::uint64_t(1) << spec.k); ++m) {
        const unsigned j = unsigned(std::countr_zero(m));
        pattern ^= row_mask[j];
        gray ^= std::uint64_t(1) << j;
        auto& b = buckets[pattern];
        if (std::popcount(gray & secret_mask) & 1) b.second++;
        else b.first++;
    }

    AuditSummary out;
    out.assignments = buckets.size();
    out.balanced = true;
    out.determined = true;
    bool first = true;
    for (const auto& [key, counts] : buckets) {
        (void)key;
        if (first) {
            out.count0_min = out.count0_max = counts.first;
            out.count1_min = out.count1_max = counts.second;
            first = false;
        } else {
            out.count0_min = std::min(out.count0_min, counts.first);
            out.count0_max = std::max(out.count0_max, counts.first);
            out.count1_min = std::min(out.count1_min, counts.second);
            out.count1_max = std::max(out.count1_max, counts.second);
        }
        if (counts.first != counts.second) out.balanced = false;
        if (counts.first != 0 && counts.second != 0) out.determined = false;
    }
    return out;
}

// --- shares file format -------------------------------------------------------

namespace {

constexpr char kSharesMagic[] = "POLARSS-SHARES v1";

std::string digest_hex(std::uint64_t d) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)d);
    return buf;
}

void write_header(const Dealing& dealing, std::ostream& out) {
    out << kSharesMagic << "\n";
    out << "code_digest = " << digest_hex(dealing.code_digest) << "\n";
    out << "p = " << dealing.p << "\n";
}

void write_share_line(const Share& s, std::ostream& out) {
    out << (s.role == ShareRole::Public ? "public " : "share ")
        << s.position << ' ' << s.bit << "\n";
}

}  // namespace

void save_shares(const Dealing& dealing, std::ostream& out) {
    write_header(dealing, out);
    for (const Share& s : dealing.public_values) write_share_line(s, out);
    for (const Share& s : dealing.member_shares) write_share_line(s, out);
}

void save_member_file(const Dealing& dealing, std::size_t position, std::ostream& out) {
    for (const Share& s : dealing.member_shares) {
        if (s.position == position) {
            write_header(dealing, out);
            write_share_line(s, out);
            return;
        }
    }
    throw std::invalid_argument("no member share at position " + std::to_string(position));
}

void save_public_file(const Dealing& dealing, std::ostream& out) {
    write_header(dealing, out);
    for (const Share& s : dealing.public_values) write_share_line(s, out);
}

namespace {

std::string strip(std::string line) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) return "";
    const auto last = line.find_last_not_of(" \t\r");
    return line.substr(first, last - first + 1);
}

}  // namespace

ParsedShares load_shares(std::istream& in) {
    std::string line, magic;
    while (std::getline(in, line)) {
        magic = strip(line);
        if (!magic.empty()) break;
    }
    if (magic != kSharesMagic)
        throw FormatError("expected " + std::string(kSharesMagic) + " header");

    ParsedShares out;
    bool have_digest = false, have_p = false;
    while (std::getline(in, line)) {
        const std::string s = strip(line);
        if (s.empty()) continue;
        std::istringstream ss(s);
        std::string word;
        ss >> word;
        if (word == "code_digest" || word == "p") {
            std::string eq, value;
            ss >> eq >> value;
            if (eq != "=" || value.empty() || !(ss >> std::ws).eof())
                throw FormatError("bad header line: " + s);
            if (word == "code_digest") {
                if (have_digest) throw FormatError("duplicate key: code_digest");
                if (value.size() != 16 ||
                    value.find_first_not_of("0123456789abcdef") != std::string::npos)
                    throw FormatError("code_digest must be 16 hex characters");
                out.code_digest = std::stoull(value, nullptr, 16);
                have_digest = true;
            } else {
                if (have_p) throw FormatError("duplicate key: p");
                try {
                    out.p = std::stoull(value);
                } catch (const std::exception&) {
                    throw FormatError("bad integer for p: " + value);
                }
                have_p = true;
            }
        } else if (word == "share" || word == "public") {
            std::size_t pos = 0;
            int bit = -1;
            ss >> pos >> bit;
            if (ss.fail() || !(ss >> std::ws).eof() || pos == 0 || (bit != 0 && bit != 1))
                throw FormatError("bad share line: " + s);
            out.shares.push_back({pos, bit,
                                  word == "public" ? ShareRole::Public : ShareRole::Member});
        } else {
            throw FormatError("unknown line: " + s);
        }
    }
    if (!have_digest || !have_p)
        throw FormatError("shares file missing code_digest or p");
    return out;
}

std::vector<Share> merge_shares(const CodeSpec& spec,
                                const std::vector<ParsedShares>& files) {
    const std::uint64_t expect = code_digest(spec);
    std::vector<Share> all;
    for (const ParsedShares& f : files) {
        if (f.code_digest != expect)
            throw IntegrityError("share file digest does not match the loaded code");
        if (f.p != spec.p)
            throw IntegrityError("share file secret position does not match the loaded code");
        all.insert(all.end(), f.shares.begin(), f.shares.end());
    }
    std::sort(all.begin(), all.end(),
              [](const Share& a, const Share& b) { return a.position < b.position; });
    for (std::size_t i = 1; i < all.size(); ++i) {
        if (all[i].position == all[i - 1].position) {
            if (all[i].bit != all[i - 1].bit)
                throw IntegrityError("conflicting bits for position " +
                                     std::to_string(all[i].position));
        }
    }
    all.erase(std::unique(all.begin(), all.end(),
                          [](const Share& a, const Share& b) {
                              return a.position == b.position;
                          }),
              all.end());
    return all;
}

}  // namespace polarss
