#include "polarss/access.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <stdexcept>

#include "polarss/errors.hpp"

namespace polarss {

std::string Coalition::label() const {
    if (members.empty()) return "(empty)";
    std::string s;
    for (std::size_t i = 0; i < members.size(); ++i) {
        if (i) s += ',';
        s += 'P' + std::to_string(members[i]);
    }
    return s;
}

Coalition Coalition::parse(std::string_view text) {
    Coalition c;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto comma = text.find(',', pos);
        if (comma == std::string_view::npos) comma = text.size();
        std::string_view tok = text.substr(pos, comma - pos);
        while (!tok.empty() && (tok.front() == ' ' || tok.front() == 'P' || tok.front() == 'p'))
            tok.remove_prefix(1);
        while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
        std::size_t v = 0;
        const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc() || ptr != tok.data() + tok.size() || v == 0)
            throw std::invalid_argument("bad coalition member: " + std::string(tok));
        c.members.push_back(v);
        pos = comma + 1;
    }
    std::sort(c.members.begin(), c.members.end());
    c.members.erase(std::unique(c.members.begin(), c.members.end()), c.members.end());
    return c;
}

const char* mode_name(AccessMode mode) {
    return mode == AccessMode::Full ? "full" : "effective";
}

namespace {

void check_coalition(const CodeSpec& spec, std::size_t p, const Coalition& coalition) {
    for (std::size_t i = 0; i < coalition.members.size(); ++i) {
        const std::size_t m = coalition.members[i];
        if (m < 1 || m > spec.N)
            throw std::invalid_argument("coalition member out of range");
        if (m == p)
            throw std::invalid_argument("coalition must not contain the secret position");
        if (i > 0 && m <= coalition.members[i - 1])
            throw std::invalid_argument("coalition members must be ascending and distinct");
    }
}

}  // namespace

Qualification is_qualified(const CodeSpec& spec, std::size_t p,
                           const Coalition& coalition, AccessMode mode) {
    if (p < 1 || p > spec.N) throw std::invalid_argument("secret position out of range");
    check_coalition(spec, p, coalition);

    std::vector<std::size_t> available = coalition.members;
    if (mode == AccessMode::Effective) {
        for (std::size_t f : spec.frozen)
            if (f != p) available.push_back(f);
        std::sort(available.begin(), available.end());
        available.erase(std::unique(available.begin(), available.end()), available.end());
    }

    const BitMatrix g_u = generator_submatrix(spec);
    BitMatrix m(available.size(), spec.k);
    for (std::size_t r = 0; r < available.size(); ++r)
        m.set_row(r, g_u.column(available[r] - 1));
    const auto x = solve(m, g_u.column(p - 1));
    if (!x.has_value()) return {};

    Qualification q{true, {}};
    for (std::size_t r = 0; r < available.size(); ++r)
        if (x->get(r)) q.combination.push_back(available[r]);
    return q;
}

std::vector<BitVector> enumerate_p_codewords(const CodeSpec& spec, std::size_t p) {
    if (p < 1 || p > spec.N) throw std::invalid_argument("secret position out of range");
    const std::size_t r = spec.N - spec.k;
    if (r > 24) throw std::length_error("enumerate_p_codewords: dual dimension above 24");

    const BitMatrix h_u = dual_submatrix(spec);
    std::vector<BitVector> out;
    BitVector word(spec.N);
    // Gray-code walk over all dual codewords: one row flip per step.
    for (std::uint64_t m = 1; m < (std::uint64_t(1) << r); ++m) {
        h_u.xor_row_into(std::size_t(std::countr_zero(m)), word);
        if (word.get(p - 1)) out.push_back(word);
    }
    return out;
}

namespace {

Coalition to_coalition(const BitVector& mask) {
    return Coalition{mask.support()};
}

// Keep only set-minimal supports (no kept mask covered by another).
std::vector<BitVector> minimal_antichain(std::vector<BitVector> masks) {
    std::sort(masks.begin(), masks.end(), [](const BitVector& a, const BitVector& b) {
        const std::size_t wa = a.weight(), wb = b.weight();
        if (wa != wb) return wa < wb;
        return a < b;
    });
    masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
    std::vector<BitVector> kept;
    for (const BitVector& m : masks) {
        bool dominated = false;
        for (const BitVector& s : kept)
            if (m.covers(s)) { dominated = true; break; }
        if (!dominated) kept.push_back(m);
    }
    return kept;
}

}  // namespace

AccessStructure minimal_access_sets(const CodeSpec& spec, std::size_t p, AccessMode mode) {
    std::vector<BitVector> supports;
    for (BitVector c : enumerate_p_codewords(spec, p)) {
        c.set(p - 1, false);
        if (mode == AccessMode::Effective)
            for (std::size_t f : spec.frozen) c.set(f - 1, false);
        supports.push_back(std::move(c));
    }

    AccessStructure out{p, mode, {}, {}};
    for (const BitVector& m : minimal_antichain(std::move(supports)))
        out.minimal_sets.push_back(to_coalition(m));
    std::sort(out.minimal_sets.begin(), out.minimal_sets.end());
    if (!out.minimal_sets.empty()) out.dictators = dictator_analysis(out);
    return out;
}

std::vector<std::size_t> dictator_analysis(const AccessStructure& structure) {
    if (structure.minimal_sets.empty())
        throw std::invalid_argument("dictator_analysis: empty access structure");
    std::vector<std::size_t> acc = structure.minimal_sets[0].members;
    for (std::size_t i = 1; i < structure.minimal_sets.size() && !acc.empty(); ++i) {
        const auto& m = structure.minimal_sets[i].members;
        std::vector<std::size_t> next;
        std::set_intersection(acc.begin(), acc.end(), m.begin(), m.end(),
                              std::back_inserter(next));
        acc = std::move(next);
    }
    return acc;
}

namespace {

std::vector<BitVector> span_nonzero(const BitMatrix& basis) {
    const std::size_t d = basis.rows();
    std::vector<BitVector> words;
    words.reserve((std::size_t(1) << d) - 1);
    BitVector cur(basis.cols());
    for (std::uint64_t m = 1; m < (std::uint64_t(1) << d); ++m) {
        basis.xor_row_into(std::size_t(std::countr_zero(m)), cur);
        words.push_back(cur);
    }
    return words;
}

}  // namespace

MinimalityCheck all_minimal_check(const BitMatrix& gen) {
    const BitMatrix basis = row_basis(gen);
    if (basis.rows() > 20)
        throw std::length_error("all_minimal_check: more than 2^20 codewords");
    const std::vector<BitVector> words = span_nonzero(basis);
    if (words.empty()) return {true, true};

    std::size_t w_min = std::size_t(-1), w_max = 0;
    for (const BitVector& w : words) {
        const std::size_t wt = w.weight();
        w_min = std::min(w_min, wt);
        w_max = std::max(w_max, wt);
    }
    MinimalityCheck out;
    out.sufficient_by_weight = 2 * w_min > w_max;
    out.exact = true;
    for (std::size_t i = 0; i < words.size() && out.exact; ++i)
        for (std::size_t j = 0; j < words.size(); ++j)
            if (i != j && words[i].covers(words[j])) { out.exact = false; break; }
    return out;
}

bool theorem1_count_check(const BitMatrix& gen, std::size_t p) {
    if (p < 1 || p > gen.cols())
        throw std::invalid_argument("theorem1_count_check: position out of range");
    if (gen.column(p - 1).is_zero())
        throw std::invalid_argument("theorem1_count_check: column p is zero");
    if (!all_minimal_check(gen).exact)
        throw std::invalid_argument("theorem1_count_check: not all nonzero codewords are minimal");

    const BitMatrix basis = row_basis(gen);
    const std::vector<BitVector> words = span_nonzero(basis);
    std::size_t count = 0;
    for (const BitVector& w : words)
        if (w.get(p - 1)) ++count;
    // every p-codeword of an all-minimal code is itself minimal, so the
    // minimal access sets are exactly these supports
    return count == (std::size_t(1) << (basis.rows() - 1));
}

}  // namespace polarss
