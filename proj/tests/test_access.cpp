#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "polarss/access.hpp"
#include "polarss/errors.hpp"

#include <algorithm>
#include <set>

using namespace polarss;

namespace {

CodeSpec example2_code() { return build_code(ChannelModel::bec(0.5), 3, 4); }

CodeSpec example3_code() { return build_code(ChannelModel::biawgn(0.9), 5, 16, 32); }

// Independent qualification oracle: enumerate the whole dual code as word
// masks and look for a codeword with coordinate p set whose support lies in
// the allowed positions. This is the dual-codeword characterization, checked
// against the column-span test the library uses.
struct DualOracle {
    std::vector<std::uint64_t> duals;  // all 2^(N-k) codeword masks, bit i = position i+1

    explicit DualOracle(const CodeSpec& spec) {
        REQUIRE(spec.N <= 64);
        std::vector<std::uint64_t> rows;
        for (std::size_t f : spec.frozen) {
            const BitVector r = dual_row(spec.N, f);
            std::uint64_t m = 0;
            for (std::size_t j = 0; j < spec.N; ++j)
                if (r.get(j)) m |= std::uint64_t(1) << j;
            rows.push_back(m);
        }
        duals.resize(std::size_t(1) << rows.size(), 0);
        for (std::size_t m = 1; m < duals.size(); ++m)
            duals[m] = duals[m & (m - 1)] ^ rows[std::countr_zero(m)];
    }

    bool qualified(std::uint64_t allowed, std::size_t p) const {
        const std::uint64_t pbit = std::uint64_t(1) << (p - 1);
        for (std::uint64_t c : duals)
            if ((c & pbit) && (c & ~(allowed | pbit)) == 0) return true;
        return false;
    }
};

std::uint64_t coalition_mask(const Coalition& c) {
    std::uint64_t m = 0;
    for (std::size_t i : c.members) m |= std::uint64_t(1) << (i - 1);
    return m;
}

std::uint64_t frozen_mask(const CodeSpec& spec) {
    std::uint64_t m = 0;
    for (std::size_t f : spec.frozen) m |= std::uint64_t(1) << (f - 1);
    return m;
}

Coalition from_mask(std::uint64_t m) {
    Coalition c;
    for (std::size_t i = 0; i < 64; ++i)
        if ((m >> i) & 1) c.members.push_back(i + 1);
    return c;
}

// Minimal qualified coalitions by direct search over all position subsets.
std::vector<Coalition> minimal_sets_oracle(const CodeSpec& spec, std::size_t p,
                                           AccessMode mode) {
    const DualOracle oracle(spec);
    const std::uint64_t candidates =
        ((spec.N == 64 ? ~0ull : (1ull << spec.N) - 1)) & ~(1ull << (p - 1));
    const std::uint64_t freebies =
        mode == AccessMode::Effective ? frozen_mask(spec) : 0;

    std::vector<std::uint64_t> qualified;
    // iterate subsets of the candidate positions
    std::vector<std::size_t> positions;
    for (std::size_t i = 0; i < spec.N; ++i)
        if ((candidates >> i) & 1) positions.push_back(i);
    REQUIRE(positions.size() <= 20);
    for (std::uint64_t s = 0; s < (1ull << positions.size()); ++s) {
        std::uint64_t t = 0;
        for (std::size_t i = 0; i < positions.size(); ++i)
            if ((s >> i) & 1) t |= 1ull << positions[i];
        if (oracle.qualified(t | freebies, p)) qualified.push_back(t);
    }
    std::vector<Coalition> minimal;
    for (std::uint64_t t : qualified) {
        bool is_min = true;
        for (std::uint64_t other : qualified)
            if (other != t && (other & ~t) == 0) { is_min = false; break; }
        if (is_min) minimal.push_back(from_mask(t));
    }
    std::sort(minimal.begin(), minimal.end());
    return minimal;
}

}  // namespace

TEST_CASE("is_qualified on the (8,4) code") {
    const CodeSpec spec = example2_code();

    SUBCASE("published full-mode coalitions") {
        const auto q = is_qualified(spec, 8, Coalition{{2, 4, 6}}, AccessMode::Full);
        CHECK(q.qualified);
        // the combination must actually reconstruct: sum of those columns is g_8
        const BitMatrix g_u = generator_submatrix(spec);
        BitVector acc(spec.k);
        for (std::size_t pos : q.combination) acc ^= g_u.column(pos - 1);
        CHECK(acc == g_u.column(7));

        CHECK_FALSE(is_qualified(spec, 8, Coalition{{4, 6}}, AccessMode::Full).qualified);
        CHECK(is_qualified(spec, 8, Coalition{{3, 4, 7}}, AccessMode::Full).qualified);
        CHECK(is_qualified(spec, 8, Coalition{{5, 6, 7}}, AccessMode::Full).qualified);
        CHECK(is_qualified(spec, 8, Coalition{{1, 2, 3, 4, 5, 6, 7}}, AccessMode::Full).qualified);
    }

    SUBCASE("two members suffice once the transcript is public") {
        CHECK(is_qualified(spec, 8, Coalition{{4, 6}}, AccessMode::Effective).qualified);
        CHECK(is_qualified(spec, 8, Coalition{{4, 7}}, AccessMode::Effective).qualified);
        CHECK(is_qualified(spec, 8, Coalition{{6, 7}}, AccessMode::Effective).qualified);
    }

    SUBCASE("everything except p spans the column space") {
        CHECK(is_qualified(spec, 8, Coalition{{1, 2, 3, 4, 5, 6, 7}}, AccessMode::Full).qualified);
    }

    SUBCASE("p inside the coalition is an argument error") {
        CHECK_THROWS_AS(is_qualified(spec, 8, Coalition{{4, 8}}, AccessMode::Full),
                        std::invalid_argument);
    }
}

TEST_CASE("qualification characterizations agree exhaustively (N=16)") {
    const CodeSpec spec = build_code(ChannelModel::bec(0.5), 4, 8);
    const DualOracle oracle(spec);
    const std::uint64_t fmask = frozen_mask(spec);
    const std::size_t p = spec.p;

    std::vector<std::size_t> positions;
    for (std::size_t i = 1; i <= spec.N; ++i)
        if (i != p) positions.push_back(i);

    for (std::uint64_t s = 0; s < (1ull << positions.size()); ++s) {
        Coalition c;
        std::uint64_t t = 0;
        for (std::size_t i = 0; i < positions.size(); ++i) {
            if ((s >> i) & 1) {
                c.members.push_back(positions[i]);
                t |= 1ull << (positions[i] - 1);
            }
        }
        CHECK(is_qualified(spec, p, c, AccessMode::Full).qualified ==
              oracle.qualified(t, p));
        CHECK(is_qualified(spec, p, c, AccessMode::Effective).qualified ==
              oracle.qualified(t | fmask, p));
    }
}

TEST_CASE("monotonicity: supersets of qualified coalitions stay qualified") {
    const CodeSpec spec = example2_code();
    Rng rng(31);
    for (int t = 0; t < 500; ++t) {
        Coalition base;
        for (std::size_t i = 1; i <= 8; ++i)
            if (i != 8 && rng.next_bit()) base.members.push_back(i);
        if (!is_qualified(spec, 8, base, AccessMode::Full).qualified) continue;
        Coalition super = base;
        for (std::size_t i = 1; i <= 7; ++i)
            if (rng.next_bit() &&
                !std::binary_search(super.members.begin(), super.members.end(), i)) {
                super.members.push_back(i);
                std::sort(super.members.begin(), super.members.end());
            }
        CHECK(is_qualified(spec, 8, super, AccessMode::Full).qualified);
    }
}

TEST_CASE("enumerate_p_codewords") {
    const CodeSpec spec = example2_code();

    SUBCASE("(8,4) code, p=8: exactly half the dual code") {
        const auto words = enumerate_p_codewords(spec, 8);
        CHECK(words.size() == 8);
        bool found = false;
        for (const auto& w : words) found = found || w == BitVector::from_string("01010101");
        CHECK(found);
        for (const auto& w : words) CHECK(w.get(7));
    }

    SUBCASE("a coordinate the dual code never touches") {
        // frozen set {N} gives the dual a single generator e_N, so every
        // other coordinate is identically zero
        CodeSpec s{ChannelModel::bec(0.5), 2, 4, 3, {1, 2, 3}, {4}, 1,
                   {0.0, 0.0, 0.0, 0.0}, BitVector(1)};
        validate(s);
        CHECK(enumerate_p_codewords(s, 1).empty());
        CHECK(enumerate_p_codewords(s, 4).size() == 1);
    }

    SUBCASE("enumeration bound") {
        const CodeSpec big = build_code(ChannelModel::bec(0.5), 5, 4);
        CHECK_THROWS_AS(enumerate_p_codewords(big, big.p), std::length_error);
    }
}

TEST_CASE("minimal_access_sets matches the subset-search oracle") {
    const CodeSpec spec = example2_code();

    SUBCASE("full mode") {
        const AccessStructure st = minimal_access_sets(spec, 8, AccessMode::Full);
        CHECK(st.minimal_sets == minimal_sets_oracle(spec, 8, AccessMode::Full));

        // the three genuinely minimal published coalitions all appear
        for (const auto& m : {Coalition{{2, 4, 6}}, Coalition{{3, 4, 7}},
                              Coalition{{5, 6, 7}}}) {
            CHECK(std::find(st.minimal_sets.begin(), st.minimal_sets.end(), m) !=
                  st.minimal_sets.end());
        }
        // enumeration finds three more three-member coalitions the published
        // list omits, plus none of size below three
        CHECK(st.minimal_sets.size() == 7);
        for (const Coalition& c : st.minimal_sets) CHECK(c.members.size() == 3);
    }

    SUBCASE("effective mode collapses: the transcript alone is qualified") {
        const AccessStructure st = minimal_access_sets(spec, 8, AccessMode::Effective);
        CHECK(st.minimal_sets == minimal_sets_oracle(spec, 8, AccessMode::Effective));
        REQUIRE(st.minimal_sets.size() == 1);
        CHECK(st.minimal_sets[0].members.empty());
        CHECK(is_qualified(spec, 8, Coalition{}, AccessMode::Effective).qualified);
    }

    SUBCASE("p=4 in both modes") {
        for (AccessMode mode : {AccessMode::Full, AccessMode::Effective}) {
            const AccessStructure st = minimal_access_sets(spec, 4, mode);
            CHECK(st.minimal_sets == minimal_sets_oracle(spec, 4, mode));
        }
    }

    SUBCASE("structure invariants hold for every mode and secret position") {
        for (std::size_t p : spec.A) {
            for (AccessMode mode : {AccessMode::Full, AccessMode::Effective}) {
                const AccessStructure st = minimal_access_sets(spec, p, mode);
                for (std::size_t i = 0; i < st.minimal_sets.size(); ++i) {
                    const Coalition& c = st.minimal_sets[i];
                    CHECK(is_qualified(spec, p, c, mode).qualified);
                    // antichain
                    for (std::size_t j = 0; j < st.minimal_sets.size(); ++j) {
                        if (i == j) continue;
                        const auto& other = st.minimal_sets[j].members;
                        CHECK_FALSE(std::includes(c.members.begin(), c.members.end(),
                                                  other.begin(), other.end()));
                    }
                    // removing any single member disqualifies
                    for (std::size_t drop = 0; drop < c.members.size(); ++drop) {
                        Coalition smaller = c;
                        smaller.members.erase(smaller.members.begin() + drop);
                        CHECK_FALSE(is_qualified(spec, p, smaller, mode).qualified);
                    }
                    // effective-mode sets never contain frozen positions
                    if (mode == AccessMode::Effective)
                        for (std::size_t m : c.members)
                            CHECK(std::binary_search(spec.A.begin(), spec.A.end(), m));
                }
            }
        }
    }
}

TEST_CASE("minimal access sets on the (32,16) code") {
    const CodeSpec spec = example3_code();

    // the sixteen published per-row coalitions
    const std::vector<std::vector<std::size_t>> table4 = {
        {12, 14, 15, 16, 20, 22, 23, 24, 25, 26, 27, 28, 29, 30, 31},
        {12, 14, 16, 20, 22, 24, 26, 28, 30},
        {12, 15, 16, 20, 23, 24, 27, 28, 31},
        {12, 16, 20, 24, 28},
        {14, 15, 16, 22, 23, 24, 29, 30, 31},
        {14, 16, 22, 24, 30},
        {15, 16, 23, 24, 31},
        {16, 24},
        {12, 14, 15, 16, 25, 27, 28, 29, 30, 31},
        {12, 14, 16, 26, 28, 30},
        {12, 15, 16, 27, 28, 31},
        {14, 15, 16, 29, 30, 31},
        {20, 22, 23, 24, 25, 26, 27, 28, 29, 30, 31},
        {20, 22, 24, 26, 28, 30},
        {20, 23, 24, 27, 28, 31},
        {21, 22, 23, 24, 25, 26, 27, 28, 29, 30, 31},
    };
    for (const auto& members : table4)
        CHECK(is_qualified(spec, 32, Coalition{members}, AccessMode::Effective).qualified);
}

TEST_CASE("dictator_analysis") {
    SUBCASE("a single minimal set makes all its members dictators") {
        AccessStructure st{8, AccessMode::Full, {Coalition{{2, 5, 7}}}, {}};
        CHECK(dictator_analysis(st) == std::vector<std::size_t>{2, 5, 7});
    }
    SUBCASE("empty structure is an argument error") {
        AccessStructure st{8, AccessMode::Full, {}, {}};
        CHECK_THROWS_AS(dictator_analysis(st), std::invalid_argument);
    }
    SUBCASE("(8,4) code: no dictators once enumeration is exhaustive") {
        const CodeSpec spec = example2_code();
        // p=8, effective: the only minimal set is empty, so no member is
        // essential; p=4 full: {1,2,3} is qualified without position 8,
        // so earlier positions can stand in for the last member. Both come
        // straight from the dual-codeword enumeration.
        for (std::size_t p : {std::size_t(8), std::size_t(4)}) {
            for (AccessMode mode : {AccessMode::Full, AccessMode::Effective}) {
                const AccessStructure st = minimal_access_sets(spec, p, mode);
                REQUIRE_FALSE(st.minimal_sets.empty());
                CHECK(dictator_analysis(st).empty());
                CHECK(st.dictators.empty());
            }
        }
        const auto full4 = minimal_access_sets(spec, 4, AccessMode::Full);
        CHECK(std::find(full4.minimal_sets.begin(), full4.minimal_sets.end(),
                        Coalition{{1, 2, 3}}) != full4.minimal_sets.end());
    }
}

TEST_CASE("all_minimal_check") {
    const BitMatrix g8 = polar_generator(3);

    SUBCASE("equal-weight selection {4,6,7}") {
        BitMatrix gen(3, 8);
        gen.set_row(0, g8.row(3));
        gen.set_row(1, g8.row(5));
        gen.set_row(2, g8.row(6));
        const auto check = all_minimal_check(gen);
        CHECK(check.sufficient_by_weight);
        CHECK(check.exact);
    }

    SUBCASE("adding the all-ones row breaks both") {
        BitMatrix gen(4, 8);
        gen.set_row(0, g8.row(3));
        gen.set_row(1, g8.row(5));
        gen.set_row(2, g8.row(6));
        gen.set_row(3, g8.row(7));
        const auto check = all_minimal_check(gen);
        CHECK_FALSE(check.sufficient_by_weight);  // 4/8 is not above 1/2
        CHECK_FALSE(check.exact);                 // the all-ones word covers the rest
    }

    SUBCASE("one-dimensional code") {
        BitMatrix gen(1, 8);
        gen.set_row(0, g8.row(5));
        const auto check = all_minimal_check(gen);
        CHECK(check.sufficient_by_weight);
        CHECK(check.exact);
    }

    SUBCASE("weight condition never contradicts brute force on G_8 subsets") {
        for (unsigned mask = 1; mask < 256; ++mask) {
            BitMatrix gen(std::popcount(mask), 8);
            std::size_t r = 0;
            for (unsigned i = 0; i < 8; ++i)
                if ((mask >> i) & 1) gen.set_row(r++, g8.row(i));
            const auto check = all_minimal_check(gen);
            if (check.sufficient_by_weight) CHECK(check.exact);
        }
    }
}

TEST_CASE("theorem1_count_check") {
    const BitMatrix g8 = polar_generator(3);
    BitMatrix sel(3, 8);
    sel.set_row(0, g8.row(3));
    sel.set_row(1, g8.row(5));
    sel.set_row(2, g8.row(6));

    SUBCASE("the equal-weight selection has 2^(k-1) minimal access sets") {
        CHECK(theorem1_count_check(sel, 1));
        for (std::size_t p = 2; p <= 7; ++p) CHECK(theorem1_count_check(sel, p));
    }
    SUBCASE("zero column is rejected") {
        CHECK_THROWS_AS(theorem1_count_check(sel, 8), std::invalid_argument);
    }
    SUBCASE("identity violates the all-minimal precondition") {
        CHECK_THROWS_AS(theorem1_count_check(BitMatrix::identity(3), 2),
                        std::invalid_argument);
    }
    SUBCASE("single row") {
        BitMatrix gen(1, 8);
        gen.set_row(0, g8.row(5));  // support {1,2,5,6}
        CHECK(theorem1_count_check(gen, 1));
        CHECK(theorem1_count_check(gen, 5));
    }
}

TEST_CASE("coalition parsing and labels") {
    CHECK(Coalition::parse("P4,P6").members == std::vector<std::size_t>{4, 6});
    CHECK(Coalition::parse("6,4").members == std::vector<std::size_t>{4, 6});
    CHECK(Coalition{{4, 6}}.label() == "P4,P6");
    CHECK(Coalition{}.label() == "(empty)");
    CHECK_THROWS_AS(Coalition::parse("P0"), std::invalid_argument);
    CHECK_THROWS_AS(Coalition::parse("Px"), std::invalid_argument);
}
