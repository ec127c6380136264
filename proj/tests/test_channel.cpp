#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "polarss/channel.hpp"

#include <cmath>

using namespace polarss;

namespace {

// Independent oracle: the mutual-information sum evaluated on the 3-symbol
// erasure alphabet {0, 1, erasure}.
double bec_capacity_oracle(double eps) {
    double acc = 0.0;
    // y = 0 and y = 1, each reachable from one input only
    for (int y = 0; y < 2; ++y) {
        const double w = 1.0 - eps;           // W(y|y)
        const double mix = 0.5 * w;           // (W(y|0)+W(y|1))/2
        if (w > 0) acc += 0.5 * w * std::log2(w / mix);
    }
    // erasure symbol contributes log2(eps/eps) = 0
    return acc;
}

// Eq-style Bhattacharyya sums on the finite alphabets.
double bec_bhattacharyya_oracle(double eps) {
    // sqrt(W(0|0)W(0|1)) + sqrt(W(1|0)W(1|1)) + sqrt(W(e|0)W(e|1))
    return 0.0 + 0.0 + eps;
}

double bsc_bhattacharyya_oracle(double d) {
    return std::sqrt(d * (1 - d)) + std::sqrt((1 - d) * d);
}

// Adaptive-free Simpson quadrature of the BiAWGN integrands, used to
// cross-check the Gauss-Hermite evaluation.
template <typename F>
double simpson(F f, double a, double b, int intervals) {
    const double h = (b - a) / intervals;
    double acc = f(a) + f(b);
    for (int i = 1; i < intervals; ++i)
        acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

double awgn_capacity_oracle(double sigma) {
    auto density = [sigma](double y, double mean) {
        const double z = (y - mean) / sigma;
        return std::exp(-0.5 * z * z) / (sigma * std::sqrt(2 * M_PI));
    };
    auto integrand = [&](double y) {
        const double p0 = density(y, +1.0), p1 = density(y, -1.0);
        const double mix = 0.5 * (p0 + p1);
        double acc = 0.0;
        if (p0 > 0) acc += 0.5 * p0 * std::log2(p0 / mix);
        if (p1 > 0) acc += 0.5 * p1 * std::log2(p1 / mix);
        return acc;
    };
    const double r = 1.0 + 12.0 * sigma;
    return simpson(integrand, -r, r, 40000);
}

double awgn_bhattacharyya_oracle(double sigma) {
    auto density = [sigma](double y, double mean) {
        const double z = (y - mean) / sigma;
        return std::exp(-0.5 * z * z) / (sigma * std::sqrt(2 * M_PI));
    };
    auto integrand = [&](double y) {
        return std::sqrt(density(y, 1.0) * density(y, -1.0));
    };
    const double r = 1.0 + 12.0 * sigma;
    return simpson(integrand, -r, r, 40000);
}

}  // namespace

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(ChannelModel::bec(-0.1), std::domain_error);
    CHECK_THROWS_AS(ChannelModel::bec(1.1), std::domain_error);
    CHECK_THROWS_AS(ChannelModel::bsc(0.6), std::domain_error);
    CHECK_THROWS_AS(ChannelModel::biawgn(0.0), std::domain_error);
}

TEST_CASE("parse and print") {
    CHECK(ChannelModel::parse("bec:0.5") == ChannelModel::bec(0.5));
    CHECK(ChannelModel::parse("bsc:0.1") == ChannelModel::bsc(0.1));
    CHECK(ChannelModel::parse("awgn:0.9") == ChannelModel::biawgn(0.9));
    CHECK(ChannelModel::bec(0.5).to_string() == "bec:0.5");
    CHECK(ChannelModel::biawgn(0.9).to_string() == "awgn:0.9");
    CHECK_THROWS_AS(ChannelModel::parse("foo:1"), std::domain_error);
    CHECK_THROWS_AS(ChannelModel::parse("bec:abc"), std::domain_error);
    CHECK_THROWS_AS(ChannelModel::parse("bec"), std::domain_error);
}

TEST_CASE("capacity") {
    CHECK(capacity(ChannelModel::bec(0.5)) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(capacity(ChannelModel::bec(0.5)) ==
          doctest::Approx(bec_capacity_oracle(0.5)).epsilon(1e-12));
    CHECK(capacity(ChannelModel::bsc(0.0)) == doctest::Approx(1.0));
    CHECK(capacity(ChannelModel::bsc(0.5)) == doctest::Approx(0.0));
    CHECK(capacity(ChannelModel::biawgn(1e4)) == doctest::Approx(0.0).epsilon(1e-3));

    SUBCASE("quadrature agrees with an independent rule") {
        for (double sigma : {0.5, 0.9, 1.5, 3.0}) {
            CHECK(capacity(ChannelModel::biawgn(sigma)) ==
                  doctest::Approx(awgn_capacity_oracle(sigma)).epsilon(1e-6));
        }
    }
}

TEST_CASE("bhattacharyya") {
    CHECK(bhattacharyya(ChannelModel::bec(0.5)) ==
          doctest::Approx(bec_bhattacharyya_oracle(0.5)).epsilon(1e-15));
    CHECK(bhattacharyya(ChannelModel::bsc(0.0)) == doctest::Approx(0.0));
    CHECK(bhattacharyya(ChannelModel::bsc(0.11)) ==
          doctest::Approx(bsc_bhattacharyya_oracle(0.11)).epsilon(1e-12));
    CHECK(bhattacharyya(ChannelModel::biawgn(0.9)) ==
          doctest::Approx(std::exp(-1.0 / 1.62)).epsilon(1e-12));
    CHECK(bhattacharyya(ChannelModel::biawgn(0.9)) == doctest::Approx(0.5394).epsilon(1e-4));

    SUBCASE("closed form matches quadrature") {
        for (double sigma : {0.5, 0.9, 2.0}) {
            CHECK(bhattacharyya(ChannelModel::biawgn(sigma)) ==
                  doctest::Approx(awgn_bhattacharyya_oracle(sigma)).epsilon(1e-9));
        }
    }
}

TEST_CASE("capacity and bhattacharyya move in opposite directions") {
    auto sweep = [](auto make, double lo, double hi) {
        double prev_c = -1, prev_z = -1;
        bool first = true;
        for (int i = 0; i < 100; ++i) {
            const double t = lo + (hi - lo) * i / 99.0;
            const ChannelModel ch = make(t);
            const double c = capacity(ch), z = bhattacharyya(ch);
            CHECK(c + z > 0.0);
            CHECK(c + z < 2.0);
            if (!first) {
                CHECK(c <= prev_c + 1e-12);
                CHECK(z >= prev_z - 1e-12);
            }
            prev_c = c;
            prev_z = z;
            first = false;
        }
    };
    sweep([](double e) { return ChannelModel::bec(e); }, 0.005, 0.995);
    sweep([](double d) { return ChannelModel::bsc(d); }, 0.005, 0.495);
    sweep([](double s) { return ChannelModel::biawgn(s); }, 0.2, 5.0);
}

TEST_CASE("transmit") {
    SUBCASE("degenerate erasure probabilities") {
        Rng rng(1);
        for (int i = 0; i < 100; ++i) {
            const auto y = transmit(ChannelModel::bec(0.0), 1, rng);
            CHECK(y.kind == ReceivedSymbol::Kind::Bit);
            CHECK(y.bit == 1);
        }
        for (int i = 0; i < 100; ++i)
            CHECK(transmit(ChannelModel::bec(1.0), i & 1, rng).erased());
    }

    SUBCASE("empirical erasure rate at eps = 0.5") {
        Rng rng(123);
        int erased = 0;
        const int trials = 100000;
        for (int i = 0; i < trials; ++i)
            erased += transmit(ChannelModel::bec(0.5), 0, rng).erased();
        CHECK(std::abs(erased / double(trials) - 0.5) < 0.01);
    }

    SUBCASE("same seed, same symbols") {
        Rng a(99), b(99);
        const ChannelModel ch = ChannelModel::biawgn(0.9);
        for (int i = 0; i < 1000; ++i)
            CHECK(transmit(ch, i & 1, a).value == transmit(ch, i & 1, b).value);
    }

    SUBCASE("symbol statistics within 3 standard errors") {
        const int trials = 100000;

        Rng rng(2024);
        int flips = 0;
        for (int i = 0; i < trials; ++i)
            flips += transmit(ChannelModel::bsc(0.11), 0, rng).bit == 1;
        const double se_bsc = std::sqrt(0.11 * 0.89 / trials);
        CHECK(std::abs(flips / double(trials) - 0.11) < 3 * se_bsc);

        double sum = 0;
        for (int i = 0; i < trials; ++i)
            sum += transmit(ChannelModel::biawgn(0.9), 1, rng).value;
        const double se_awgn = 0.9 / std::sqrt(double(trials));
        CHECK(std::abs(sum / trials - (-1.0)) < 3 * se_awgn);
    }

    SUBCASE("hard decisions") {
        CHECK(ReceivedSymbol::make_real(0.3).hard_decision() == 0);
        CHECK(ReceivedSymbol::make_real(-0.3).hard_decision() == 1);
        CHECK_FALSE(ReceivedSymbol::make_erasure().hard_decision().has_value());
        CHECK(ReceivedSymbol::make_bit(1).hard_decision() == 1);
    }
}

TEST_CASE("gauss-hermite weights sum to sqrt(pi)") {
    std::vector<double> nodes, weights;
    gauss_hermite(64, nodes, weights);
    double sum = 0;
    for (double w : weights) sum += w;
    CHECK(sum == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-12));
    // nodes symmetric about zero
    for (int i = 0; i < 32; ++i)
        CHECK(nodes[i] == doctest::Approx(-nodes[63 - i]).epsilon(1e-12));
}
