#include "polarss/channel.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <stdexcept>

namespace polarss {

namespace {

double binary_entropy(double x) {
    if (x <= 0.0 || x >= 1.0) return 0.0;
    return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

// log2(1 + exp(m)), stable for large |m|.
double log2_1p_exp(double m) {
    constexpr double inv_ln2 = std::numbers::log2e;
    if (m > 36.0) return m * inv_ln2 + std::log1p(std::exp(-m)) * inv_ln2;
    return std::log1p(std::exp(m)) * inv_ln2;
}

constexpr int kGhOrder = 64;

struct GhTable {
    std::vector<double> nodes, weights;
    GhTable() { gauss_hermite(kGhOrder, nodes, weights); }
};

const GhTable& gh_table() {
    static const GhTable t;
    return t;
}

}  // namespace

ChannelModel ChannelModel::bec(double epsilon) {
    if (!(epsilon >= 0.0 && epsilon <= 1.0))
        throw std::domain_error("bec: erasure probability must be in [0,1]");
    return {ChannelKind::BEC, epsilon};
}

ChannelModel ChannelModel::bsc(double delta) {
    if (!(delta >= 0.0 && delta <= 0.5))
        throw std::domain_error("bsc: crossover probability must be in [0,1/2]");
    return {ChannelKind::BSC, delta};
}

ChannelModel ChannelModel::biawgn(double sigma) {
    if (!(sigma > 0.0))
        throw std::domain_error("awgn: sigma must be positive");
    return {ChannelKind::BiAWGN, sigma};
}

ChannelModel ChannelModel::parse(std::string_view text) {
    const auto colon = text.find(':');
    if (colon == std::string_view::npos)
        throw std::domain_error("channel syntax is bec:<eps>, bsc:<delta> or awgn:<sigma>");
    const std::string_view name = text.substr(0, colon);
    const std::string value(text.substr(colon + 1));
    char* end = nullptr;
    const double p = std::strtod(value.c_str(), &end);
    if (value.empty() || end != value.c_str() + value.size())
        throw std::domain_error("channel parameter is not a number: " + value);
    if (name == "bec") return bec(p);
    if (name == "bsc") return bsc(p);
    if (name == "awgn") return biawgn(p);
    throw std::domain_error("unknown channel kind: " + std::string(name));
}

namespace {

// Shortest decimal form that parses back to the same double.
std::string format_double(double x) {
    char buf[40];
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, x);
        if (std::strtod(buf, nullptr) == x) break;
    }
    return buf;
}

}  // namespace

std::string ChannelModel::to_string() const {
    switch (kind) {
        case ChannelKind::BEC: return "bec:" + format_double(param);
        case ChannelKind::BSC: return "bsc:" + format_double(param);
        case ChannelKind::BiAWGN: return "awgn:" + format_double(param);
    }
    throw std::logic_error("unreachable");
}

std::optional<int> ReceivedSymbol::hard_decision() const {
    switch (kind) {
        case Kind::Bit: return bit;
        case Kind::Erasure: return std::nullopt;
        case Kind::Real: return value < 0.0 ? 1 : 0;
    }
    throw std::logic_error("unreachable");
}

double capacity(const ChannelModel& ch) {
    switch (ch.kind) {
        case ChannelKind::BEC:
            return 1.0 - ch.param;
        case ChannelKind::BSC:
            return 1.0 - binary_entropy(ch.param);
        case ChannelKind::BiAWGN: {
            // I = 1 - E_y[ log2(1 + exp(-2y/sigma^2)) ] with y ~ N(+1, sigma^2);
            // substituting y = 1 + sqrt(2) sigma t turns the expectation into a
            // Gauss-Hermite sum.
            const double sigma = ch.param;
            const auto& t = gh_table();
            double acc = 0.0;
            for (int i = 0; i < kGhOrder; ++i) {
                const double y = 1.0 + std::numbers::sqrt2 * sigma * t.nodes[i];
                acc += t.weights[i] * log2_1p_exp(-2.0 * y / (sigma * sigma));
            }
            const double cap = 1.0 - acc / std::sqrt(std::numbers::pi);
            return std::min(1.0, std::max(0.0, cap));
        }
    }
    throw std::logic_error("unreachable");
}

double bhattacharyya(const ChannelModel& ch) {
    switch (ch.kind) {
        case ChannelKind::BEC:
            return ch.param;
        case ChannelKind::BSC:
            return 2.0 * std::sqrt(ch.param * (1.0 - ch.param));
        case ChannelKind::BiAWGN:
            return std::exp(-1.0 / (2.0 * ch.param * ch.param));
    }
    throw std::logic_error("unreachable");
}

ReceivedSymbol transmit(const ChannelModel& ch, int bit, Rng& rng) {
    switch (ch.kind) {
        case ChannelKind::BEC:
            if (rng.next_unit() < ch.param) return ReceivedSymbol::make_erasure();
            return ReceivedSymbol::make_bit(bit);
        case ChannelKind::BSC: {
            const bool flip = rng.next_unit() < ch.param;
            return ReceivedSymbol::make_bit(bit ^ int(flip));
        }
        case ChannelKind::BiAWGN: {
            const double y = (1.0 - 2.0 * bit) + ch.param * rng.next_gaussian();
            return ReceivedSymbol::make_real(y);
        }
    }
    throw std::logic_error("unreachable");
}

// Roots of the order-n Hermite polynomial by Newton iteration, weights from
// the derivative; the usual recurrence on the orthonormal polynomials.
void gauss_hermite(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    constexpr double eps = 3.0e-14;
    const double pim4 = 1.0 / std::pow(std::numbers::pi, 0.25);
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    const int half = (n + 1) / 2;
    double z = 0.0, pp = 0.0;
    for (int i = 0; i < half; ++i) {
        if (i == 0) z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
        else if (i == 1) z -= 1.14 * std::pow(double(n), 0.426) / z;
        else if (i == 2) z = 1.86 * z - 0.86 * nodes[0];
        else if (i == 3) z = 1.91 * z - 0.91 * nodes[1];
        else z = 2.0 * z - nodes[i - 2];
        for (int iter = 0; iter < 100; ++iter) {
            double p1 = pim4, p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = z * std::sqrt(2.0 / (j + 1)) * p2 - std::sqrt(double(j) / (j + 1)) * p3;
            }
            pp = std::sqrt(2.0 * n) * p2;
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::fabs(z - z1) <= eps) break;
        }
        nodes[i] = z;
        nodes[n - 1 - i] = -z;
        weights[i] = 2.0 / (pp * pp);
        weights[n - 1 - i] = weights[i];
    }
}

}  // namespace polarss
