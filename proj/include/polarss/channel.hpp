#ifndef POLARSS_CHANNEL_HPP
#define POLARSS_CHANNEL_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "polarss/rng.hpp"

namespace polarss {

enum class ChannelKind { BEC, BSC, BiAWGN };

// A binary-input symmetric channel: erasure, crossover, or Gaussian noise.
// param is the erasure probability, crossover probability, or noise standard
// deviation respectively. Immutable once constructed; construction validates
// the parameter range.
struct ChannelModel {
    ChannelKind kind;
    double param;

    static ChannelModel bec(double epsilon);      // 0 <= epsilon <= 1
    static ChannelModel bsc(double delta);        // 0 <= delta <= 1/2
    static ChannelModel biawgn(double sigma);     // sigma > 0

    // CLI/file syntax: "bec:<eps>", "bsc:<delta>", "awgn:<sigma>".
    static ChannelModel parse(std::string_view text);
    std::string to_string() const;

    bool operator==(const ChannelModel&) const = default;
};

// One channel output symbol. BEC produces a bit or an erasure, BSC a bit,
// BiAWGN a real value.
struct ReceivedSymbol {
    enum class Kind { Bit, Erasure, Real } kind;
    int bit = 0;        // valid when kind == Bit
    double value = 0;   // valid when kind == Real

    static ReceivedSymbol make_bit(int b) { return {Kind::Bit, b, 0}; }
    static ReceivedSymbol make_erasure() { return {Kind::Erasure, 0, 0}; }
    static ReceivedSymbol make_real(double y) { return {Kind::Real, 0, y}; }

    bool erased() const { return kind == Kind::Erasure; }

    // Hard decision: nullopt on erasure; sign rule for real outputs
    // (bit 0 is sent as +1, bit 1 as -1).
    std::optional<int> hard_decision() const;
};

// Symmetric capacity, log base 2, in [0,1]. Closed form for BEC/BSC; for
// BiAWGN a 64-node Gauss-Hermite quadrature of the mutual-information
// integral (absolute error below 1e-6).
double capacity(const ChannelModel& ch);

// Bhattacharyya parameter in [0,1]: BEC -> eps, BSC -> 2*sqrt(d(1-d)),
// BiAWGN -> exp(-1/(2 sigma^2)).
double bhattacharyya(const ChannelModel& ch);

// Sample one channel use. BiAWGN sends bit b as (1 - 2b) and adds
// N(0, sigma^2) noise.
ReceivedSymbol transmit(const ChannelModel& ch, int bit, Rng& rng);

// Nodes and weights for integrating f against exp(-t^2) dt.
// Exposed for the quadrature cross-checks in the tests.
void gauss_hermite(int n, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace polarss

#endif
