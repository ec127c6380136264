#include "polarss/construction.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <istream>
#include <map>
#include <numbers>
#include <numeric>
#include <ostream>
#include <sstream>

#include "polarss/errors.hpp"

namespace polarss {

namespace {

bool is_power_of_two(std::size_t x) { return x != 0 && (x & (x - 1)) == 0; }

unsigned log2_of(std::size_t x) { return unsigned(std::countr_zero(x)); }

double q_function(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

// ln of the Gaussian-approximation phi function (standard two-branch fit).
// Working in the log domain keeps the minus transform stable for the huge
// mean-LLR values that appear on nearly noiseless subchannels.
double ga_phi_ln(double x) {
    if (x < 10.0) return -0.4527 * std::pow(x, 0.86) + 0.0218;
    return 0.5 * (std::log(std::numbers::pi) - std::log(x)) - x / 4.0
           + std::log1p(-10.0 / (7.0 * x));
}

// Inverse of ga_phi_ln by bisection to 1e-9.
double ga_phi_ln_inv(double target_ln) {
    double lo = 1e-12, hi = 1.0;
    while (ga_phi_ln(hi) > target_ln) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e12) return hi;  // effectively noiseless
    }
    while (hi - lo > 1e-9 && hi - lo > 1e-12 * hi) {
        const double mid = 0.5 * (lo + hi);
        if (ga_phi_ln(mid) > target_ln) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

// One GA minus transform: m -> phi^-1(2 phi(m) - phi(m)^2).
double ga_minus(double m) {
    const double lp = ga_phi_ln(m);
    // ln(2 phi - phi^2) = ln2 + ln phi + ln(1 - phi/2)
    const double target = std::numbers::ln2 + lp + std::log1p(-0.5 * std::exp(lp));
    return ga_phi_ln_inv(target);
}

std::vector<double> bhattacharyya_evolution(double z0, std::size_t N) {
    if (!is_power_of_two(N))
        throw std::invalid_argument("reliabilities: N must be a power of two");
    const unsigned n = log2_of(N);
    std::vector<double> z(N);
    for (std::size_t i = 0; i < N; ++i) {
        double v = z0;
        for (unsigned b = n; b-- > 0;) {
            if ((i >> b) & 1) v = v * v;           // plus transform
            else              v = 2.0 * v - v * v; // minus transform
        }
        z[i] = v;
    }
    return z;
}

}  // namespace

void validate(const CodeSpec& spec) {
    if (spec.N != (std::size_t(1) << spec.n))
        throw std::invalid_argument("CodeSpec: N must equal 2^n");
    if (spec.k < 1 || spec.k > spec.N)
        throw std::invalid_argument("CodeSpec: k out of range");
    if (spec.A.size() != spec.k)
        throw std::invalid_argument("CodeSpec: |A| != k");
    if (spec.frozen.size() != spec.N - spec.k)
        throw std::invalid_argument("CodeSpec: |frozen| != N-k");
    std::vector<bool> seen(spec.N + 1, false);
    auto check_set = [&](const std::vector<std::size_t>& s, const char* name) {
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s[i] < 1 || s[i] > spec.N)
                throw std::invalid_argument(std::string("CodeSpec: ") + name + " index out of range");
            if (i > 0 && s[i] <= s[i - 1])
                throw std::invalid_argument(std::string("CodeSpec: ") + name + " not ascending");
            if (seen[s[i]])
                throw std::invalid_argument("CodeSpec: A and frozen overlap");
            seen[s[i]] = true;
        }
    };
    check_set(spec.A, "A");
    check_set(spec.frozen, "frozen");
    if (!std::binary_search(spec.A.begin(), spec.A.end(), spec.p))
        throw std::invalid_argument("CodeSpec: p not in A");
    if (spec.reliability.size() != spec.N)
        throw std::invalid_argument("CodeSpec: reliability length != N");
    if (spec.frozen_values.size() != spec.N - spec.k)
        throw std::invalid_argument("CodeSpec: frozen_values length != N-k");
}

std::vector<double> bec_reliabilities(double eps, std::size_t N) {
    if (!(eps >= 0.0 && eps <= 1.0))
        throw std::domain_error("bec_reliabilities: eps must be in [0,1]");
    return bhattacharyya_evolution(eps, N);
}

std::vector<double> awgn_reliabilities(double sigma, std::size_t N) {
    if (!(sigma > 0.0))
        throw std::domain_error("awgn_reliabilities: sigma must be positive");
    if (!is_power_of_two(N))
        throw std::invalid_argument("awgn_reliabilities: N must be a power of two");
    const unsigned n = log2_of(N);
    const double m1 = 2.0 / (sigma * sigma);
    std::vector<double> scores(N);
    for (std::size_t i = 0; i < N; ++i) {
        double m = m1;
        for (unsigned b = n; b-- > 0;) {
            if ((i >> b) & 1) m = 2.0 * m;
            else              m = ga_minus(m);
        }
        scores[i] = q_function(std::sqrt(m / 2.0));
    }
    return scores;
}

std::vector<double> channel_reliabilities(const ChannelModel& ch, std::size_t N) {
    switch (ch.kind) {
        case ChannelKind::BEC:
            return bec_reliabilities(ch.param, N);
        case ChannelKind::BiAWGN:
            return awgn_reliabilities(ch.param, N);
        case ChannelKind::BSC:
            // No construction recipe is pinned for the BSC; evolve its
            // Bhattacharyya parameter with the erasure recursion, which upper
            // bounds the true Z of every synthesized channel.
            return bhattacharyya_evolution(bhattacharyya(ch), N);
    }
    throw std::logic_error("unreachable");
}

std::vector<std::size_t> select_information_set(const std::vector<double>& reliability,
                                                std::size_t k) {
    const std::size_t N = reliability.size();
    if (k < 1 || k > N)
        throw std::invalid_argument("select_information_set: k out of range");
    std::vector<std::size_t> order(N);
    std::iota(order.begin(), order.end(), std::size_t(0));
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (reliability[a] != reliability[b]) return reliability[a] < reliability[b];
        return a < b;
    });
    std::vector<std::size_t> a(order.begin(), order.begin() + k);
    for (auto& i : a) ++i;  // 1-based
    std::sort(a.begin(), a.end());
    return a;
}

CodeSpec build_code(const ChannelModel& ch, unsigned n, std::size_t k,
                    std::optional<std::size_t> p) {
    if (n > 20) throw std::length_error("build_code: n above cap");
    const std::size_t N = std::size_t(1) << n;
    if (k < 1 || k > N) throw std::invalid_argument("build_code: k out of range");

    CodeSpec spec{ch, n, N, k, {}, {}, 0, {}, BitVector(N - k)};
    spec.reliability = channel_reliabilities(ch, N);
    spec.A = select_information_set(spec.reliability, k);
    std::vector<bool> in_a(N + 1, false);
    for (std::size_t i : spec.A) in_a[i] = true;
    for (std::size_t i = 1; i <= N; ++i)
        if (!in_a[i]) spec.frozen.push_back(i);

    if (p.has_value()) {
        if (!in_a[*p])
            throw std::invalid_argument("build_code: requested secret position is frozen");
        spec.p = *p;
    } else {
        spec.p = spec.A[0];
        for (std::size_t i : spec.A)
            if (spec.reliability[i - 1] < spec.reliability[spec.p - 1]) spec.p = i;
    }
    validate(spec);
    return spec;
}

BitVector generator_row(std::size_t N, std::size_t i) {
    // G_N[i][j] = 1 iff (j-1) is a submask of (i-1).
    BitVector v(N);
    const std::size_t mask = i - 1;
    // enumerate submasks of mask directly
    std::size_t s = mask;
    while (true) {
        v.set(s, true);
        if (s == 0) break;
        s = (s - 1) & mask;
    }
    return v;
}

BitVector dual_row(std::size_t N, std::size_t i) {
    // H_N[i][j] = G_N[N+1-i][N+1-j]: 1 iff (i-1) is a submask of (j-1).
    BitVector v(N);
    const std::size_t base = i - 1;
    const std::size_t free_mask = (N - 1) & ~base;
    std::size_t s = free_mask;
    while (true) {
        v.set(base | s, true);
        if (s == 0) break;
        s = (s - 1) & free_mask;
    }
    return v;
}

BitMatrix generator_submatrix(const CodeSpec& spec) {
    BitMatrix g(spec.k, spec.N);
    for (std::size_t r = 0; r < spec.k; ++r)
        g.set_row(r, generator_row(spec.N, spec.A[r]));
    return g;
}

BitMatrix dual_submatrix(const CodeSpec& spec) {
    BitMatrix h(spec.N - spec.k, spec.N);
    for (std::size_t r = 0; r < spec.frozen.size(); ++r)
        h.set_row(r, dual_row(spec.N, spec.frozen[r]));
    return h;
}

BitVector encode(const CodeSpec& spec, const BitVector& u_A) {
    if (u_A.size() != spec.k)
        throw std::invalid_argument("encode: message length must equal k");
    BitVector x(spec.N);
    for (std::size_t r = 0; r < spec.k; ++r)
        if (u_A.get(r)) x ^= generator_row(spec.N, spec.A[r]);
    for (std::size_t r = 0; r < spec.frozen.size(); ++r)
        if (spec.frozen_values.get(r)) x ^= generator_row(spec.N, spec.frozen[r]);
    return x;
}

BitVector systematic_encode(const CodeSpec& spec, const BitVector& x_U) {
    if (x_U.size() != spec.k)
        throw std::invalid_argument("systematic_encode: message length must equal k");
    const std::size_t f = spec.N - spec.k;
    BitVector x(spec.N);
    for (std::size_t r = 0; r < spec.k; ++r) x.set(spec.A[r] - 1, x_U.get(r));
    if (f == 0) return x;

    // Solve M y = b for the frozen coordinates, where M is H_U restricted to
    // the frozen columns and b collects the information-coordinate parity.
    const BitMatrix h_u = dual_submatrix(spec);
    BitMatrix m(f, f);
    BitVector b(f);
    for (std::size_t r = 0; r < f; ++r) {
        bool acc = false;
        for (std::size_t c = 0; c < spec.k; ++c)
            acc ^= x_U.get(c) && h_u.get(r, spec.A[c] - 1);
        b.set(r, acc);
        for (std::size_t c = 0; c < f; ++c)
            m.set(r, c, h_u.get(r, spec.frozen[c] - 1));
    }
    // M is triangular with unit diagonal, so this always succeeds.
    const auto y = solve(transpose(m), b);
    for (std::size_t c = 0; c < f; ++c) x.set(spec.frozen[c] - 1, y->get(c));
    return x;
}

std::size_t column_weight(std::size_t j, std::size_t N) {
    if (!is_power_of_two(N)) throw std::invalid_argument("column_weight: N must be a power of two");
    if (j < 1 || j > N) throw std::out_of_range("column_weight: column index out of range");
    const unsigned n = log2_of(N);
    const unsigned ones = unsigned(std::popcount(std::uint64_t(j - 1)));
    return std::size_t(1) << (n - ones);
}

std::vector<std::size_t> select_equal_weight_rows(const CodeSpec& spec) {
    // Row i of G_N has weight 2^popcount(i-1).
    std::map<std::size_t, std::vector<std::size_t>> classes;
    for (std::size_t i : spec.A) {
        const std::size_t w = std::size_t(1) << std::popcount(std::uint64_t(i - 1));
        classes[w].push_back(i);
    }
    std::vector<std::size_t> best;
    std::size_t best_weight = 0;
    for (const auto& [w, members] : classes) {
        if (members.size() > best.size() ||
            (members.size() == best.size() && w > best_weight)) {
            best = members;
            best_weight = w;
        }
    }
    return best;
}

// --- file format ------------------------------------------------------------

namespace {

std::string join_sizes(const std::vector<std::size_t>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(v[i]);
    }
    return s;
}

constexpr char kCodeMagic[] = "POLARSS-CODE v1";

}  // namespace

std::string canonical_code_text(const CodeSpec& spec) {
    std::string out;
    out += kCodeMagic;
    out += '\n';
    out += "channel = " + spec.channel.to_string() + "\n";
    out += "n = " + std::to_string(spec.n) + "\n";
    out += "k = " + std::to_string(spec.k) + "\n";
    out += "A = " + join_sizes(spec.A) + "\n";
    out += "p = " + std::to_string(spec.p) + "\n";
    out += "frozen_values = " + spec.frozen_values.to_string() + "\n";
    out += "reliability = ";
    char buf[32];
    for (std::size_t i = 0; i < spec.reliability.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.6f", spec.reliability[i]);
        if (i) out += ',';
        out += buf;
    }
    out += '\n';
    return out;
}

void save_code(const CodeSpec& spec, std::ostream& out) {
    out << canonical_code_text(spec);
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

std::size_t parse_size(const std::string& s, const char* what) {
    try {
        std::size_t pos = 0;
        const unsigned long long v = std::stoull(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("");
        return std::size_t(v);
    } catch (const std::exception&) {
        throw FormatError(std::string("bad integer for ") + what + ": " + s);
    }
}

std::vector<std::size_t> parse_size_list(const std::string& s, const char* what) {
    std::vector<std::size_t> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(parse_size(strip(item), what));
    return out;
}

std::vector<double> parse_double_list(const std::string& s, const char* what) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = strip(item);
        char* end = nullptr;
        const double v = std::strtod(item.c_str(), &end);
        if (item.empty() || end != item.c_str() + item.size())
            throw FormatError(std::string("bad number for ") + what + ": " + item);
        out.push_back(v);
    }
    return out;
}

}  // namespace

CodeSpec load_code(std::istream& in) {
    std::string line;
    // first non-comment line must be the magic
    std::string magic;
    while (std::getline(in, line)) {
        magic = strip(line);
        if (!magic.empty()) break;
    }
    if (magic != kCodeMagic)
        throw FormatError("expected " + std::string(kCodeMagic) + " header");

    std::map<std::string, std::string> kv;
    while (std::getline(in, line)) {
        const std::string s = strip(line);
        if (s.empty()) continue;
        const auto eq = s.find('=');
        if (eq == std::string::npos)
            throw FormatError("expected key = value, got: " + s);
        const std::string key = strip(s.substr(0, eq));
        const std::string value = strip(s.substr(eq + 1));
        static const char* known[] = {"channel", "n", "k", "A", "p",
                                      "frozen_values", "reliability"};
        if (std::find_if(std::begin(known), std::end(known),
                         [&](const char* k) { return key == k; }) == std::end(known))
            throw FormatError("unknown key: " + key);
        if (!kv.emplace(key, value).second)
            throw FormatError("duplicate key: " + key);
    }
    for (const char* key : {"channel", "n", "k", "A", "p", "frozen_values", "reliability"})
        if (!kv.count(key)) throw FormatError(std::string("missing key: ") + key);

    CodeSpec spec{ChannelModel::bec(0), 0, 1, 0, {}, {}, 0, {}, BitVector(0)};
    try {
        spec.channel = ChannelModel::parse(kv["channel"]);
    } catch (const std::domain_error& e) {
        throw FormatError(e.what());
    }
    spec.n = unsigned(parse_size(kv["n"], "n"));
    if (spec.n > 20) throw FormatError("n above cap");
    spec.N = std::size_t(1) << spec.n;
    spec.k = parse_size(kv["k"], "k");
    spec.A = parse_size_list(kv["A"], "A");
    spec.p = parse_size(kv["p"], "p");
    try {
        spec.frozen_values = BitVector::from_string(kv["frozen_values"]);
    } catch (const std::invalid_argument&) {
        throw FormatError("frozen_values must be a 0/1 string");
    }
    spec.reliability = parse_double_list(kv["reliability"], "reliability");

    std::vector<bool> in_a(spec.N + 1, false);
    for (std::size_t i : spec.A)
        if (i >= 1 && i <= spec.N) in_a[i] = true;
    for (std::size_t i = 1; i <= spec.N; ++i)
        if (!in_a[i]) spec.frozen.push_back(i);
    try {
        validate(spec);
    } catch (const std::invalid_argument& e) {
        throw FormatError(e.what());
    }
    return spec;
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::uint64_t code_digest(const CodeSpec& spec) {
    return fnv1a64(canonical_code_text(spec));
}

}  // namespace polarss
