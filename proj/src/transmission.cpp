#include "polarss/transmission.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>
#include <thread>

#include "polarss/errors.hpp"

namespace polarss {

std::string SimReport::to_csv() const {
    std::string out = "position,failure_rate\n";
    char buf[64];
    for (std::size_t i = 0; i < per_position_failure.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%zu,%.6f\n", i + 1, per_position_failure[i]);
        out += buf;
    }
    out += "coalition,success_rate\n";
    for (const auto& [coalition, rate] : coalition_success) {
        std::snprintf(buf, sizeof buf, ",%.6f\n", rate);
        out += '"' + coalition.label() + '"' + buf;
    }
    return out;
}

namespace {

struct Tally {
    std::vector<std::uint64_t> position_failures;
    std::vector<std::uint64_t> coalition_successes;
};

void run_trials(const CodeSpec& spec, const std::vector<Coalition>& coalitions,
                const SimOptions& opt, std::uint64_t lo, std::uint64_t hi, Tally& tally) {
    const std::size_t N = spec.N;
    std::vector<int> received(N + 1);   // -1 erased, else hard-decided bit

    for (std::uint64_t trial = lo; trial < hi; ++trial) {
        Rng rng(mix64(opt.seed, trial));
        const int secret = rng.next_bit();
        const Dealing dealing = deal(spec, secret, rng);

        for (std::size_t i = 1; i <= N; ++i) received[i] = -1;
        auto send = [&](const Share& s) {
            const ReceivedSymbol y = transmit(spec.channel, s.bit, rng);
            const auto hard = y.hard_decision();
            if (hard.has_value()) {
                received[s.position] = *hard;
                if (*hard != s.bit) tally.position_failures[s.position - 1]++;
            } else {
                tally.position_failures[s.position - 1]++;
            }
        };
        // ascending position order keeps the draw sequence well defined
        {
            std::size_t mi = 0, pi = 0;
            const auto& ms = dealing.member_shares;
            const auto& ps = dealing.public_values;
            while (mi < ms.size() || pi < ps.size()) {
                if (pi == ps.size() ||
                    (mi < ms.size() && ms[mi].position < ps[pi].position))
                    send(ms[mi++]);
                else
                    send(ps[pi++]);
            }
        }

        for (std::size_t c = 0; c < coalitions.size(); ++c) {
            std::vector<Share> shares;
            for (std::size_t pos : coalitions[c].members) {
                if (received[pos] < 0) continue;  // erased share is lost
                const bool frozen =
                    !std::binary_search(spec.A.begin(), spec.A.end(), pos);
                shares.push_back({pos, received[pos],
                                  frozen ? ShareRole::Public : ShareRole::Member});
            }
            if (opt.mode == AccessMode::Effective) {
                for (const Share& s : dealing.public_values) {
                    if (received[s.position] < 0) continue;
                    if (std::binary_search(coalitions[c].members.begin(),
                                           coalitions[c].members.end(), s.position))
                        continue;
                    shares.push_back({s.position, received[s.position], ShareRole::Public});
                }
            }
            try {
                // span over every provided position, whatever its role
                if (reconstruct(spec, spec.p, shares, AccessMode::Effective) == secret)
                    tally.coalition_successes[c]++;
            } catch (const UnqualifiedError&) {
            } catch (const IntegrityError&) {
            }
        }
    }
}

}  // namespace

SimReport simulate(const CodeSpec& spec, const std::vector<Coalition>& coalitions,
                   const SimOptions& opt) {
    if (opt.trials < 1) throw std::invalid_argument("simulate: trials must be positive");
    if (opt.workers < 1) throw std::invalid_argument("simulate: workers must be positive");
    for (const Coalition& c : coalitions)
        for (std::size_t m : c.members)
            if (m == spec.p || m < 1 || m > spec.N)
                throw std::invalid_argument("simulate: bad coalition position");

    const unsigned workers = unsigned(std::min<std::uint64_t>(opt.workers, opt.trials));
    std::vector<Tally> tallies(workers);
    for (Tally& t : tallies) {
        t.position_failures.assign(spec.N, 0);
        t.coalition_successes.assign(coalitions.size(), 0);
    }

    if (workers == 1) {
        run_trials(spec, coalitions, opt, 0, opt.trials, tallies[0]);
    } else {
        std::vector<std::thread> threads;
        const std::uint64_t chunk = (opt.trials + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            const std::uint64_t lo = w * chunk;
            const std::uint64_t hi = std::min<std::uint64_t>(lo + chunk, opt.trials);
            threads.emplace_back([&, lo, hi, w] {
                run_trials(spec, coalitions, opt, lo, hi, tallies[w]);
            });
        }
        for (std::thread& t : threads) t.join();
    }

    SimReport report;
    report.trials = opt.trials;
    report.seed = opt.seed;
    report.mode = opt.mode;
    report.per_position_failure.assign(spec.N, 0.0);
    for (std::size_t i = 0; i < spec.N; ++i) {
        std::uint64_t sum = 0;
        for (const Tally& t : tallies) sum += t.position_failures[i];
        report.per_position_failure[i] = double(sum) / double(opt.trials);
    }
    for (std::size_t c = 0; c < coalitions.size(); ++c) {
        std::uint64_t sum = 0;
        for (const Tally& t : tallies) sum += t.coalition_successes[c];
        report.coalition_success.emplace_back(coalitions[c],
                                              double(sum) / double(opt.trials));
    }
    return report;
}

}  // namespace polarss
