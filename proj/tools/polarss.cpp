// polarss: construct polar codes over BEC/BSC/AWGN channels, use them as a
// linear secret-sharing scheme, analyze the access structure, and simulate
// share delivery over the construction channel.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "polarss/access.hpp"
#include "polarss/channel.hpp"
#include "polarss/construction.hpp"
#include "polarss/errors.hpp"
#include "polarss/sharing.hpp"
#include "polarss/transmission.hpp"

namespace fs = std::filesystem;
using namespace polarss;

namespace {

CodeSpec load_code_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open code file: " + path);
    return load_code(in);
}

ParsedShares load_shares_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open shares file: " + path);
    return load_shares(in);
}

void write_text(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write: " + path);
    out << text;
}

AccessMode parse_mode(const std::string& mode) {
    if (mode == "full") return AccessMode::Full;
    if (mode == "effective") return AccessMode::Effective;
    throw CLI::ValidationError("--mode", "must be full or effective");
}

std::string join(const std::vector<std::size_t>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(v[i]);
    }
    return s;
}

int run(int argc, char** argv) {
    CLI::App app{"polar-code secret sharing toolkit"};
    app.require_subcommand(1);

    // construct
    auto* construct = app.add_subcommand("construct", "build a code and write a POLARSS-CODE file");
    std::string channel_text, out_path = "-";
    unsigned n = 0;
    std::size_t k = 0;
    std::optional<std::size_t> p;
    construct->add_option("--channel", channel_text, "bec:<eps>, bsc:<delta> or awgn:<sigma>")->required();
    construct->add_option("--n", n, "block length exponent, N = 2^n")->required();
    construct->add_option("--k", k, "code dimension")->required();
    construct->add_option("--p", p, "secret position (default: most reliable index)");
    construct->add_option("-o,--output", out_path, "output file ('-' = stdout)");

    // inspect
    auto* inspect = app.add_subcommand("inspect", "print code parameters and matrices");
    std::string code_path;
    inspect->add_option("--code", code_path, "POLARSS-CODE file")->required();

    // weights
    auto* weights = app.add_subcommand("weights", "print the column weights of G_N");
    unsigned weights_n = 0;
    weights->add_option("--n", weights_n, "block length exponent")->required();

    // access
    auto* access = app.add_subcommand("access", "list the minimal access sets");
    std::string access_code, access_mode = "effective";
    std::optional<std::size_t> access_p;
    access->add_option("--code", access_code)->required();
    access->add_option("--mode", access_mode, "full or effective (default effective)");
    access->add_option("--p", access_p, "override the secret position (must be in A)");

    // deal
    auto* deal_cmd = app.add_subcommand("deal", "split a secret into share files");
    std::string deal_code, secret_bits, outdir;
    std::optional<std::uint64_t> deal_seed;
    deal_cmd->add_option("--code", deal_code)->required();
    deal_cmd->add_option("--secret", secret_bits, "secret as a 0/1 string")->required();
    deal_cmd->add_option("--seed", deal_seed, "test-only deterministic seed (insecure)");
    deal_cmd->add_option("--outdir", outdir, "directory for the share files")->required();

    // reconstruct
    auto* rec = app.add_subcommand("reconstruct", "recover the secret from share files");
    std::string rec_code, rec_mode = "effective";
    std::vector<std::string> rec_files;
    std::vector<std::string> rec_groups;
    rec->add_option("--code", rec_code)->required();
    rec->add_option("--mode", rec_mode, "full or effective (default effective)");
    rec->add_option("files", rec_files, "share files of a single dealing");
    rec->add_option("--group", rec_groups,
                    "comma-separated share files of one dealing; repeat per secret bit");

    // simulate
    auto* sim = app.add_subcommand("simulate", "Monte-Carlo share delivery over the channel");
    std::string sim_code, sim_mode = "effective", sim_out = "-";
    std::uint64_t sim_trials = 100000, sim_seed = 0;
    unsigned sim_workers = 1;
    std::vector<std::string> sim_coalitions;
    sim->add_option("--code", sim_code)->required();
    sim->add_option("--trials", sim_trials, "trial count (default 100000)");
    sim->add_option("--seed", sim_seed, "master seed (default 0)");
    sim->add_option("--workers", sim_workers, "worker thread count (default 1)");
    sim->add_option("--mode", sim_mode, "full or effective (default effective)");
    sim->add_option("--coalition", sim_coalitions, "coalition like P4,P6; repeatable");
    sim->add_option("-o,--output", sim_out, "CSV output ('-' = stdout)");

    // audit
    auto* audit = app.add_subcommand("audit", "exhaustive secrecy audit of a coalition");
    std::string audit_code, audit_mode = "effective", audit_coalition;
    audit->add_option("--code", audit_code)->required();
    audit->add_option("--coalition", audit_coalition, "coalition like P4,P6 (may be empty)");
    audit->add_option("--mode", audit_mode, "full or effective (default effective)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    if (construct->parsed()) {
        const CodeSpec spec = build_code(ChannelModel::parse(channel_text), n, k, p);
        write_text(out_path, canonical_code_text(spec));
        return 0;
    }

    if (inspect->parsed()) {
        const CodeSpec spec = load_code_file(code_path);
        const BitMatrix g_u = generator_submatrix(spec);
        const BitMatrix h_u = dual_submatrix(spec);
        std::cout << "channel = " << spec.channel.to_string() << "\n"
                  << "n = " << spec.n << "\n"
                  << "N = " << spec.N << "\n"
                  << "k = " << spec.k << "\n"
                  << "A = " << join(spec.A) << "\n"
                  << "frozen = " << join(spec.frozen) << "\n"
                  << "p = " << spec.p << "\n";
        std::cout << "reliability =";
        char buf[32];
        for (std::size_t i = 0; i < spec.N; ++i) {
            std::snprintf(buf, sizeof buf, " %.6f", spec.reliability[i]);
            std::cout << (i ? "," : "") << buf;
        }
        std::cout << "\n";
        std::cout << "G_U =\n" << g_u.to_string() << "\n";
        if (h_u.rows() > 0) std::cout << "H_U =\n" << h_u.to_string() << "\n";
        const bool ok = mat_mul(g_u, transpose(h_u)) == BitMatrix(spec.k, spec.N - spec.k);
        std::cout << "orthogonality (G_U * H_U^T == 0): " << (ok ? "ok" : "FAILED") << "\n";
        return ok ? 0 : 1;
    }

    if (weights->parsed()) {
        if (weights_n > 20) throw std::length_error("weights: n above cap");
        const std::size_t N = std::size_t(1) << weights_n;
        std::string line;
        for (std::size_t j = 1; j <= N; ++j) {
            if (j > 1) line += ',';
            line += std::to_string(column_weight(j, N));
        }
        std::cout << line << "\n";
        return 0;
    }

    if (access->parsed()) {
        const CodeSpec spec = load_code_file(access_code);
        const AccessMode mode = parse_mode(access_mode);
        std::size_t p_used = access_p.value_or(spec.p);
        if (!std::binary_search(spec.A.begin(), spec.A.end(), p_used))
            throw std::invalid_argument("secret position must be in A");
        const AccessStructure st = minimal_access_sets(spec, p_used, mode);
        std::cout << "mode=" << mode_name(mode) << " p=" << p_used
                  << " count=" << st.minimal_sets.size() << "\n";
        for (const Coalition& c : st.minimal_sets) std::cout << c.label() << "\n";
        if (st.minimal_sets.empty())
            std::cout << "# no qualified coalition exists\n";
        else if (st.dictators.empty())
            std::cout << "# dictators = none\n";
        else {
            std::cout << "# dictators = ";
            for (std::size_t i = 0; i < st.dictators.size(); ++i)
                std::cout << (i ? "," : "") << 'P' << st.dictators[i];
            std::cout << "\n";
        }
        return 0;
    }

    if (deal_cmd->parsed()) {
        const CodeSpec spec = load_code_file(deal_code);
        if (deal_seed.has_value())
            std::cerr << "warning: seeded dealing is reproducible; use only for tests\n";
        Rng rng(deal_seed.value_or(entropy_seed()));
        const std::vector<Dealing> dealings = deal_string(spec, secret_bits, rng);
        fs::create_directories(outdir);
        for (std::size_t b = 0; b < dealings.size(); ++b) {
            const std::string prefix =
                dealings.size() == 1 ? "" : "bit" + std::to_string(b) + ".";
            for (const Share& s : dealings[b].member_shares) {
                std::ofstream out(fs::path(outdir) /
                                  (prefix + "P" + std::to_string(s.position) + ".shares"));
                save_member_file(dealings[b], s.position, out);
            }
            std::ofstream out(fs::path(outdir) / (prefix + "public.shares"));
            save_public_file(dealings[b], out);
        }
        std::cout << "wrote " << dealings.size() << " dealing(s) to " << outdir << "\n";
        return 0;
    }

    if (rec->parsed()) {
        const CodeSpec spec = load_code_file(rec_code);
        const AccessMode mode = parse_mode(rec_mode);
        std::vector<std::vector<std::string>> groups;
        if (!rec_files.empty()) groups.push_back(rec_files);
        for (const std::string& g : rec_groups) {
            std::vector<std::string> files;
            std::stringstream ss(g);
            std::string item;
            while (std::getline(ss, item, ',')) files.push_back(item);
            groups.push_back(files);
        }
        if (groups.empty())
            throw CLI::ValidationError("reconstruct", "no share files given");
        std::string secret;
        for (const auto& files : groups) {
            std::vector<ParsedShares> parsed;
            for (const std::string& f : files) parsed.push_back(load_shares_file(f));
            const std::vector<Share> shares = merge_shares(spec, parsed);
            secret += char('0' + reconstruct(spec, spec.p, shares, mode));
        }
        std::cout << secret << "\n";
        return 0;
    }

    if (sim->parsed()) {
        const CodeSpec spec = load_code_file(sim_code);
        SimOptions opt;
        opt.trials = sim_trials;
        opt.seed = sim_seed;
        opt.workers = sim_workers;
        opt.mode = parse_mode(sim_mode);
        std::vector<Coalition> coalitions;
        for (const std::string& c : sim_coalitions) coalitions.push_back(Coalition::parse(c));
        const SimReport report = simulate(spec, coalitions, opt);
        write_text(sim_out, report.to_csv());
        return 0;
    }

    if (audit->parsed()) {
        const CodeSpec spec = load_code_file(audit_code);
        const AccessMode mode = parse_mode(audit_mode);
        const Coalition coalition =
            audit_coalition.empty() ? Coalition{} : Coalition::parse(audit_coalition);
        const AuditSummary a = security_audit(spec, spec.p, coalition, mode);
        std::cout << "coalition = " << coalition.label() << "\n"
                  << "mode = " << mode_name(mode) << "\n"
                  << "assignments = " << a.assignments << "\n"
                  << "count_s0 = " << a.count0_min << ".." << a.count0_max << "\n"
                  << "count_s1 = " << a.count1_min << ".." << a.count1_max << "\n"
                  << "verdict = "
                  << (a.balanced ? "balanced" : a.determined ? "determined" : "mixed")
                  << "\n";
        return 0;
    }

    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const CLI::Error&) {
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
