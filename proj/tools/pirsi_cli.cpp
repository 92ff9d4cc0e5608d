// Command-line front end: database generation, server daemon, client fetch,
// privacy audits, converse bounds, and transcript rate reports.
//
// Every command prints machine-parsable key=value lines first, then a short
// human-readable table. Failures exit nonzero with a single-line reason.
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "pirsi/audit.hpp"
#include "pirsi/bounds.hpp"
#include "pirsi/client.hpp"
#include "pirsi/multiserver.hpp"

using namespace pirsi;

namespace {

constexpr const char* kListenEnv = "PIRSI_LISTEN";
constexpr const char* kDefaultListen = "127.0.0.1:7700";

std::string rat(const Rational& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

std::string join_set(const IndexSet& s) {
    std::ostringstream os;
    for (size_t i = 0; i < s.size(); ++i) {
        if (i) os << ',';
        os << s[i];
    }
    return os.str();
}

IndexSet parse_set(const std::string& text) {
    IndexSet out;
    std::istringstream is(text);
    std::string tok;
    while (std::getline(is, tok, ','))
        if (!tok.empty()) out.push_back(std::stoi(tok));
    std::sort(out.begin(), out.end());
    return out;
}

// key=value config file; flags win over file entries.
std::map<std::string, std::string> read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParameterError("cannot open config file " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw ParameterError("config line without '=': " + line);
        kv[line.substr(0, eq)] = line.substr(eq + 1);
    }
    return kv;
}

int cmd_gen_db(unsigned K, unsigned t, uint64_t seed, const std::string& path) {
    Rng rng(seed);
    Database db = random_database(K, t, rng);
    save_database(db, path);
    auto bytes = serialize_database(db);
    std::cout << "k=" << K << "\nt=" << t << "\nseed=" << seed << "\npath=" << path
              << "\nbytes=" << bytes.size() << "\n\n";
    std::cout << "wrote " << K << " messages of " << t << " bits to " << path << " ("
              << bytes.size() << " bytes)\n";
    return 0;
}

int cmd_serve(std::string db_path, std::string listen, const std::string& config_path) {
    if (!config_path.empty()) {
        auto kv = read_config(config_path);
        if (db_path.empty() && kv.count("db")) db_path = kv["db"];
        if (listen.empty() && kv.count("listen")) listen = kv["listen"];
    }
    if (listen.empty()) {
        const char* env = std::getenv(kListenEnv);
        listen = env ? env : kDefaultListen;
    }
    if (db_path.empty()) throw ParameterError("serve: no database path (--db or config db=)");
    Database db = load_database(db_path);
    unsigned dk = db.K, dt = db.t;
    auto [host, port] = net::parse_addr(listen);
    net::TcpServer server(std::move(db), host, port);
    std::cout << "listen=" << host << ":" << server.port() << "\nk=" << dk << "\nt=" << dt
              << "\n\n";
    std::cout << "serving " << db_path << " on " << host << ":" << server.port() << std::endl;
    server.run();
    return 0;
}

int cmd_fetch(const std::string& scheme_name, const std::vector<std::string>& servers,
              unsigned M, int W, const std::string& s_text, bool sample, uint64_t seed,
              const std::string& db_path, const std::vector<std::string>& side_texts,
              const std::string& out_path) {
    client::Scheme scheme = client::scheme_from_string(scheme_name);
    if (servers.empty()) throw ParameterError("fetch: need at least one --server");

    std::vector<std::unique_ptr<net::TcpChannel>> owned;
    std::vector<net::Channel*> channels;
    for (const auto& addr : servers) {
        auto [host, port] = net::parse_addr(addr);
        owned.push_back(std::make_unique<net::TcpChannel>(host, port));
        channels.push_back(owned.back().get());
    }

    // Learn (K, t) from the first server instead of demanding more flags.
    wire::Frame hello = channels[0]->roundtrip({wire::HELLO, {}});
    if (hello.msg_type != wire::ANSWER) throw ProtocolError("fetch: server rejected hello");
    unsigned K = 0, t = 0;
    wire::decode_hello_answer(hello.payload, K, t);

    Rng seed_rng(seed);
    IndexSet S;
    if (sample) {
        DemandSpec d = sample_demand(K, M, seed_rng);
        W = d.W;
        S = d.S;
    } else {
        S = parse_set(s_text);
    }
    DemandSpec demand{W, S};
    demand.validate(K);
    if (demand.M() != M) throw ParameterError("fetch: |S| != M");

    std::map<int, BitVec> side_values;
    if (!db_path.empty()) {
        Database local = load_database(db_path);
        if (local.K != K || local.t != t)
            throw ParameterError("fetch: --db does not match the server database");
        for (int j : S) side_values[j] = local.messages[j - 1];
    }
    for (const auto& entry : side_texts) {
        auto eq = entry.find('=');
        if (eq == std::string::npos) throw ParameterError("--side expects index=hex");
        int j = std::stoi(entry.substr(0, eq));
        side_values[j] = client::hex_decode(entry.substr(eq + 1));
    }

    client::SessionConfig cfg{scheme, {static_cast<unsigned>(channels.size()), K, M, t},
                              seed_rng.below(UINT64_MAX)};
    auto res = client::fetch(cfg, W, S, side_values, channels);

    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) throw ParameterError("cannot write transcript to " + out_path);
        out << res.transcript.to_json() << "\n";
    }

    std::cout << "scheme=" << scheme_name << "\nk=" << K << "\nm=" << M << "\nn="
              << channels.size() << "\nt=" << t << "\nw=" << W << "\ns=" << join_set(S)
              << "\ndownloaded_bits=" << res.rate.total_answer_bits << "\nuploaded_bits="
              << res.transcript.uploaded_bits << "\nrate=" << rat(res.rate.rate)
              << "\nmessage=" << client::hex_encode(res.message) << "\n\n";
    std::cout << "fetched X_" << W << " (" << t << " bits) via " << scheme_name << " from "
              << channels.size() << " server(s): " << res.rate.total_answer_bits
              << " answer bits, rate " << rat(res.rate.rate) << "\n";
    return 0;
}

int cmd_audit(const std::string& scheme_name, unsigned K, unsigned M, bool statistical,
              size_t samples, uint64_t seed) {
    if (statistical) {
        // Sampling check over the per-server query shapes of the
        // multi-server scheme; hypotheses are the possible demand positions.
        if (scheme_name != "multiserver")
            throw ParameterError("audit --statistical supports only the multiserver scheme");
        if (K % (M + 1) != 0) throw ParameterError("audit: (M+1) must divide K");
        unsigned g = K / (M + 1);
        if (g < 2) throw ParameterError("audit: need at least two super-messages");
        Rng rng(seed);
        audit::TranscriptSampler sampler = [g](size_t h, Rng& r) {
            auto tr = sj::build_queries(2, g, static_cast<unsigned>(h) + 1, r);
            return sj::canonical_server_shape(tr.per_server_atoms[0]);
        };
        auto report = audit::audit_statistical(sampler, g, samples, rng);
        std::cout << "scheme=" << scheme_name << "\nk=" << K << "\nm=" << M
                  << "\nsamples=" << samples << "\nmax_total_variation="
                  << report.max_total_variation << "\nchi_square_p=" << report.chi_square_p
                  << "\ncategories=" << report.categories << "\nlow_sample_warning="
                  << (report.low_sample_warning ? 1 : 0) << "\n\n";
        std::cout << "statistical audit over " << g << " hypotheses, " << samples
                  << " samples each: max TV " << report.max_total_variation
                  << ", chi-square p " << report.chi_square_p << "\n";
        return report.chi_square_p < 0.001 ? 1 : 0;
    }

    audit::QueryEnumerator scheme;
    if (scheme_name == "partition") {
        scheme = [K](int W, const IndexSet& S) {
            return partition::enumerate_queries(DemandSpec{W, S}, K);
        };
    } else if (scheme_name == "mds") {
        scheme = [M](int, const IndexSet&) {
            return audit::QueryDistribution{{"M=" + std::to_string(M), Rational(1)}};
        };
    } else {
        throw ParameterError("audit: exact enumeration supports partition and mds");
    }
    auto prior = audit::standard_prior(K, M);
    auto w_report = audit::audit_w(scheme, K, M, prior);
    auto ws_report = audit::audit_ws(scheme, K, M, prior);
    std::cout << "scheme=" << scheme_name << "\nk=" << K << "\nm=" << M
              << "\nmax_deviation=" << rat(w_report.max_posterior_deviation)
              << "\nmax_deviation_ws=" << rat(ws_report.max_posterior_deviation)
              << "\nqueries=" << w_report.rows.size() / K << "\n\n";
    std::cout << "query        hypothesis   posterior   prior\n";
    size_t shown = 0;
    for (const auto& row : w_report.rows) {
        if (shown++ >= 8) break;
        std::cout << row.query << "  " << row.hypothesis << "  " << rat(row.posterior) << "  "
                  << rat(row.prior) << "\n";
    }
    std::cout << "max |posterior - prior|: W-level " << rat(w_report.max_posterior_deviation)
              << ", (W,S)-level " << rat(ws_report.max_posterior_deviation) << "\n";
    return 0;
}

int cmd_bounds(unsigned K, unsigned M, unsigned N) {
    std::cout << "k=" << K << "\nm=" << M << "\ncapacity_w=" << rat(bounds::capacity_w(K, M))
              << "\ncapacity_ws=" << rat(bounds::capacity_ws(K, M))
              << "\nlinear_code_min_rows=" << bounds::lemma5_lower_bound(K, M) << "\n";
    bool have_ms = N >= 1 && K % (M + 1) == 0;
    if (have_ms)
        std::cout << "n=" << N << "\nmultiserver_rate_lb=" << rat(bounds::multiserver_rate_lb(N, K, M))
                  << "\n";
    std::cout << "\n";
    std::cout << "K=" << K << " M=" << M << ": single-server capacity " << rat(bounds::capacity_w(K, M))
              << " (demand privacy), " << rat(bounds::capacity_ws(K, M))
              << " (demand and side-info privacy)\n";
    if (have_ms)
        std::cout << "N=" << N << " servers: achievable rate at least "
                  << rat(bounds::multiserver_rate_lb(N, K, M)) << "\n";
    return 0;
}

int cmd_rate_report(const std::string& transcript_path) {
    std::ifstream in(transcript_path);
    if (!in) throw ParameterError("cannot open transcript " + transcript_path);
    std::stringstream buf;
    buf << in.rdbuf();
    auto tr = client::Transcript::from_json(buf.str());
    Rational rate = Rational(tr.t) / Rational(tr.answer_bits);
    std::cout << "scheme=" << tr.scheme << "\nk=" << tr.K << "\nm=" << tr.M << "\nn=" << tr.N
              << "\nt=" << tr.t << "\nw=" << tr.W << "\ns=" << join_set(tr.S)
              << "\ndownloaded_bits=" << tr.answer_bits << "\nuploaded_bits=" << tr.uploaded_bits
              << "\nrate=" << rat(rate) << "\n\n";
    std::cout << tr.scheme << " fetch of X_" << tr.W << ": " << tr.answer_bits
              << " answer bits for a " << tr.t << "-bit message, rate " << rat(rate) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"private retrieval with side information: schemes, audits, bounds"};
    app.require_subcommand(1);

    unsigned K = 0, M = 0, N = 0, t = 0;
    uint64_t seed = 0;
    std::string path, listen, config, scheme, s_text, db_path, out_path, transcript_path;
    std::vector<std::string> servers, side_texts;
    int W = 0;
    bool sample = false, statistical = false;
    size_t samples = 10000;

    auto* gen = app.add_subcommand("gen-db", "generate a random database file");
    gen->add_option("--k", K, "number of messages")->required();
    gen->add_option("--t", t, "bits per message")->required();
    gen->add_option("--seed", seed, "rng seed");
    gen->add_option("--out", path, "output path")->required();

    auto* serve = app.add_subcommand("serve", "run a server daemon");
    serve->add_option("--db", db_path, "PIRDB1 database file");
    serve->add_option("--listen", listen, "host:port (default $PIRSI_LISTEN or 127.0.0.1:7700)");
    serve->add_option("--config", config, "key=value config file (db=, listen=)");

    auto* fetch = app.add_subcommand("fetch", "retrieve one message privately");
    fetch->add_option("--scheme", scheme, "partition | mds | multiserver")->required();
    fetch->add_option("--server", servers, "server address host:port (repeat for N servers)")
        ->required();
    fetch->add_option("--m", M, "side information size")->required();
    fetch->add_option("--w", W, "demand index");
    fetch->add_option("--s", s_text, "side information indices, comma separated");
    fetch->add_flag("--sample", sample, "sample (W, S) from the prior instead");
    fetch->add_option("--seed", seed, "rng seed");
    fetch->add_option("--db", db_path, "local copy of the database to read X_S from");
    fetch->add_option("--side", side_texts, "side value as index=hex (repeatable)");
    fetch->add_option("--out", out_path, "write the transcript JSON here");

    auto* audit_cmd = app.add_subcommand("audit", "run a privacy audit");
    audit_cmd->add_option("--scheme", scheme, "partition | mds | multiserver")->required();
    audit_cmd->add_option("--k", K, "number of messages")->required();
    audit_cmd->add_option("--m", M, "side information size")->required();
    audit_cmd->add_flag("--statistical", statistical, "sampling audit over query shapes");
    audit_cmd->add_option("--samples", samples, "samples per hypothesis");
    audit_cmd->add_option("--seed", seed, "rng seed");

    auto* bounds_cmd = app.add_subcommand("bounds", "print capacity values and converse bounds");
    bounds_cmd->add_option("--k", K, "number of messages")->required();
    bounds_cmd->add_option("--m", M, "side information size")->required();
    bounds_cmd->add_option("--n", N, "number of servers");

    auto* report = app.add_subcommand("rate-report", "summarize a fetch transcript");
    report->add_option("--transcript", transcript_path, "transcript JSON file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) return cmd_gen_db(K, t, seed, path);
        if (serve->parsed()) return cmd_serve(db_path, listen, config);
        if (fetch->parsed())
            return cmd_fetch(scheme, servers, M, W, s_text, sample, seed, db_path, side_texts,
                             out_path);
        if (audit_cmd->parsed()) return cmd_audit(scheme, K, M, statistical, samples, seed);
        if (bounds_cmd->parsed()) return cmd_bounds(K, M, N);
        if (report->parsed()) return cmd_rate_report(transcript_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
