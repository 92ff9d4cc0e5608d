#include "pirsi/client.hpp"

#include <future>

#include <nlohmann/json.hpp>

#include "pirsi/multiserver.hpp"

namespace pirsi::client {

using nlohmann::json;

Scheme scheme_from_string(const std::string& name) {
    if (name == "partition") return Scheme::Partition;
    if (name == "mds") return Scheme::Mds;
    if (name == "multiserver") return Scheme::MultiServer;
    throw ParameterError("unknown scheme: " + name);
}

std::string scheme_to_string(Scheme s) {
    switch (s) {
        case Scheme::Partition: return "partition";
        case Scheme::Mds: return "mds";
        case Scheme::MultiServer: return "multiserver";
    }
    throw ParameterError("bad scheme value");
}

std::string hex_encode(const std::vector<uint8_t>& bytes) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (uint8_t b : bytes) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 0xF]);
    }
    return out;
}

std::vector<uint8_t> hex_decode(const std::string& hex) {
    if (hex.size() % 2 != 0) throw ParameterError("hex string has odd length");
    auto nibble = [](char c) -> uint8_t {
        if (c >= '0' && c <= '9') return static_cast<uint8_t>(c - '0');
        if (c >= 'a' && c <= 'f') return static_cast<uint8_t>(c - 'a' + 10);
        if (c >= 'A' && c <= 'F') return static_cast<uint8_t>(c - 'A' + 10);
        throw ParameterError("bad hex digit");
    };
    std::vector<uint8_t> out(hex.size() / 2);
    for (size_t i = 0; i < out.size(); ++i)
        out[i] = static_cast<uint8_t>((nibble(hex[2 * i]) << 4) | nibble(hex[2 * i + 1]));
    return out;
}

std::string Transcript::to_json() const {
    json j{{"scheme", scheme}, {"N", N},       {"K", K},
           {"M", M},           {"t", t},       {"seed", seed},
           {"W", W},           {"S", S},       {"query_frames", query_frames_hex},
           {"answer_frames", answer_frames_hex}, {"uploaded_bits", uploaded_bits},
           {"answer_bits", answer_bits},       {"decoded", decoded_hex}};
    return j.dump(2);
}

Transcript Transcript::from_json(const std::string& text) {
    json j = json::parse(text);
    Transcript tr;
    tr.scheme = j.at("scheme").get<std::string>();
    tr.N = j.at("N").get<unsigned>();
    tr.K = j.at("K").get<unsigned>();
    tr.M = j.at("M").get<unsigned>();
    tr.t = j.at("t").get<unsigned>();
    tr.seed = j.at("seed").get<uint64_t>();
    tr.W = j.at("W").get<int>();
    tr.S = j.at("S").get<IndexSet>();
    tr.query_frames_hex = j.at("query_frames").get<std::vector<std::string>>();
    tr.answer_frames_hex = j.at("answer_frames").get<std::vector<std::string>>();
    tr.uploaded_bits = j.at("uploaded_bits").get<uint64_t>();
    tr.answer_bits = j.at("answer_bits").get<uint64_t>();
    tr.decoded_hex = j.at("decoded").get<std::string>();
    return tr;
}

namespace {

wire::Frame expect_answer(const wire::Frame& response) {
    if (response.msg_type == wire::ERROR) {
        auto [code, msg] = wire::decode_error(response.payload);
        throw ProtocolError("server error " + std::to_string(code) + ": " + msg);
    }
    if (response.msg_type != wire::ANSWER) throw ProtocolError("unexpected response type");
    return response;
}

void check_hello(net::Channel& ch, const ProblemParams& params) {
    wire::Frame resp = expect_answer(ch.roundtrip({wire::HELLO, {}}));
    unsigned K = 0, t = 0;
    wire::decode_hello_answer(resp.payload, K, t);
    if (K != params.K || t != params.t)
        throw ProtocolError("server database does not match session parameters");
}

}  // namespace

FetchResult fetch(const SessionConfig& cfg, int W, const IndexSet& S,
                  const std::map<int, BitVec>& side_values,
                  const std::vector<net::Channel*>& channels) {
    const ProblemParams& p = cfg.params;
    DemandSpec demand{W, S};
    demand.validate(p.K);
    if (demand.M() != p.M) throw ParameterError("fetch: |S| != M");

    FetchResult result;
    Transcript& tr = result.transcript;
    tr.scheme = scheme_to_string(cfg.scheme);
    tr.N = p.N;
    tr.K = p.K;
    tr.M = p.M;
    tr.t = p.t;
    tr.seed = cfg.seed;
    tr.W = W;
    tr.S = S;

    Rng rng(cfg.seed);
    std::vector<uint64_t> per_server_bits;

    switch (cfg.scheme) {
        case Scheme::Partition: {
            if (channels.size() != 1 || p.N != 1)
                throw ParameterError("partition scheme needs exactly one server");
            check_hello(*channels[0], p);
            auto part = partition::build_partition(demand, p.K, rng);
            auto query = partition::encode_query(part, rng);
            wire::Frame req{wire::PARTITION_QUERY, wire::encode_partition_query(query, p.K)};
            wire::Frame resp = expect_answer(channels[0]->roundtrip(req));
            auto ans = wire::decode_partition_answer(resp.payload, p.t);
            result.message = partition::decode(ans, query, demand, side_values);
            tr.query_frames_hex.push_back(hex_encode(wire::encode_frame(req)));
            tr.answer_frames_hex.push_back(hex_encode(wire::encode_frame(resp)));
            per_server_bits.push_back(static_cast<uint64_t>(ans.sums.size()) * p.t);
            break;
        }
        case Scheme::Mds: {
            if (channels.size() != 1 || p.N != 1)
                throw ParameterError("mds scheme needs exactly one server");
            check_hello(*channels[0], p);
            wire::Frame req{wire::MDS_QUERY, wire::encode_mds_query({p.M})};
            wire::Frame resp = expect_answer(channels[0]->roundtrip(req));
            auto ans = wire::decode_mds_answer(resp.payload, p.t);
            gf::FieldSpec field(p.t);
            auto code = mds::make_code(p.K, p.M, field);
            auto decoded = mds::decode(ans, code, S, side_values, p.t);
            result.message = decoded.at(W);
            tr.query_frames_hex.push_back(hex_encode(wire::encode_frame(req)));
            tr.answer_frames_hex.push_back(hex_encode(wire::encode_frame(resp)));
            per_server_bits.push_back(mds::answer_bits(p.K, p.M, p.t));
            break;
        }
        case Scheme::MultiServer: {
            if (channels.size() != p.N)
                throw ParameterError("multiserver scheme needs one channel per server");
            for (auto* ch : channels) check_hello(*ch, p);
            auto ctx = ms::build(demand, p, rng);
            std::vector<wire::Frame> requests;
            for (unsigned n = 0; n < p.N; ++n)
                requests.push_back({wire::SJ_QUERY,
                                    wire::encode_sj_query(ctx.partition,
                                                          ctx.sj.per_server_atoms[n], p.K)});
            // Concurrent fan-out, join before decode.
            std::vector<std::future<wire::Frame>> futures;
            for (unsigned n = 0; n < p.N; ++n)
                futures.push_back(std::async(std::launch::async, [&, n] {
                    return channels[n]->roundtrip(requests[n]);
                }));
            std::vector<std::vector<uint8_t>> answers;
            for (unsigned n = 0; n < p.N; ++n) {
                wire::Frame resp = expect_answer(futures[n].get());
                answers.push_back(wire::decode_sj_answer(resp.payload));
                tr.query_frames_hex.push_back(hex_encode(wire::encode_frame(requests[n])));
                tr.answer_frames_hex.push_back(hex_encode(wire::encode_frame(resp)));
                per_server_bits.push_back(answers.back().size());
            }
            result.message = ms::decode(answers, ctx, demand, side_values);
            break;
        }
    }

    for (const auto& q : tr.query_frames_hex) tr.uploaded_bits += 4 * q.size();
    result.rate = rate_of(p.t, per_server_bits);
    tr.answer_bits = result.rate.total_answer_bits;
    tr.decoded_hex = hex_encode(result.message);
    return result;
}

}  // namespace pirsi::client
