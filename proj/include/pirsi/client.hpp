#pragma once

#include "pirsi/netio.hpp"

namespace pirsi::client {

enum class Scheme { Partition, Mds, MultiServer };

Scheme scheme_from_string(const std::string& name);
std::string scheme_to_string(Scheme s);

struct SessionConfig {
    Scheme scheme = Scheme::Partition;
    ProblemParams params;
    uint64_t seed = 0;
};

// Replayable record of one fetch: raw frames both ways plus the traffic
// accounting the rate report is derived from.
struct Transcript {
    std::string scheme;
    unsigned N = 0, K = 0, M = 0, t = 0;
    uint64_t seed = 0;
    int W = 0;
    IndexSet S;
    std::vector<std::string> query_frames_hex;   // one per server
    std::vector<std::string> answer_frames_hex;  // one per server
    uint64_t uploaded_bits = 0;
    uint64_t answer_bits = 0;  // logical answer symbols, excludes framing
    std::string decoded_hex;

    std::string to_json() const;
    static Transcript from_json(const std::string& text);
};

struct FetchResult {
    BitVec message;
    RateReport rate;
    Transcript transcript;
};

std::string hex_encode(const std::vector<uint8_t>& bytes);
std::vector<uint8_t> hex_decode(const std::string& hex);

// Runs the configured scheme end to end against one channel per server.
FetchResult fetch(const SessionConfig& cfg, int W, const IndexSet& S,
                  const std::map<int, BitVec>& side_values,
                  const std::vector<net::Channel*>& channels);

}  // namespace pirsi::client
