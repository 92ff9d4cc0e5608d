#pragma once

#include <map>

#include "pirsi/core.hpp"

namespace pirsi::sj {

// A reference to one bit: message index in [g], slot = actual bit position
// in [L]. Slots reach the wire already routed through the per-message
// private permutation, so servers only ever see raw positions.
struct SymbolRef {
    unsigned message = 0;
    unsigned slot = 0;

    friend auto operator<=>(const SymbolRef&, const SymbolRef&) = default;
};

// One downloaded bit: XOR of refs, at most one ref per message.
struct QueryAtom {
    unsigned id = 0;
    std::vector<SymbolRef> refs;  // sorted by message index
};

struct DownloadCost {
    uint64_t total_symbols = 0;
    Rational rate;
};

struct SjTranscript {
    unsigned N = 0;
    unsigned g = 0;
    unsigned theta = 0;
    uint64_t L = 0;  // N^g bits per message
    std::vector<std::vector<QueryAtom>> per_server_atoms;  // transmitted order
    // New-atom id -> id of the atom at another server whose answered value
    // must be XOR-subtracted to expose the fresh theta bit.
    std::map<unsigned, unsigned> exploit_map;
    std::vector<std::vector<unsigned>> permutations;  // per message, [L] shuffled
};

// Round-based construction: round-1 singletons, then per round exploitation
// of the other servers' theta-free atoms plus (N-1)^(k-1) symmetry atoms per
// theta-free k-subset. deterministic=true fixes identity permutations and
// transmission order (test hook).
SjTranscript build_queries(unsigned N, unsigned g, unsigned theta, Rng& rng,
                           bool deterministic = false);

// One answer bit per atom, in atom-list order.
std::vector<uint8_t> server_answer(const std::vector<BitVec>& supermessages,
                                   const std::vector<QueryAtom>& atoms);

// Recovers all L bits of message theta.
BitVec decode(const SjTranscript& transcript, const std::vector<std::vector<uint8_t>>& answers);

DownloadCost download_cost(unsigned N, unsigned g);

// Observable query shape at one server: slots rank-normalized per message in
// order of appearance. Equal across theta in distribution iff private.
std::string canonical_server_shape(const std::vector<QueryAtom>& atoms);

}  // namespace pirsi::sj
