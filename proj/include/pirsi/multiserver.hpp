#pragma once

#include "pirsi/sunjafar.hpp"

namespace pirsi::ms {

// Partition into (M+1)-sized super-messages, then Sun-Jafar over them. The
// shuffled partition order is shared with every server; theta is the position
// of the W-part in that order.
struct SuperMessageQuery {
    std::vector<IndexSet> partition;  // transmitted order
    sj::SjTranscript sj;              // decode context included
};

SuperMessageQuery build(const DemandSpec& demand, const ProblemParams& params, Rng& rng,
                        bool deterministic = false);

// Elementwise XOR of member messages per part, identical at user and servers.
std::vector<BitVec> form_supermessages(const Database& db,
                                       const std::vector<IndexSet>& partition);

BitVec decode(const std::vector<std::vector<uint8_t>>& sj_answers, const SuperMessageQuery& ctx,
              const DemandSpec& demand, const std::map<int, BitVec>& side_values);

}  // namespace pirsi::ms
