#pragma once

#include <map>
#include <string>

#include "pirsi/core.hpp"

namespace pirsi::partition {

// Parts in internal label order P_1..P_g; the label of the part holding the
// demand is a sampling device and never reaches the wire.
struct Partition {
    std::vector<IndexSet> parts;

    unsigned g() const { return static_cast<unsigned>(parts.size()); }
    int part_of(int index) const;  // -1 if absent
    void validate(unsigned K, const DemandSpec& demand) const;
};

// Characteristic vectors in transmitted (shuffled) order.
struct PartitionQuery {
    std::vector<IndexSet> parts;
};

struct PartitionAnswer {
    std::vector<BitVec> sums;  // one t-bit XOR per part, in query order
};

// Step 1, general case: pick a labeled set by size-weighted probability, fill
// it from {W} u S, then distribute the rest uniformly.
Partition build_partition(const DemandSpec& demand, unsigned K, Rng& rng);

// Step 2: fresh uniform random part order.
PartitionQuery encode_query(const Partition& p, Rng& rng);

// Step 3: XOR of the messages indexed by each part.
PartitionAnswer server_answer(const Database& db, const PartitionQuery& q);

BitVec decode(const PartitionAnswer& ans, const PartitionQuery& q, const DemandSpec& demand,
              const std::map<int, BitVec>& side_values);

// Canonical key: parts sorted internally ascending, then parts ordered
// lexicographically. With ordered=true the transmitted order is kept.
std::string canonical_partition(const std::vector<IndexSet>& parts, bool ordered = false);

using QueryDistribution = std::map<std::string, Rational>;

// Exact distribution of the unordered partition under the scheme for one
// (W, S); probabilities sum to 1.
QueryDistribution enumerate_queries(const DemandSpec& demand, unsigned K);

// Leaky regression fixture: the W-part is always transmitted first and the
// audit key keeps the order. Fails the W-privacy audit by construction.
QueryDistribution enumerate_queries_unshuffled(const DemandSpec& demand, unsigned K);
PartitionQuery encode_query_unshuffled(const Partition& p, const DemandSpec& demand);

}  // namespace pirsi::partition
