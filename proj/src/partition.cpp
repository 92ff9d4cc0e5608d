#include "pirsi/partition.hpp"

#include <algorithm>
#include <sstream>

namespace pirsi::partition {

namespace {

// Part sizes in label order: M+1 for P_1..P_{g-1}, K-(g-1)(M+1) for P_g.
std::vector<unsigned> part_sizes(unsigned K, unsigned M) {
    unsigned g = (K + M) / (M + 1);
    std::vector<unsigned> sizes(g, M + 1);
    sizes[g - 1] = K - (g - 1) * (M + 1);
    return sizes;
}

std::vector<IndexSet> k_subsets(const IndexSet& v, unsigned k) {
    std::vector<IndexSet> out;
    IndexSet cur;
    auto rec = [&](auto&& self, size_t start) -> void {
        if (cur.size() == k) {
            out.push_back(cur);
            return;
        }
        for (size_t i = start; i + (k - cur.size()) <= v.size(); ++i) {
            cur.push_back(v[i]);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

}  // namespace

int Partition::part_of(int index) const {
    for (size_t i = 0; i < parts.size(); ++i)
        if (std::binary_search(parts[i].begin(), parts[i].end(), index))
            return static_cast<int>(i);
    return -1;
}

void Partition::validate(unsigned K, const DemandSpec& demand) const {
    std::vector<bool> seen(K + 1, false);
    size_t total = 0;
    for (const auto& p : parts) {
        for (int j : p) {
            if (j < 1 || j > static_cast<int>(K) || seen[j])
                throw ProtocolError("partition: not a disjoint cover");
            seen[j] = true;
        }
        total += p.size();
    }
    if (total != K) throw ProtocolError("partition: not a cover of [K]");
    int wp = part_of(demand.W);
    if (wp < 0) throw ProtocolError("partition: no part contains W");
    for (int j : parts[wp])
        if (j != demand.W && !std::binary_search(demand.S.begin(), demand.S.end(), j))
            throw ProtocolError("partition: W-part escapes {W} u S");
}

Partition build_partition(const DemandSpec& demand, unsigned K, Rng& rng) {
    demand.validate(K);
    unsigned M = demand.M();
    auto sizes = part_sizes(K, M);
    unsigned g = static_cast<unsigned>(sizes.size());

    // Size-weighted label pick: u in [0,K) lands in P_{u/(M+1)+1}, giving
    // probability (M+1)/K to each full set and sizes[g-1]/K to P_g.
    unsigned chosen = std::min<unsigned>(static_cast<unsigned>(rng.below(K)) / (M + 1), g - 1);

    Partition part;
    part.parts.assign(g, {});
    if (chosen == g - 1) {
        IndexSet fill = rng.sample(demand.S, sizes[g - 1] - 1);
        fill.push_back(demand.W);
        part.parts[g - 1] = fill;
    } else {
        part.parts[chosen] = demand.S;
        part.parts[chosen].push_back(demand.W);
    }

    IndexSet placed = part.parts[chosen];
    std::sort(placed.begin(), placed.end());
    IndexSet rest;
    for (int j = 1; j <= static_cast<int>(K); ++j)
        if (!std::binary_search(placed.begin(), placed.end(), j)) rest.push_back(j);
    rng.shuffle(rest);

    size_t pos = 0;
    for (unsigned i = 0; i < g; ++i) {
        if (i == chosen) continue;
        part.parts[i].assign(rest.begin() + pos, rest.begin() + pos + sizes[i]);
        pos += sizes[i];
    }
    for (auto& p : part.parts) std::sort(p.begin(), p.end());
    part.validate(K, demand);
    return part;
}

PartitionQuery encode_query(const Partition& p, Rng& rng) {
    PartitionQuery q{p.parts};
    rng.shuffle(q.parts);
    return q;
}

PartitionQuery encode_query_unshuffled(const Partition& p, const DemandSpec& demand) {
    PartitionQuery q;
    Partition copy = p;
    int wp = copy.part_of(demand.W);
    if (wp < 0) throw ProtocolError("partition: no part contains W");
    q.parts.push_back(copy.parts[wp]);
    std::vector<IndexSet> tail;
    for (size_t i = 0; i < copy.parts.size(); ++i)
        if (static_cast<int>(i) != wp) tail.push_back(copy.parts[i]);
    std::sort(tail.begin(), tail.end());
    q.parts.insert(q.parts.end(), tail.begin(), tail.end());
    return q;
}

PartitionAnswer server_answer(const Database& db, const PartitionQuery& q) {
    db.validate();
    PartitionAnswer ans;
    for (const auto& part : q.parts) {
        BitVec sum(bitvec_bytes(db.t), 0);
        for (int j : part) {
            if (j < 1 || j > static_cast<int>(db.K))
                throw ProtocolError("partition query: index out of range");
            bitvec_xor(sum, db.messages[j - 1]);
        }
        ans.sums.push_back(std::move(sum));
    }
    return ans;
}

BitVec decode(const PartitionAnswer& ans, const PartitionQuery& q, const DemandSpec& demand,
              const std::map<int, BitVec>& side_values) {
    if (ans.sums.size() != q.parts.size()) throw DecodeError("partition: answer/query size mismatch");
    for (size_t i = 0; i < q.parts.size(); ++i) {
        const auto& part = q.parts[i];
        if (!std::binary_search(part.begin(), part.end(), demand.W)) continue;
        BitVec result = ans.sums[i];
        for (int j : part) {
            if (j == demand.W) continue;
            auto it = side_values.find(j);
            if (it == side_values.end()) throw DecodeError("partition: missing side value");
            bitvec_xor(result, it->second);
        }
        return result;
    }
    throw DecodeError("partition: no part contains W");
}

std::string canonical_partition(const std::vector<IndexSet>& parts, bool ordered) {
    std::vector<IndexSet> sorted = parts;
    for (auto& p : sorted) std::sort(p.begin(), p.end());
    if (!ordered) std::sort(sorted.begin(), sorted.end());
    std::ostringstream os;
    for (size_t i = 0; i < sorted.size(); ++i) {
        if (i) os << '|';
        for (size_t j = 0; j < sorted[i].size(); ++j) {
            if (j) os << ',';
            os << sorted[i][j];
        }
    }
    return os.str();
}

namespace {

// Enumerate all labeled fillings of `rest` into the unfilled parts, each
// weighted by the shuffle-and-cut probability, and accumulate the canonical
// key of the completed partition.
void fill_rec(const std::vector<unsigned>& sizes, unsigned chosen, size_t label,
              std::vector<IndexSet>& parts, IndexSet rest, const Rational& weight,
              bool ordered_w_first, QueryDistribution& out) {
    if (label == sizes.size()) {
        std::vector<IndexSet> emit = parts;
        if (ordered_w_first) {
            std::swap(emit[0], emit[chosen]);  // W-part first, rest label order
            std::vector<IndexSet> tail(emit.begin() + 1, emit.end());
            std::sort(tail.begin(), tail.end());
            std::copy(tail.begin(), tail.end(), emit.begin() + 1);
        }
        out[canonical_partition(emit, ordered_w_first)] += weight;
        return;
    }
    if (label == chosen) {
        fill_rec(sizes, chosen, label + 1, parts, std::move(rest), weight, ordered_w_first, out);
        return;
    }
    unsigned s = sizes[label];
    Rational step = weight / Rational(binomial(static_cast<unsigned>(rest.size()), s));
    for (auto& subset : k_subsets(rest, s)) {
        parts[label] = subset;
        IndexSet next;
        std::set_difference(rest.begin(), rest.end(), subset.begin(), subset.end(),
                            std::back_inserter(next));
        fill_rec(sizes, chosen, label + 1, parts, std::move(next), step, ordered_w_first, out);
    }
}

QueryDistribution enumerate_impl(const DemandSpec& demand, unsigned K, bool ordered_w_first) {
    if (K > 10) throw CapacityError("enumerate_queries: K > 10 not enumerable");
    demand.validate(K);
    unsigned M = demand.M();
    auto sizes = part_sizes(K, M);
    unsigned g = static_cast<unsigned>(sizes.size());

    QueryDistribution dist;
    for (unsigned chosen = 0; chosen < g; ++chosen) {
        Rational label_p = Rational(sizes[chosen]) / Rational(K);
        std::vector<IndexSet> w_part_choices;
        if (chosen == g - 1) {
            // W plus a uniform (size-1)-subset of S.
            for (auto& sub : k_subsets(demand.S, sizes[g - 1] - 1)) {
                IndexSet p = sub;
                p.push_back(demand.W);
                std::sort(p.begin(), p.end());
                w_part_choices.push_back(p);
            }
        } else {
            IndexSet p = demand.S;
            p.push_back(demand.W);
            std::sort(p.begin(), p.end());
            w_part_choices.push_back(p);
        }
        Rational branch_p = label_p / Rational(w_part_choices.size());
        for (const auto& wp : w_part_choices) {
            std::vector<IndexSet> parts(g);
            parts[chosen] = wp;
            IndexSet rest;
            for (int j = 1; j <= static_cast<int>(K); ++j)
                if (!std::binary_search(wp.begin(), wp.end(), j)) rest.push_back(j);
            fill_rec(sizes, chosen, 0, parts, rest, branch_p, ordered_w_first, dist);
        }
    }
    return dist;
}

}  // namespace

QueryDistribution enumerate_queries(const DemandSpec& demand, unsigned K) {
    return enumerate_impl(demand, K, false);
}

QueryDistribution enumerate_queries_unshuffled(const DemandSpec& demand, unsigned K) {
    return enumerate_impl(demand, K, true);
}

}  // namespace pirsi::partition
