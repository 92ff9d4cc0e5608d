#include "pirsi/multiserver.hpp"

#include <algorithm>

namespace pirsi::ms {

namespace {

uint64_t ipow(uint64_t base, unsigned exp) {
    uint64_t r = 1;
    while (exp--) r *= base;
    return r;
}

}  // namespace

SuperMessageQuery build(const DemandSpec& demand, const ProblemParams& params, Rng& rng,
                        bool deterministic) {
    demand.validate(params.K);
    unsigned M = demand.M();
    if (M != params.M) throw ParameterError("multiserver: |S| != M");
    if (params.K % (M + 1) != 0) throw ParameterError("multiserver: (M+1) must divide K");
    if (params.N < 2) throw ParameterError("multiserver: N must be >= 2");
    unsigned g = params.K / (M + 1);
    if (params.t != ipow(params.N, g))
        throw ParameterError("multiserver: t must equal N^(K/(M+1))");

    Rng part_rng = rng.fork();
    Rng sj_rng = rng.fork();

    IndexSet w_part = demand.S;
    w_part.push_back(demand.W);
    std::sort(w_part.begin(), w_part.end());

    IndexSet rest;
    for (int j = 1; j <= static_cast<int>(params.K); ++j)
        if (!std::binary_search(w_part.begin(), w_part.end(), j)) rest.push_back(j);
    if (!deterministic) part_rng.shuffle(rest);

    SuperMessageQuery ctx;
    ctx.partition.push_back(w_part);
    for (unsigned i = 1; i < g; ++i) {
        IndexSet p(rest.begin() + (i - 1) * (M + 1), rest.begin() + i * (M + 1));
        std::sort(p.begin(), p.end());
        ctx.partition.push_back(std::move(p));
    }
    if (!deterministic) part_rng.shuffle(ctx.partition);

    unsigned theta = 0;
    for (unsigned i = 0; i < g; ++i)
        if (std::binary_search(ctx.partition[i].begin(), ctx.partition[i].end(), demand.W))
            theta = i + 1;
    ctx.sj = sj::build_queries(params.N, g, theta, sj_rng, deterministic);
    return ctx;
}

std::vector<BitVec> form_supermessages(const Database& db,
                                       const std::vector<IndexSet>& partition) {
    db.validate();
    std::vector<bool> seen(db.K + 1, false);
    size_t total = 0;
    for (const auto& p : partition) {
        for (int j : p) {
            if (j < 1 || j > static_cast<int>(db.K) || seen[j])
                throw ProtocolError("supermessages: partition is not a disjoint cover");
            seen[j] = true;
        }
        total += p.size();
    }
    if (total != db.K) throw ProtocolError("supermessages: partition does not cover [K]");

    std::vector<BitVec> out;
    for (const auto& p : partition) {
        BitVec sum(bitvec_bytes(db.t), 0);
        for (int j : p) bitvec_xor(sum, db.messages[j - 1]);
        out.push_back(std::move(sum));
    }
    return out;
}

BitVec decode(const std::vector<std::vector<uint8_t>>& sj_answers, const SuperMessageQuery& ctx,
              const DemandSpec& demand, const std::map<int, BitVec>& side_values) {
    BitVec super = sj::decode(ctx.sj, sj_answers);
    const IndexSet& w_part = ctx.partition[ctx.sj.theta - 1];
    for (int j : w_part) {
        if (j == demand.W) continue;
        auto it = side_values.find(j);
        if (it == side_values.end()) throw DecodeError("multiserver: missing side value");
        bitvec_xor(super, it->second);
    }
    return super;
}

}  // namespace pirsi::ms
