#pragma once

#include <iosfwd>

#include "pirsi/core.hpp"
#include "pirsi/gf.hpp"

namespace pirsi::bounds {

struct SideInfoGraph {
    unsigned K = 0;
    std::vector<IndexSet> out_neighbors;  // 1-based vertex -> N(i)

    void validate() const;  // no self-loops, indices in range
};

struct IndexCodingClient {
    int demand = 0;
    IndexSet side;
};

struct IndexCodingInstance {
    unsigned K = 0;
    std::vector<IndexCodingClient> clients;
};

struct LinearEncoding {
    std::vector<std::vector<uint32_t>> rows;  // coefficient vectors of length K
};

Rational capacity_w(unsigned K, unsigned M);             // 1/ceil(K/(M+1))
Rational capacity_ws(unsigned K, unsigned M);            // 1/(K-M)
Rational multiserver_rate_lb(unsigned N, unsigned K, unsigned M);

// Greedy acyclic-set procedure: repeatedly pick a surviving vertex, drop it
// and its out-neighbors. For M-out-regular graphs |Z| >= ceil(K/(M+1)).
IndexSet mais_greedy(const SideInfoGraph& g, Rng& rng, bool lowest_index = false);

// True iff every client can decode: e_{f(i)} lies in the span of the code
// rows together with the client's side-information unit vectors.
bool verify_linear_index_code(const LinearEncoding& enc, const IndexCodingInstance& inst,
                              const gf::FieldSpec& field);

// Minimum rows of any feasible linear code for the all-clients instance.
unsigned lemma5_lower_bound(unsigned K, unsigned M);

// Instance with one client per message; non-demand clients get the side
// information implied by the scheme's own decodability (their part, padded
// to M with the lowest free indices).
IndexCodingInstance instance_from_partition(const std::vector<IndexSet>& parts, unsigned K,
                                            unsigned M, const DemandSpec& demand);

// The (K-M) C(K,M)-client instance: every (demand, side-set) combination.
IndexCodingInstance instance_all_clients(unsigned K, unsigned M);

// Text format: one line per vertex, "i: j1 j2 ...".
SideInfoGraph parse_graph(std::istream& in);

}  // namespace pirsi::bounds
