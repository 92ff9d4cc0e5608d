#include "pirsi/bounds.hpp"

#include <algorithm>
#include <istream>
#include <sstream>

namespace pirsi::bounds {

void SideInfoGraph::validate() const {
    if (out_neighbors.size() != K) throw ParameterError("graph: neighbor list count != K");
    for (unsigned i = 1; i <= K; ++i) {
        for (int j : out_neighbors[i - 1]) {
            if (j < 1 || j > static_cast<int>(K)) throw ParameterError("graph: index out of range");
            if (j == static_cast<int>(i)) throw ParameterError("graph: self-loop");
        }
    }
}

Rational capacity_w(unsigned K, unsigned M) {
    if (M >= K) throw ParameterError("capacity_w: need M < K");
    unsigned g = (K + M) / (M + 1);
    return Rational(1) / Rational(g);
}

Rational capacity_ws(unsigned K, unsigned M) {
    if (M >= K) throw ParameterError("capacity_ws: need M < K");
    return Rational(1) / Rational(K - M);
}

Rational multiserver_rate_lb(unsigned N, unsigned K, unsigned M) {
    if (M >= K) throw ParameterError("multiserver_rate_lb: need M < K");
    if (K % (M + 1) != 0) throw ParameterError("multiserver_rate_lb: (M+1) must divide K");
    if (N < 1) throw ParameterError("multiserver_rate_lb: need N >= 1");
    unsigned g = K / (M + 1);
    Rational sum = 0;
    Rational term = 1;
    for (unsigned i = 0; i < g; ++i) {
        sum += term;
        term /= N;
    }
    return Rational(1) / sum;
}

IndexSet mais_greedy(const SideInfoGraph& g, Rng& rng, bool lowest_index) {
    g.validate();
    std::vector<int> candidates;
    for (unsigned i = 1; i <= g.K; ++i) candidates.push_back(static_cast<int>(i));
    IndexSet z;
    while (!candidates.empty()) {
        size_t pick = lowest_index ? 0 : static_cast<size_t>(rng.below(candidates.size()));
        int i = candidates[pick];
        z.push_back(i);
        const IndexSet& nbrs = g.out_neighbors[i - 1];
        std::erase_if(candidates, [&](int v) {
            return v == i || std::binary_search(nbrs.begin(), nbrs.end(), v);
        });
    }
    std::sort(z.begin(), z.end());
    return z;
}

namespace {

// Row-reduce in place; returns rank. Rows are length-K coefficient vectors.
unsigned rank_of(std::vector<std::vector<uint32_t>>& rows, const gf::FieldSpec& field) {
    unsigned K = rows.empty() ? 0 : static_cast<unsigned>(rows[0].size());
    unsigned r = 0;
    for (unsigned col = 0; col < K && r < rows.size(); ++col) {
        size_t pivot = r;
        while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[r], rows[pivot]);
        uint32_t inv = field.inv(rows[r][col]);
        for (unsigned j = col; j < K; ++j) rows[r][j] = field.mul(rows[r][j], inv);
        for (size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][col] == 0) continue;
            uint32_t f = rows[i][col];
            for (unsigned j = col; j < K; ++j) rows[i][j] ^= field.mul(f, rows[r][j]);
        }
        ++r;
    }
    return r;
}

}  // namespace

bool verify_linear_index_code(const LinearEncoding& enc, const IndexCodingInstance& inst,
                              const gf::FieldSpec& field) {
    if (enc.rows.empty()) throw ParameterError("index code: no rows");
    for (const auto& row : enc.rows)
        if (row.size() != inst.K) throw ParameterError("index code: row length != K");

    for (const auto& client : inst.clients) {
        std::vector<std::vector<uint32_t>> basis = enc.rows;
        for (int j : client.side) {
            std::vector<uint32_t> unit(inst.K, 0);
            unit[j - 1] = 1;
            basis.push_back(std::move(unit));
        }
        unsigned base_rank = rank_of(basis, field);
        std::vector<uint32_t> want(inst.K, 0);
        want[client.demand - 1] = 1;
        basis.push_back(std::move(want));
        if (rank_of(basis, field) != base_rank) return false;
    }
    return true;
}

unsigned lemma5_lower_bound(unsigned K, unsigned M) {
    if (M >= K) throw ParameterError("lemma5_lower_bound: need M < K");
    return K - M;
}

IndexCodingInstance instance_from_partition(const std::vector<IndexSet>& parts, unsigned K,
                                            unsigned M, const DemandSpec& demand) {
    IndexCodingInstance inst;
    inst.K = K;
    for (int i = 1; i <= static_cast<int>(K); ++i) {
        IndexCodingClient client;
        client.demand = i;
        if (i == demand.W) {
            client.side = demand.S;
        } else {
            for (const auto& p : parts)
                if (std::binary_search(p.begin(), p.end(), i)) {
                    for (int j : p)
                        if (j != i) client.side.push_back(j);
                    break;
                }
            // Pad to M with the lowest indices not yet used.
            for (int j = 1; client.side.size() < M && j <= static_cast<int>(K); ++j) {
                if (j == i) continue;
                if (std::find(client.side.begin(), client.side.end(), j) != client.side.end())
                    continue;
                client.side.push_back(j);
            }
            std::sort(client.side.begin(), client.side.end());
        }
        inst.clients.push_back(std::move(client));
    }
    return inst;
}

IndexCodingInstance instance_all_clients(unsigned K, unsigned M) {
    IndexCodingInstance inst;
    inst.K = K;
    std::vector<int> all(K);
    for (unsigned j = 0; j < K; ++j) all[j] = static_cast<int>(j + 1);
    for (int i = 1; i <= static_cast<int>(K); ++i) {
        std::vector<int> others;
        for (int j : all)
            if (j != i) others.push_back(j);
        // All M-subsets of [K] \ {i}.
        std::vector<int> sel(M);
        auto rec = [&](auto&& self, size_t start, size_t depth) -> void {
            if (depth == M) {
                inst.clients.push_back(IndexCodingClient{i, IndexSet(sel.begin(), sel.end())});
                return;
            }
            for (size_t p = start; p + (M - depth) <= others.size(); ++p) {
                sel[depth] = others[p];
                self(self, p + 1, depth + 1);
            }
        };
        rec(rec, 0, 0);
    }
    return inst;
}

SideInfoGraph parse_graph(std::istream& in) {
    SideInfoGraph g;
    std::vector<std::pair<int, IndexSet>> lines;
    std::string line;
    int max_vertex = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto colon = line.find(':');
        if (colon == std::string::npos) throw ParameterError("graph: missing ':' in line");
        int v = std::stoi(line.substr(0, colon));
        IndexSet nbrs;
        std::istringstream rest(line.substr(colon + 1));
        int j;
        while (rest >> j) nbrs.push_back(j);
        std::sort(nbrs.begin(), nbrs.end());
        max_vertex = std::max({max_vertex, v});
        for (int n : nbrs) max_vertex = std::max(max_vertex, n);
        lines.emplace_back(v, std::move(nbrs));
    }
    g.K = static_cast<unsigned>(max_vertex);
    g.out_neighbors.assign(g.K, {});
    for (auto& [v, nbrs] : lines) {
        if (v < 1) throw ParameterError("graph: vertex must be >= 1");
        g.out_neighbors[v - 1] = std::move(nbrs);
    }
    g.validate();
    return g;
}

}  // namespace pirsi::bounds
