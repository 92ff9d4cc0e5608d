#include <sstream>

#include "doctest.h"
#include "pirsi/bounds.hpp"
#include "pirsi/mds.hpp"

using namespace pirsi;
using namespace pirsi::bounds;

namespace {

// The induced subgraph on `z` must be acyclic: DFS cycle detection.
bool induced_acyclic(const SideInfoGraph& g, const IndexSet& z) {
    std::vector<int> color(g.K + 1, 0);  // 0 out-of-set/white, 1 grey, 2 black
    std::vector<bool> in_z(g.K + 1, false);
    for (int v : z) in_z[v] = true;
    auto dfs = [&](auto&& self, int v) -> bool {
        color[v] = 1;
        for (int u : g.out_neighbors[v - 1]) {
            if (!in_z[u]) continue;
            if (color[u] == 1) return false;
            if (color[u] == 0 && !self(self, u)) return false;
        }
        color[v] = 2;
        return true;
    };
    for (int v : z)
        if (color[v] == 0 && !dfs(dfs, v)) return false;
    return true;
}

SideInfoGraph circulant(unsigned K, unsigned M) {
    SideInfoGraph g;
    g.K = K;
    g.out_neighbors.assign(K, {});
    for (unsigned i = 1; i <= K; ++i)
        for (unsigned d = 1; d <= M; ++d)
            g.out_neighbors[i - 1].push_back(static_cast<int>((i - 1 + d) % K + 1));
    for (auto& n : g.out_neighbors) std::sort(n.begin(), n.end());
    return g;
}

SideInfoGraph random_regular(unsigned K, unsigned M, Rng& rng) {
    SideInfoGraph g;
    g.K = K;
    g.out_neighbors.assign(K, {});
    for (unsigned i = 1; i <= K; ++i) {
        std::vector<int> others;
        for (unsigned j = 1; j <= K; ++j)
            if (j != i) others.push_back(static_cast<int>(j));
        g.out_neighbors[i - 1] = rng.sample(others, M);
        std::sort(g.out_neighbors[i - 1].begin(), g.out_neighbors[i - 1].end());
    }
    return g;
}

}  // namespace

TEST_CASE("capacity closed forms") {
    CHECK(capacity_w(3, 1) == Rational(1, 2));
    CHECK(capacity_w(4, 1) == Rational(1, 2));
    CHECK(capacity_w(8, 2) == Rational(1, 3));
    CHECK(capacity_w(5, 3) == Rational(1, 2));
    CHECK(capacity_w(4, 0) == Rational(1, 4));
    CHECK(capacity_ws(4, 1) == Rational(1, 3));
    CHECK(capacity_ws(8, 2) == Rational(1, 6));
    CHECK_THROWS_AS(capacity_w(4, 4), ParameterError);
    CHECK_THROWS_AS(capacity_ws(4, 5), ParameterError);
}

TEST_CASE("multi-server rate lower bound") {
    CHECK(multiserver_rate_lb(2, 4, 1) == Rational(2, 3));
    CHECK(multiserver_rate_lb(2, 6, 1) == Rational(4, 7));
    CHECK(multiserver_rate_lb(3, 9, 2) == Rational(9, 13));
    CHECK(multiserver_rate_lb(2, 4, 3) == Rational(1));
    // Converges to the single-demand capacity as N grows.
    CHECK(multiserver_rate_lb(1000000, 4, 1) > Rational(999999, 1000000));
    CHECK_THROWS_AS(multiserver_rate_lb(2, 5, 1), ParameterError);
}

TEST_CASE("greedy acyclic sets on reference graphs") {
    Rng rng(60);
    SideInfoGraph edgeless;
    edgeless.K = 5;
    edgeless.out_neighbors.assign(5, {});
    CHECK(mais_greedy(edgeless, rng) == IndexSet{1, 2, 3, 4, 5});

    SideInfoGraph complete;
    complete.K = 4;
    complete.out_neighbors.assign(4, {});
    for (int i = 1; i <= 4; ++i)
        for (int j = 1; j <= 4; ++j)
            if (i != j) complete.out_neighbors[i - 1].push_back(j);
    for (int rep = 0; rep < 20; ++rep) CHECK(mais_greedy(complete, rng).size() == 1);

    auto circ = circulant(8, 2);
    CHECK(mais_greedy(circ, rng, /*lowest_index=*/true) == IndexSet{1, 4, 7});
    for (int rep = 0; rep < 100; ++rep) {
        auto z = mais_greedy(circ, rng);
        CHECK(z.size() >= 3);
        CHECK(induced_acyclic(circ, z));
    }
}

TEST_CASE("greedy output is acyclic and large enough on random M-out-regular graphs") {
    Rng rng(61);
    for (int rep = 0; rep < 1000; ++rep) {
        unsigned K = 2 + static_cast<unsigned>(rng.below(11));  // up to 12
        unsigned M = static_cast<unsigned>(rng.below(std::min(K - 1, 3u) + 1));
        auto g = random_regular(K, M, rng);
        auto z = mais_greedy(g, rng);
        CHECK(induced_acyclic(g, z));
        CHECK(z.size() * (M + 1) >= K);  // |Z| >= ceil(K/(M+1))
    }
}

TEST_CASE("linear index code verification: single parity over GF(2)") {
    gf::FieldSpec f1(1);
    LinearEncoding sum{{{1, 1}}};
    IndexCodingInstance inst;
    inst.K = 2;
    inst.clients = {{1, {2}}, {2, {1}}};
    CHECK(verify_linear_index_code(sum, inst, f1));
    inst.clients.push_back({1, {}});
    CHECK_FALSE(verify_linear_index_code(sum, inst, f1));
    CHECK_THROWS_AS(verify_linear_index_code(LinearEncoding{}, inst, f1), ParameterError);
}

TEST_CASE("partition indicator rows decode the induced instance") {
    DemandSpec d{2, {4, 6}};
    std::vector<IndexSet> parts = {{1, 7, 8}, {3, 4, 5}, {2, 6}};
    auto inst = instance_from_partition(parts, 8, 2, d);
    REQUIRE(inst.clients.size() == 8);
    for (auto& c : inst.clients) CHECK(c.side.size() == 2);
    CHECK(inst.clients[1].side == IndexSet{4, 6});  // the demanding client keeps S

    gf::FieldSpec f1(1);
    LinearEncoding enc;
    for (auto& p : parts) {
        std::vector<uint32_t> row(8, 0);
        for (int j : p) row[j - 1] = 1;
        enc.rows.push_back(std::move(row));
    }
    CHECK(verify_linear_index_code(enc, inst, f1));
    enc.rows.pop_back();
    CHECK_FALSE(verify_linear_index_code(enc, inst, f1));
}

TEST_CASE("MDS parity rows decode the all-clients instance") {
    for (unsigned K = 3; K <= 6; ++K)
        for (unsigned M = 1; M < K; ++M) {
            unsigned t = 1;
            while ((1u << t) < 2 * K - M) ++t;
            gf::FieldSpec field(t);
            auto code = mds::make_code(K, M, field);
            auto inst = instance_all_clients(K, M);
            LinearEncoding enc{code.parity};
            CHECK(verify_linear_index_code(enc, inst, field));
            CHECK(enc.rows.size() == lemma5_lower_bound(K, M));
            if (enc.rows.size() > 1) {
                enc.rows.pop_back();
                CHECK_FALSE(verify_linear_index_code(enc, inst, field));
            }
        }
}

TEST_CASE("no single GF(4) row serves every client at K=3 M=1") {
    gf::FieldSpec f4(2);  // GF(4)
    auto inst = instance_all_clients(3, 1);
    REQUIRE(inst.clients.size() == 6);
    for (uint32_t a = 0; a < 4; ++a)
        for (uint32_t b = 0; b < 4; ++b)
            for (uint32_t c = 0; c < 4; ++c)
                CHECK_FALSE(verify_linear_index_code(LinearEncoding{{{a, b, c}}}, inst, f4));
    CHECK(lemma5_lower_bound(3, 1) == 2);
}

TEST_CASE("graph text format round trip") {
    std::istringstream in("# comment\n1: 2 3\n2: 3\n3:\n");
    auto g = parse_graph(in);
    CHECK(g.K == 3);
    CHECK(g.out_neighbors[0] == IndexSet{2, 3});
    CHECK(g.out_neighbors[2].empty());

    std::istringstream self_loop("1: 1\n");
    CHECK_THROWS_AS(parse_graph(self_loop), ParameterError);
    std::istringstream bad("1 2 3\n");
    CHECK_THROWS_AS(parse_graph(bad), ParameterError);
}
