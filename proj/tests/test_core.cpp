#include <map>
#include <sstream>

#include "doctest.h"
#include "pirsi/core.hpp"

using namespace pirsi;

namespace {

std::vector<std::pair<int, IndexSet>> all_hypotheses(unsigned K, unsigned M) {
    std::vector<std::pair<int, IndexSet>> out;
    for (int w = 1; w <= static_cast<int>(K); ++w) {
        std::vector<int> others;
        for (int j = 1; j <= static_cast<int>(K); ++j)
            if (j != w) others.push_back(j);
        std::vector<int> sel;
        auto rec = [&](auto&& self, size_t start) -> void {
            if (sel.size() == M) {
                out.emplace_back(w, IndexSet(sel.begin(), sel.end()));
                return;
            }
            for (size_t i = start; i < others.size(); ++i) {
                sel.push_back(others[i]);
                self(self, i + 1);
                sel.pop_back();
            }
        };
        rec(rec, 0);
    }
    return out;
}

}  // namespace

TEST_CASE("joint_prior matches the closed form and sums to 1") {
    CHECK(joint_prior(1, {2}, 4, 1) == Rational(1, 12));
    CHECK(joint_prior(1, {1, 2}, 4, 2) == Rational(0));
    for (unsigned K = 2; K <= 6; ++K) CHECK(joint_prior(1, {}, K, 0) == Rational(1, K));
    CHECK_THROWS_AS(joint_prior(1, {2}, 4, 2), ParameterError);

    for (unsigned K = 1; K <= 8; ++K)
        for (unsigned M = 0; M < K; ++M) {
            Rational sum = 0;
            for (auto& [w, s] : all_hypotheses(K, M)) sum += joint_prior(w, s, K, M);
            CHECK(sum == Rational(1));
        }
}

TEST_CASE("sample_demand degenerate cases") {
    Rng rng(1);
    for (int i = 0; i < 50; ++i) {
        auto d0 = sample_demand(4, 0, rng);
        CHECK(d0.S.empty());
        auto d3 = sample_demand(4, 3, rng);
        IndexSet expect;
        for (int j = 1; j <= 4; ++j)
            if (j != d3.W) expect.push_back(j);
        CHECK(d3.S == expect);  // unique complement
    }
    CHECK_THROWS_AS(sample_demand(4, 4, rng), ParameterError);
}

TEST_CASE("sample_demand frequencies match the joint prior") {
    // Chi-square against the exact prior at 1e5 samples, K <= 6.
    for (auto [K, M] : std::vector<std::pair<unsigned, unsigned>>{{4, 1}, {5, 2}, {6, 1}}) {
        Rng rng(42 + K);
        const int samples = 100000;
        std::map<std::pair<int, IndexSet>, int> counts;
        for (int i = 0; i < samples; ++i) {
            auto d = sample_demand(K, M, rng);
            ++counts[{d.W, d.S}];
        }
        auto hyps = all_hypotheses(K, M);
        double chi2 = 0;
        for (auto& h : hyps) {
            double expected =
                static_cast<double>(samples) /
                static_cast<double>(hyps.size());
            double observed = counts.count(h) ? counts[h] : 0;
            chi2 += (observed - expected) * (observed - expected) / expected;
        }
        // dof = hyps-1; 99th percentile of chi2 with dof <= 59 is < 90.
        CHECK(chi2 < 90.0);
        CHECK(counts.size() == hyps.size());
    }
}

TEST_CASE("rate_of") {
    auto r = rate_of(4, {3, 3});
    CHECK(r.rate == Rational(2, 3));
    CHECK(r.total_answer_bits == 6);
    CHECK(rate_of(8, {8}).rate == Rational(1));
    CHECK(rate_of(4, {4, 4, 4}).rate == Rational(1, 3));
    CHECK_THROWS_AS(rate_of(4, {}), ParameterError);
    CHECK_THROWS_AS(rate_of(4, {3, 0}), ParameterError);
}

TEST_CASE("database round-trips through the PIRDB1 format") {
    Rng rng(9);
    Database db = random_database(5, 12, rng);
    auto bytes = serialize_database(db);
    CHECK(bytes[0] == 'P');
    CHECK(bytes[5] == '1');
    CHECK(bytes.size() == 12 + 5 * 2);
    Database back = deserialize_database(bytes);
    CHECK(back.K == db.K);
    CHECK(back.t == db.t);
    CHECK(back.messages == db.messages);

    bytes[0] = 'X';
    CHECK_THROWS_AS(deserialize_database(bytes), ProtocolError);
}

TEST_CASE("bitvec helpers use big-endian packing, high bits first") {
    BitVec v(2, 0);
    bitvec_set(v, 1, true);
    bitvec_set(v, 9, true);
    CHECK(v[0] == 0x80);
    CHECK(v[1] == 0x80);
    CHECK(bitvec_get(v, 1));
    CHECK_FALSE(bitvec_get(v, 2));
    BitVec w(2, 0xFF);
    bitvec_xor(v, w);
    CHECK(v[0] == 0x7F);
}

TEST_CASE("demand validation") {
    DemandSpec ok{2, {1, 3}};
    CHECK_NOTHROW(ok.validate(4));
    CHECK_THROWS_AS((DemandSpec{2, {2}}.validate(4)), ParameterError);
    CHECK_THROWS_AS((DemandSpec{5, {}}.validate(4)), ParameterError);
    CHECK_THROWS_AS((DemandSpec{1, {2, 3, 4}}.validate(3)), ParameterError);
}
