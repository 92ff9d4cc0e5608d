#include <sstream>

#include "doctest.h"
#include "pirsi/audit.hpp"
#include "pirsi/partition.hpp"
#include "pirsi/sunjafar.hpp"

using namespace pirsi;
using namespace pirsi::audit;

namespace {

QueryEnumerator partition_enumerator(unsigned K) {
    return [K](int W, const IndexSet& S) {
        return partition::enumerate_queries(DemandSpec{W, S}, K);
    };
}

QueryEnumerator partition_enumerator_unshuffled(unsigned K) {
    return [K](int W, const IndexSet& S) {
        return partition::enumerate_queries_unshuffled(DemandSpec{W, S}, K);
    };
}

// The side-set-size query of the MDS scheme carries no hypothesis dependence.
QueryEnumerator mds_enumerator(unsigned M) {
    return [M](int, const IndexSet&) {
        return QueryDistribution{{"M=" + std::to_string(M), Rational(1)}};
    };
}

std::vector<IndexSet> parse_parts(const std::string& key) {
    std::vector<IndexSet> parts;
    std::istringstream os(key);
    std::string part;
    while (std::getline(os, part, '|')) {
        IndexSet p;
        std::istringstream ps(part);
        std::string idx;
        while (std::getline(ps, idx, ',')) p.push_back(std::stoi(idx));
        parts.push_back(std::move(p));
    }
    return parts;
}

}  // namespace

TEST_CASE("priors are well-formed") {
    auto std_prior = standard_prior(4, 1);
    Rational total = 0;
    for (auto& h : std_prior) {
        CHECK(h.p == Rational(1, 12));
        total += h.p;
    }
    CHECK(total == Rational(1));

    Rng rng(70);
    auto rnd = random_prior(4, 1, rng);
    total = 0;
    for (auto& h : rnd) {
        CHECK(h.p > 0);
        total += h.p;
    }
    CHECK(total == Rational(1));
    CHECK(rnd.size() == std_prior.size());
}

TEST_CASE("partition queries reveal nothing about W under the uniform prior") {
    for (unsigned K = 3; K <= 6; ++K)
        for (unsigned M = 1; M <= 2 && M < K; ++M) {
            auto report = audit_w(partition_enumerator(K), K, M, standard_prior(K, M));
            CHECK(report.max_posterior_deviation == Rational(0));
        }
}

TEST_CASE("posterior of W stays at the prior for each individual query") {
    auto report = audit_w(partition_enumerator(3), 3, 1, standard_prior(3, 1));
    bool seen = false;
    for (auto& row : report.rows)
        if (row.query == "1,2|3" && row.hypothesis == "W=1") {
            CHECK(row.posterior == Rational(1, 3));
            CHECK(row.prior == Rational(1, 3));
            seen = true;
        }
    CHECK(seen);
}

TEST_CASE("the three-part example query leaves every demand index at 1/8") {
    auto report = audit_w(partition_enumerator(8), 8, 2, standard_prior(8, 2));
    CHECK(report.max_posterior_deviation == Rational(0));
    bool seen = false;
    for (auto& row : report.rows)
        if (row.query == "1,7,8|2,6|3,4,5" && row.hypothesis == "W=2") {
            CHECK(row.posterior == Rational(1, 8));
            seen = true;
        }
    CHECK(seen);
}

TEST_CASE("MDS-style constant queries hide (W, S) under arbitrary priors") {
    for (unsigned K = 3; K <= 5; ++K)
        for (unsigned M = 1; M <= 2 && M < K; ++M) {
            auto report = audit_ws(mds_enumerator(M), K, M, standard_prior(K, M));
            CHECK(report.max_posterior_deviation == Rational(0));
            Rng rng(100 + K * 10 + M);
            for (int i = 0; i < 5; ++i) {
                auto rp = random_prior(K, M, rng);
                CHECK(audit_ws(mds_enumerator(M), K, M, rp).max_posterior_deviation ==
                      Rational(0));
            }
        }
}

TEST_CASE("negative control: partition queries leak the joint hypothesis") {
    auto report = audit_ws(partition_enumerator(4), 4, 1, standard_prior(4, 1));
    CHECK(report.max_posterior_deviation > Rational(0));
}

TEST_CASE("negative control: skipping the shuffle leaks W") {
    auto report = audit_w(partition_enumerator_unshuffled(4), 4, 1, standard_prior(4, 1));
    CHECK(report.max_posterior_deviation > Rational(0));
    // The leading part narrows W from four options to two: 1/2 - 1/4.
    CHECK(report.max_posterior_deviation == Rational(1, 4));
}

TEST_CASE("transcript-level privacy follows from query-level privacy on a toy joint model") {
    // K=3, M=1, t=1: enumerate (hypothesis, query, database) exhaustively and
    // check the posterior of W given the server's whole view (query, answer,
    // all message values) equals the prior. Uses the shuffled scheme as
    // positive case and the unshuffled one as negative.
    const unsigned K = 3;
    auto run = [&](const QueryEnumerator& scheme) {
        std::map<std::string, std::map<int, Rational>> joint;  // view -> w -> mass
        std::map<std::string, Rational> marginal;
        for (auto& hyp : standard_prior(K, 1)) {
            auto dist = scheme(hyp.W, hyp.S);
            for (auto& [qkey, qp] : dist) {
                auto parts = parse_parts(qkey);
                for (unsigned db = 0; db < 8; ++db) {  // X_1 X_2 X_3, one bit each
                    auto bit = [&](int j) { return (db >> (j - 1)) & 1u; };
                    std::ostringstream view;
                    view << qkey << ";a=";
                    for (auto& part : parts) {
                        unsigned a = 0;
                        for (int j : part) a ^= bit(j);
                        view << a;
                    }
                    view << ";db=" << db;  // the server stores every message
                    Rational mass = hyp.p * qp / 8;
                    joint[view.str()][hyp.W] += mass;
                    marginal[view.str()] += mass;
                }
            }
        }
        Rational max_dev = 0;
        for (auto& [view, by_w] : joint)
            for (auto& [w, mass] : by_w) {
                Rational dev = mass / marginal[view] - Rational(1, 3);
                if (dev < 0) dev = -dev;
                if (dev > max_dev) max_dev = dev;
            }
        return max_dev;
    };
    CHECK(run(partition_enumerator(K)) == Rational(0));
    CHECK(run(partition_enumerator_unshuffled(K)) > Rational(0));
}

TEST_CASE("statistical audit: identical samplers are indistinguishable") {
    Rng rng(71);
    TranscriptSampler fair = [](size_t, Rng& r) {
        return std::string(1, static_cast<char>('a' + r.below(4)));
    };
    auto report = audit_statistical(fair, 3, 5000, rng);
    CHECK(report.max_total_variation < 0.05);
    CHECK(report.chi_square_p > 0.001);
    CHECK(report.categories == 4);
    CHECK_FALSE(report.low_sample_warning);
}

TEST_CASE("statistical audit: a hypothesis-dependent sampler is flagged") {
    Rng rng(72);
    TranscriptSampler leaky = [](size_t h, Rng& r) {
        return std::to_string(h) + std::string(1, static_cast<char>('a' + r.below(2)));
    };
    auto report = audit_statistical(leaky, 2, 2000, rng);
    CHECK(report.max_total_variation == 1.0);
    CHECK(report.chi_square_p < 1e-6);

    auto tiny = audit_statistical(leaky, 2, 10, rng);
    CHECK(tiny.low_sample_warning);
}

TEST_CASE("statistical audit accepts the multi-server query shapes across demands") {
    Rng build_rng(73);
    TranscriptSampler shapes = [&](size_t h, Rng& r) {
        auto tr = sj::build_queries(2, 2, static_cast<unsigned>(h) + 1, r);
        return sj::canonical_server_shape(tr.per_server_atoms[0]);
    };
    auto report = audit_statistical(shapes, 2, 3000, build_rng);
    CHECK(report.max_total_variation < 0.05);
    CHECK(report.chi_square_p > 0.001);

    // Without the private slot permutations the raw positions leak theta.
    TranscriptSampler raw_slots = [&](size_t h, Rng& r) {
        auto tr = sj::build_queries(2, 2, static_cast<unsigned>(h) + 1, r, /*deterministic=*/true);
        std::ostringstream os;
        for (auto& atom : tr.per_server_atoms[0]) {
            os << '[';
            for (auto& ref : atom.refs) os << ref.message << '.' << ref.slot << ' ';
            os << ']';
        }
        return os.str();
    };
    auto leak = audit_statistical(raw_slots, 2, 2000, build_rng);
    CHECK(leak.max_total_variation == 1.0);
    CHECK(leak.chi_square_p < 1e-6);
}
