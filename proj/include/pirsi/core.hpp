#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pirsi/errors.hpp"
#include "pirsi/random.hpp"
#include "pirsi/rational.hpp"

namespace pirsi {

// Message indices are 1-based, matching [K]. An IndexSet is kept sorted.
using IndexSet = std::vector<int>;

// A t-bit message packed big-endian: bit 1 is the most significant bit of
// byte 0, the final byte is zero-padded.
using BitVec = std::vector<uint8_t>;

unsigned bitvec_bytes(unsigned t);
bool bitvec_get(const BitVec& v, unsigned bit);          // bit is 1-based
void bitvec_set(BitVec& v, unsigned bit, bool value);    // bit is 1-based
void bitvec_xor(BitVec& dst, const BitVec& src);

struct Database {
    unsigned K = 0;
    unsigned t = 0;
    std::vector<BitVec> messages;  // K entries of ceil(t/8) bytes

    void validate() const;
};

Database random_database(unsigned K, unsigned t, Rng& rng);

// File format: "PIRDB1", u16 BE K, u32 BE t, then K records of ceil(t/8) bytes.
std::vector<uint8_t> serialize_database(const Database& db);
Database deserialize_database(const std::vector<uint8_t>& bytes);
void save_database(const Database& db, const std::string& path);
Database load_database(const std::string& path);

struct DemandSpec {
    int W = 0;
    IndexSet S;

    unsigned M() const { return static_cast<unsigned>(S.size()); }
    void validate(unsigned K) const;  // W in [K], S subset of [K]\{W}
};

struct ProblemParams {
    unsigned N = 1;
    unsigned K = 0;
    unsigned M = 0;
    unsigned t = 0;
};

struct RateReport {
    unsigned message_bits = 0;
    uint64_t total_answer_bits = 0;
    Rational rate;
};

// W uniform on [K], S uniform over the (K-1 choose M)-subsets of [K]\{W}.
DemandSpec sample_demand(unsigned K, unsigned M, Rng& rng);

// P(W, S) = 1/((K-M) C(K,M)) when W not in S and |S| = M, else 0.
Rational joint_prior(int W, const IndexSet& S, unsigned K, unsigned M);

RateReport rate_of(unsigned t, const std::vector<uint64_t>& answer_bit_lengths);

}  // namespace pirsi
