#pragma once

#include <map>

#include "pirsi/core.hpp"
#include "pirsi/gf.hpp"

namespace pirsi::mds {

// Systematic (2K-M, K) MDS code; parity is the (K-M) x K Cauchy block
// P_ij = (x_i + y_j)^-1 with x_1..x_{K-M}, y_1..y_K the first 2K-M field
// elements in numeric order.
struct MdsCodeSpec {
    unsigned K = 0;
    unsigned M = 0;
    gf::FieldSpec field;
    std::vector<std::vector<uint32_t>> parity;  // (K-M) rows of K coefficients

    unsigned code_length() const { return 2 * K - M; }
};

// The query reveals only the side-information size.
struct MdsQuery {
    unsigned M = 0;
};

// One parity symbol per row; each symbol is a vector of field elements
// covering the message bits.
struct MdsAnswer {
    std::vector<std::vector<uint32_t>> parities;
};

MdsCodeSpec make_code(unsigned K, unsigned M, const gf::FieldSpec& field);

// Message bits split big-endian into ceil(t / field.t) elements, the last
// one left-aligned is not used; we right-align with zero padding in front.
std::vector<uint32_t> message_to_elems(const BitVec& msg, unsigned t, const gf::FieldSpec& field);
BitVec elems_to_message(const std::vector<uint32_t>& elems, unsigned t, const gf::FieldSpec& field);

MdsAnswer server_answer(const Database& db, const MdsQuery& q);

// Recovers every message outside S; in particular X_W for any W not in S.
std::map<int, BitVec> decode(const MdsAnswer& ans, const MdsCodeSpec& code, const IndexSet& S,
                             const std::map<int, BitVec>& side_values, unsigned t);

// Answer length in bits, for rate accounting.
uint64_t answer_bits(unsigned K, unsigned M, unsigned t);

}  // namespace pirsi::mds
