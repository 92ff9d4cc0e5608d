#include "pirsi/mds.hpp"

#include <algorithm>

namespace pirsi::mds {

MdsCodeSpec make_code(unsigned K, unsigned M, const gf::FieldSpec& field) {
    if (K < 1 || M >= K) throw ParameterError("mds: need 0 <= M < K");
    unsigned n = 2 * K - M;
    if (field.order() < n) throw ParameterError("mds: field too small, need 2^t >= 2K-M");
    MdsCodeSpec code{K, M, field, {}};
    // x_i = i-1, y_j = (K-M) + j-1; disjoint, so x_i + y_j != 0.
    code.parity.assign(K - M, std::vector<uint32_t>(K));
    for (unsigned i = 0; i < K - M; ++i)
        for (unsigned j = 0; j < K; ++j)
            code.parity[i][j] = field.inv(i ^ (K - M + j));
    return code;
}

std::vector<uint32_t> message_to_elems(const BitVec& msg, unsigned t, const gf::FieldSpec& field) {
    unsigned n = (t + field.t - 1) / field.t;
    std::vector<uint32_t> elems(n, 0);
    for (unsigned b = 1; b <= t; ++b) {
        unsigned e = (b - 1) / field.t;
        elems[e] = (elems[e] << 1) | (bitvec_get(msg, b) ? 1u : 0u);
    }
    return elems;
}

BitVec elems_to_message(const std::vector<uint32_t>& elems, unsigned t, const gf::FieldSpec& field) {
    BitVec msg(bitvec_bytes(t), 0);
    for (unsigned b = 1; b <= t; ++b) {
        unsigned e = (b - 1) / field.t;
        unsigned last = std::min(t, (e + 1) * field.t);  // final bit held by element e
        unsigned shift = last - b;
        bitvec_set(msg, b, (elems[e] >> shift) & 1);
    }
    return msg;
}

MdsAnswer server_answer(const Database& db, const MdsQuery& q) {
    db.validate();
    if (q.M >= db.K) throw ProtocolError("mds query: M >= K");
    if (db.t > 16) throw ParameterError("mds: t > 16 unsupported");
    gf::FieldSpec field(db.t);
    MdsCodeSpec code = make_code(db.K, q.M, field);

    std::vector<std::vector<uint32_t>> msg_elems;
    msg_elems.reserve(db.K);
    for (const auto& m : db.messages) msg_elems.push_back(message_to_elems(m, db.t, field));
    size_t width = msg_elems[0].size();

    MdsAnswer ans;
    ans.parities.assign(db.K - q.M, std::vector<uint32_t>(width, 0));
    for (unsigned i = 0; i < db.K - q.M; ++i)
        for (unsigned j = 0; j < db.K; ++j)
            for (size_t e = 0; e < width; ++e)
                ans.parities[i][e] ^= field.mul(code.parity[i][j], msg_elems[j][e]);
    return ans;
}

namespace {

// Solve A x = b over the field; A is square and must be invertible.
std::vector<uint32_t> solve(std::vector<std::vector<uint32_t>> a, std::vector<uint32_t> b,
                            const gf::FieldSpec& field) {
    size_t n = a.size();
    for (size_t col = 0; col < n; ++col) {
        size_t pivot = col;
        while (pivot < n && a[pivot][col] == 0) ++pivot;
        if (pivot == n) throw std::logic_error("mds: singular system, MDS invariant broken");
        std::swap(a[col], a[pivot]);
        std::swap(b[col], b[pivot]);
        uint32_t inv = field.inv(a[col][col]);
        for (size_t j = col; j < n; ++j) a[col][j] = field.mul(a[col][j], inv);
        b[col] = field.mul(b[col], inv);
        for (size_t row = 0; row < n; ++row) {
            if (row == col || a[row][col] == 0) continue;
            uint32_t f = a[row][col];
            for (size_t j = col; j < n; ++j) a[row][j] ^= field.mul(f, a[col][j]);
            b[row] ^= field.mul(f, b[col]);
        }
    }
    return b;
}

}  // namespace

std::map<int, BitVec> decode(const MdsAnswer& ans, const MdsCodeSpec& code, const IndexSet& S,
                             const std::map<int, BitVec>& side_values, unsigned t) {
    if (S.size() != code.M) throw ParameterError("mds decode: |S| != M");
    if (ans.parities.size() != code.K - code.M)
        throw ProtocolError("mds decode: wrong parity count");
    const gf::FieldSpec& field = code.field;

    IndexSet unknowns;
    for (int j = 1; j <= static_cast<int>(code.K); ++j)
        if (!std::binary_search(S.begin(), S.end(), j)) unknowns.push_back(j);

    std::map<int, std::vector<uint32_t>> side_elems;
    for (int j : S) {
        auto it = side_values.find(j);
        if (it == side_values.end()) throw ParameterError("mds decode: missing side value");
        side_elems[j] = message_to_elems(it->second, t, field);
    }
    size_t width = ans.parities[0].size();

    // Move known columns to the right-hand side, solve the square system.
    std::vector<std::vector<uint32_t>> a(unknowns.size(), std::vector<uint32_t>(unknowns.size()));
    for (size_t i = 0; i < unknowns.size(); ++i)
        for (size_t u = 0; u < unknowns.size(); ++u)
            a[i][u] = code.parity[i][unknowns[u] - 1];

    std::map<int, std::vector<uint32_t>> decoded_elems;
    for (int j : unknowns) decoded_elems[j] = std::vector<uint32_t>(width);
    for (size_t e = 0; e < width; ++e) {
        std::vector<uint32_t> b(unknowns.size());
        for (size_t i = 0; i < unknowns.size(); ++i) {
            uint32_t rhs = ans.parities[i][e];
            for (int j : S) rhs ^= field.mul(code.parity[i][j - 1], side_elems[j][e]);
            b[i] = rhs;
        }
        auto x = solve(a, b, field);
        for (size_t u = 0; u < unknowns.size(); ++u) decoded_elems[unknowns[u]][e] = x[u];
    }

    std::map<int, BitVec> out;
    for (int j : unknowns) out[j] = elems_to_message(decoded_elems[j], t, field);
    return out;
}

uint64_t answer_bits(unsigned K, unsigned M, unsigned t) {
    gf::FieldSpec field(t);
    unsigned width = (t + field.t - 1) / field.t;
    return static_cast<uint64_t>(K - M) * width * field.t;
}

}  // namespace pirsi::mds
