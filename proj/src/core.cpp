#include "pirsi/core.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>

namespace pirsi {

unsigned bitvec_bytes(unsigned t) { return (t + 7) / 8; }

bool bitvec_get(const BitVec& v, unsigned bit) {
    unsigned idx = bit - 1;
    return (v[idx / 8] >> (7 - idx % 8)) & 1;
}

void bitvec_set(BitVec& v, unsigned bit, bool value) {
    unsigned idx = bit - 1;
    uint8_t mask = static_cast<uint8_t>(1u << (7 - idx % 8));
    if (value)
        v[idx / 8] |= mask;
    else
        v[idx / 8] &= static_cast<uint8_t>(~mask);
}

void bitvec_xor(BitVec& dst, const BitVec& src) {
    if (dst.size() != src.size()) throw ProtocolError("bitvec_xor: length mismatch");
    for (size_t i = 0; i < dst.size(); ++i) dst[i] ^= src[i];
}

void Database::validate() const {
    if (K < 1) throw ParameterError("database: K must be >= 1");
    if (t < 1) throw ParameterError("database: t must be >= 1");
    if (messages.size() != K) throw ParameterError("database: message count != K");
    for (const auto& m : messages)
        if (m.size() != bitvec_bytes(t)) throw ParameterError("database: bad message length");
}

Database random_database(unsigned K, unsigned t, Rng& rng) {
    Database db;
    db.K = K;
    db.t = t;
    db.messages.resize(K);
    for (auto& m : db.messages) {
        m.assign(bitvec_bytes(t), 0);
        for (unsigned b = 1; b <= t; ++b) bitvec_set(m, b, rng.below(2) != 0);
    }
    db.validate();
    return db;
}

static const char kDbMagic[6] = {'P', 'I', 'R', 'D', 'B', '1'};

std::vector<uint8_t> serialize_database(const Database& db) {
    db.validate();
    std::vector<uint8_t> out;
    out.insert(out.end(), kDbMagic, kDbMagic + 6);
    out.push_back(static_cast<uint8_t>(db.K >> 8));
    out.push_back(static_cast<uint8_t>(db.K));
    for (int s = 24; s >= 0; s -= 8) out.push_back(static_cast<uint8_t>(db.t >> s));
    for (const auto& m : db.messages) out.insert(out.end(), m.begin(), m.end());
    return out;
}

Database deserialize_database(const std::vector<uint8_t>& bytes) {
    if (bytes.size() < 12 || std::memcmp(bytes.data(), kDbMagic, 6) != 0)
        throw ProtocolError("database: bad magic");
    Database db;
    db.K = (static_cast<unsigned>(bytes[6]) << 8) | bytes[7];
    db.t = (static_cast<unsigned>(bytes[8]) << 24) | (static_cast<unsigned>(bytes[9]) << 16) |
           (static_cast<unsigned>(bytes[10]) << 8) | bytes[11];
    size_t rec = bitvec_bytes(db.t);
    if (bytes.size() != 12 + static_cast<size_t>(db.K) * rec)
        throw ProtocolError("database: truncated file");
    db.messages.resize(db.K);
    for (unsigned i = 0; i < db.K; ++i) {
        const uint8_t* p = bytes.data() + 12 + i * rec;
        db.messages[i].assign(p, p + rec);
    }
    db.validate();
    return db;
}

void save_database(const Database& db, const std::string& path) {
    auto bytes = serialize_database(db);
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ParameterError("cannot open for writing: " + path);
    f.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

Database load_database(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ParameterError("cannot open: " + path);
    std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    return deserialize_database(bytes);
}

void DemandSpec::validate(unsigned K) const {
    if (W < 1 || W > static_cast<int>(K)) throw ParameterError("demand: W out of range");
    if (!std::is_sorted(S.begin(), S.end())) throw ParameterError("demand: S not sorted");
    if (std::adjacent_find(S.begin(), S.end()) != S.end())
        throw ParameterError("demand: S has duplicates");
    for (int j : S) {
        if (j < 1 || j > static_cast<int>(K)) throw ParameterError("demand: S index out of range");
        if (j == W) throw ParameterError("demand: W must not be in S");
    }
    if (S.size() >= K) throw ParameterError("demand: M must be < K");
}

DemandSpec sample_demand(unsigned K, unsigned M, Rng& rng) {
    if (K < 1 || M >= K) throw ParameterError("sample_demand: need 0 <= M <= K-1");
    DemandSpec d;
    d.W = static_cast<int>(rng.below(K)) + 1;
    std::vector<int> others;
    for (int j = 1; j <= static_cast<int>(K); ++j)
        if (j != d.W) others.push_back(j);
    d.S = rng.sample(others, M);
    std::sort(d.S.begin(), d.S.end());
    return d;
}

Rational joint_prior(int W, const IndexSet& S, unsigned K, unsigned M) {
    if (S.size() != M) throw ParameterError("joint_prior: |S| != M");
    if (M >= K) throw ParameterError("joint_prior: M must be < K");
    for (int j : S) {
        if (j < 1 || j > static_cast<int>(K)) throw ParameterError("joint_prior: S out of range");
        if (j == W) return Rational(0);
    }
    if (W < 1 || W > static_cast<int>(K)) throw ParameterError("joint_prior: W out of range");
    return Rational(1) / (Rational(K - M) * Rational(binomial(K, M)));
}

RateReport rate_of(unsigned t, const std::vector<uint64_t>& answer_bit_lengths) {
    if (answer_bit_lengths.empty()) throw ParameterError("rate_of: no answer lengths");
    RateReport r;
    r.message_bits = t;
    for (uint64_t l : answer_bit_lengths) {
        if (l == 0) throw ParameterError("rate_of: zero-length answer");
        r.total_answer_bits += l;
    }
    r.rate = Rational(t) / Rational(r.total_answer_bits);
    return r;
}

}  // namespace pirsi
