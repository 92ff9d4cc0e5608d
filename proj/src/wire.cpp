#include "pirsi/wire.hpp"

#include <algorithm>

namespace pirsi::wire {

namespace {

void put_u16(std::vector<uint8_t>& out, uint16_t v) {
    out.push_back(static_cast<uint8_t>(v >> 8));
    out.push_back(static_cast<uint8_t>(v));
}

void put_u32(std::vector<uint8_t>& out, uint32_t v) {
    for (int s = 24; s >= 0; s -= 8) out.push_back(static_cast<uint8_t>(v >> s));
}

struct Reader {
    const std::vector<uint8_t>& data;
    size_t pos = 0;

    void need(size_t n) const {
        if (pos + n > data.size()) throw ProtocolError("wire: truncated payload");
    }
    uint8_t u8() {
        need(1);
        return data[pos++];
    }
    uint16_t u16() {
        need(2);
        uint16_t v = (static_cast<uint16_t>(data[pos]) << 8) | data[pos + 1];
        pos += 2;
        return v;
    }
    uint32_t u32() {
        need(4);
        uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v = (v << 8) | data[pos + i];
        pos += 4;
        return v;
    }
    std::vector<uint8_t> bytes(size_t n) {
        need(n);
        std::vector<uint8_t> v(data.begin() + static_cast<long>(pos),
                               data.begin() + static_cast<long>(pos + n));
        pos += n;
        return v;
    }
    void done() const {
        if (pos != data.size()) throw ProtocolError("wire: trailing bytes in payload");
    }
};

BitVec set_to_bitmap(const IndexSet& s, unsigned K) {
    BitVec v(bitvec_bytes(K), 0);
    for (int j : s) {
        if (j < 1 || j > static_cast<int>(K)) throw ProtocolError("wire: index out of range");
        bitvec_set(v, static_cast<unsigned>(j), true);
    }
    return v;
}

IndexSet bitmap_to_set(const BitVec& v, unsigned K) {
    IndexSet s;
    for (unsigned j = 1; j <= K; ++j)
        if (bitvec_get(v, j)) s.push_back(static_cast<int>(j));
    return s;
}

}  // namespace

std::vector<uint8_t> encode_frame(const Frame& f) {
    std::vector<uint8_t> out;
    out.push_back('P');
    out.push_back('S');
    out.push_back(kVersion);
    out.push_back(f.msg_type);
    put_u32(out, static_cast<uint32_t>(f.payload.size()));
    out.insert(out.end(), f.payload.begin(), f.payload.end());
    return out;
}

Frame decode_frame(const std::vector<uint8_t>& data, size_t& offset) {
    if (data.size() - offset < kHeaderSize) throw ProtocolError("wire: truncated frame header");
    if (data[offset] != 'P' || data[offset + 1] != 'S') throw ProtocolError("wire: bad magic");
    if (data[offset + 2] != kVersion) throw ProtocolError("wire: unsupported version");
    Frame f;
    f.msg_type = data[offset + 3];
    uint32_t len = 0;
    for (int i = 0; i < 4; ++i) len = (len << 8) | data[offset + 4 + i];
    if (data.size() - offset - kHeaderSize < len) throw ProtocolError("wire: truncated payload");
    f.payload.assign(data.begin() + static_cast<long>(offset + kHeaderSize),
                     data.begin() + static_cast<long>(offset + kHeaderSize + len));
    offset += kHeaderSize + len;
    return f;
}

std::vector<uint8_t> encode_partition_query(const partition::PartitionQuery& q, unsigned K) {
    std::vector<uint8_t> out;
    put_u16(out, static_cast<uint16_t>(q.parts.size()));
    for (const auto& part : q.parts) {
        BitVec bm = set_to_bitmap(part, K);
        out.insert(out.end(), bm.begin(), bm.end());
    }
    return out;
}

partition::PartitionQuery decode_partition_query(const std::vector<uint8_t>& payload, unsigned K) {
    Reader r{payload};
    partition::PartitionQuery q;
    uint16_t g = r.u16();
    for (uint16_t i = 0; i < g; ++i)
        q.parts.push_back(bitmap_to_set(r.bytes(bitvec_bytes(K)), K));
    r.done();
    return q;
}

std::vector<uint8_t> encode_partition_answer(const partition::PartitionAnswer& a) {
    std::vector<uint8_t> out;
    put_u16(out, static_cast<uint16_t>(a.sums.size()));
    for (const auto& s : a.sums) out.insert(out.end(), s.begin(), s.end());
    return out;
}

partition::PartitionAnswer decode_partition_answer(const std::vector<uint8_t>& payload,
                                                   unsigned t) {
    Reader r{payload};
    partition::PartitionAnswer a;
    uint16_t n = r.u16();
    for (uint16_t i = 0; i < n; ++i) a.sums.push_back(r.bytes(bitvec_bytes(t)));
    r.done();
    return a;
}

std::vector<uint8_t> encode_mds_query(const mds::MdsQuery& q) {
    std::vector<uint8_t> out;
    put_u16(out, static_cast<uint16_t>(q.M));
    return out;
}

mds::MdsQuery decode_mds_query(const std::vector<uint8_t>& payload) {
    Reader r{payload};
    mds::MdsQuery q{r.u16()};
    r.done();
    return q;
}

std::vector<uint8_t> encode_mds_answer(const mds::MdsAnswer& a, unsigned field_t) {
    std::vector<uint8_t> out;
    put_u16(out, static_cast<uint16_t>(a.parities.size()));
    unsigned nbytes = (field_t + 7) / 8;
    for (const auto& parity : a.parities)
        for (uint32_t e : parity)
            for (int i = static_cast<int>(nbytes) - 1; i >= 0; --i)
                out.push_back(static_cast<uint8_t>(e >> (8 * i)));
    return out;
}

mds::MdsAnswer decode_mds_answer(const std::vector<uint8_t>& payload, unsigned field_t) {
    Reader r{payload};
    mds::MdsAnswer a;
    uint16_t count = r.u16();
    unsigned nbytes = (field_t + 7) / 8;
    if (count == 0) throw ProtocolError("wire: empty mds answer");
    size_t rest = payload.size() - r.pos;
    if (rest % (static_cast<size_t>(count) * nbytes) != 0)
        throw ProtocolError("wire: bad mds answer length");
    size_t width = rest / (static_cast<size_t>(count) * nbytes);
    a.parities.assign(count, std::vector<uint32_t>(width));
    for (uint16_t i = 0; i < count; ++i)
        for (size_t e = 0; e < width; ++e) {
            uint32_t v = 0;
            for (unsigned b = 0; b < nbytes; ++b) v = (v << 8) | r.u8();
            a.parities[i][e] = v;
        }
    r.done();
    return a;
}

std::vector<uint8_t> encode_sj_query(const std::vector<IndexSet>& partition,
                                     const std::vector<sj::QueryAtom>& atoms, unsigned K) {
    std::vector<uint8_t> out;
    put_u16(out, static_cast<uint16_t>(partition.size()));
    for (const auto& part : partition) {
        BitVec bm = set_to_bitmap(part, K);
        out.insert(out.end(), bm.begin(), bm.end());
    }
    put_u32(out, static_cast<uint32_t>(atoms.size()));
    for (const auto& atom : atoms) {
        out.push_back(static_cast<uint8_t>(atom.refs.size()));
        for (const auto& ref : atom.refs) {
            put_u16(out, static_cast<uint16_t>(ref.message));
            put_u32(out, ref.slot);
        }
    }
    return out;
}

void decode_sj_query(const std::vector<uint8_t>& payload, unsigned K,
                     std::vector<IndexSet>& partition, std::vector<sj::QueryAtom>& atoms) {
    Reader r{payload};
    partition.clear();
    atoms.clear();
    uint16_t g = r.u16();
    for (uint16_t i = 0; i < g; ++i)
        partition.push_back(bitmap_to_set(r.bytes(bitvec_bytes(K)), K));
    uint32_t count = r.u32();
    for (uint32_t i = 0; i < count; ++i) {
        sj::QueryAtom atom{i, {}};
        uint8_t refs = r.u8();
        for (uint8_t j = 0; j < refs; ++j) {
            unsigned msg = r.u16();
            unsigned slot = r.u32();
            atom.refs.push_back(sj::SymbolRef{msg, slot});
        }
        atoms.push_back(std::move(atom));
    }
    r.done();
}

std::vector<uint8_t> encode_sj_answer(const std::vector<uint8_t>& bits) {
    std::vector<uint8_t> out;
    put_u32(out, static_cast<uint32_t>(bits.size()));
    uint8_t acc = 0;
    for (size_t i = 0; i < bits.size(); ++i) {
        acc = static_cast<uint8_t>(acc | ((bits[i] & 1) << (7 - i % 8)));
        if (i % 8 == 7 || i + 1 == bits.size()) {
            out.push_back(acc);
            acc = 0;
        }
    }
    return out;
}

std::vector<uint8_t> decode_sj_answer(const std::vector<uint8_t>& payload) {
    Reader r{payload};
    uint32_t count = r.u32();
    auto packed = r.bytes((count + 7) / 8);
    r.done();
    std::vector<uint8_t> bits(count);
    for (uint32_t i = 0; i < count; ++i) bits[i] = (packed[i / 8] >> (7 - i % 8)) & 1;
    return bits;
}

std::vector<uint8_t> encode_hello_answer(unsigned K, unsigned t) {
    std::vector<uint8_t> out;
    put_u16(out, static_cast<uint16_t>(K));
    put_u32(out, t);
    return out;
}

void decode_hello_answer(const std::vector<uint8_t>& payload, unsigned& K, unsigned& t) {
    Reader r{payload};
    K = r.u16();
    t = r.u32();
    r.done();
}

std::vector<uint8_t> encode_error(uint16_t code, const std::string& message) {
    std::vector<uint8_t> out;
    put_u16(out, code);
    out.insert(out.end(), message.begin(), message.end());
    return out;
}

std::pair<uint16_t, std::string> decode_error(const std::vector<uint8_t>& payload) {
    Reader r{payload};
    uint16_t code = r.u16();
    std::string msg(payload.begin() + 2, payload.end());
    return {code, msg};
}

}  // namespace pirsi::wire
