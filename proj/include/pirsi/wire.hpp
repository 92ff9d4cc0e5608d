#pragma once

#include "pirsi/mds.hpp"
#include "pirsi/partition.hpp"
#include "pirsi/sunjafar.hpp"

namespace pirsi::wire {

// Frame: magic "PS", version 0x01, msg_type, u32 BE payload length, payload.
enum MsgType : uint8_t {
    HELLO = 0x01,
    PARTITION_QUERY = 0x02,
    MDS_QUERY = 0x03,
    SJ_QUERY = 0x04,
    ANSWER = 0x81,
    ERROR = 0xFF,
};

struct Frame {
    uint8_t msg_type = 0;
    std::vector<uint8_t> payload;

    friend bool operator==(const Frame&, const Frame&) = default;
};

constexpr uint8_t kVersion = 0x01;
constexpr size_t kHeaderSize = 8;

std::vector<uint8_t> encode_frame(const Frame& f);
// Consumes one frame from data; throws ProtocolError on bad magic/version.
Frame decode_frame(const std::vector<uint8_t>& data, size_t& offset);

// Payload codecs. Characteristic vectors are ceil(K/8)-byte bitmaps, index 1
// at the MSB of the first byte.
std::vector<uint8_t> encode_partition_query(const partition::PartitionQuery& q, unsigned K);
partition::PartitionQuery decode_partition_query(const std::vector<uint8_t>& payload, unsigned K);

std::vector<uint8_t> encode_partition_answer(const partition::PartitionAnswer& a);
partition::PartitionAnswer decode_partition_answer(const std::vector<uint8_t>& payload, unsigned t);

std::vector<uint8_t> encode_mds_query(const mds::MdsQuery& q);
mds::MdsQuery decode_mds_query(const std::vector<uint8_t>& payload);

std::vector<uint8_t> encode_mds_answer(const mds::MdsAnswer& a, unsigned field_t);
mds::MdsAnswer decode_mds_answer(const std::vector<uint8_t>& payload, unsigned field_t);

// SJ query: partition block (u16 g + bitmaps) then u32 atom count, atoms as
// u8 ref count + (u16 message, u32 slot) per ref.
std::vector<uint8_t> encode_sj_query(const std::vector<IndexSet>& partition,
                                     const std::vector<sj::QueryAtom>& atoms, unsigned K);
void decode_sj_query(const std::vector<uint8_t>& payload, unsigned K,
                     std::vector<IndexSet>& partition, std::vector<sj::QueryAtom>& atoms);

// SJ answer: u32 bit count, packed MSB-first.
std::vector<uint8_t> encode_sj_answer(const std::vector<uint8_t>& bits);
std::vector<uint8_t> decode_sj_answer(const std::vector<uint8_t>& payload);

std::vector<uint8_t> encode_hello_answer(unsigned K, unsigned t);
void decode_hello_answer(const std::vector<uint8_t>& payload, unsigned& K, unsigned& t);

std::vector<uint8_t> encode_error(uint16_t code, const std::string& message);
std::pair<uint16_t, std::string> decode_error(const std::vector<uint8_t>& payload);

}  // namespace pirsi::wire
