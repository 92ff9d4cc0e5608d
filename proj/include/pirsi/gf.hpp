#pragma once

#include <cstdint>
#include <vector>

#include "pirsi/errors.hpp"

namespace pirsi::gf {

// One element of GF(2^t), t <= 16. value holds the t low bits.
struct FieldElement {
    uint32_t value = 0;
    unsigned width_t = 1;

    friend bool operator==(const FieldElement&, const FieldElement&) = default;
};

// Field parameters: bit width t and the reduction polynomial, encoded as a
// coefficient bitmask including the x^t term (e.g. x^4+x+1 -> 0b10011).
struct FieldSpec {
    unsigned t;
    uint32_t reduction_poly;

    explicit FieldSpec(unsigned t);
    FieldSpec(unsigned t, uint32_t poly);

    uint32_t order() const { return 1u << t; }

    // Raw-value arithmetic; callers guarantee a, b < 2^t.
    uint32_t add(uint32_t a, uint32_t b) const { return a ^ b; }
    uint32_t mul(uint32_t a, uint32_t b) const;
    uint32_t inv(uint32_t a) const;

    FieldElement elem(uint32_t v) const { return FieldElement{v, t}; }
};

// Default irreducible polynomial of degree t, t in [1,16].
uint32_t default_poly(unsigned t);

// Trial division over GF(2); exact for degree <= 16.
bool is_irreducible(uint32_t poly, unsigned degree);

FieldElement gf_add(const FieldElement& a, const FieldElement& b);
FieldElement gf_mul(const FieldElement& a, const FieldElement& b, const FieldSpec& spec);
FieldElement gf_inv(const FieldElement& a, const FieldSpec& spec);

// Big-endian, ceil(t/8) bytes.
std::vector<uint8_t> serialize_elem(const FieldElement& e);
FieldElement deserialize_elem(const uint8_t* data, unsigned t);

}  // namespace pirsi::gf
