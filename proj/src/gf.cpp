#include "pirsi/gf.hpp"

#include <array>

namespace pirsi::gf {

namespace {

constexpr std::array<uint32_t, 17> kDefaultPolys = {
    0,        // degree 0: unused
    0x3,      // x + 1
    0x7,      // x^2 + x + 1
    0xB,      // x^3 + x + 1
    0x13,     // x^4 + x + 1
    0x25,     // x^5 + x^2 + 1
    0x43,     // x^6 + x + 1
    0x83,     // x^7 + x + 1
    0x11B,    // x^8 + x^4 + x^3 + x + 1
    0x211,    // x^9 + x^4 + 1
    0x409,    // x^10 + x^3 + 1
    0x805,    // x^11 + x^2 + 1
    0x1053,   // x^12 + x^6 + x^4 + x + 1
    0x201B,   // x^13 + x^4 + x^3 + x + 1
    0x4443,   // x^14 + x^10 + x^6 + x + 1
    0x8003,   // x^15 + x + 1
    0x1100B,  // x^16 + x^12 + x^3 + x + 1
};

unsigned poly_degree(uint64_t p) {
    unsigned d = 0;
    while (p >>= 1) ++d;
    return d;
}

// Remainder of polynomial division over GF(2).
uint64_t poly_mod(uint64_t a, uint64_t m) {
    unsigned dm = poly_degree(m);
    while (a >> dm) {
        unsigned da = poly_degree(a);
        a ^= m << (da - dm);
    }
    return a;
}

uint64_t poly_mul(uint64_t a, uint64_t b) {
    uint64_t r = 0;
    for (unsigned i = 0; b >> i; ++i)
        if ((b >> i) & 1) r ^= a << i;
    return r;
}

}  // namespace

uint32_t default_poly(unsigned t) {
    if (t < 1 || t > 16) throw ParameterError("default_poly: t must be in [1,16]");
    return kDefaultPolys[t];
}

bool is_irreducible(uint32_t poly, unsigned degree) {
    if (poly_degree(poly) != degree) return false;
    if (degree == 1) return true;
    if ((poly & 1) == 0) return false;  // divisible by x
    // Trial division by all polynomials of degree 1 .. degree/2.
    for (uint64_t d = 2; poly_degree(d) <= degree / 2; ++d) {
        if (poly_mod(poly, d) == 0) return false;
    }
    return true;
}

FieldSpec::FieldSpec(unsigned t_) : FieldSpec(t_, default_poly(t_)) {}

FieldSpec::FieldSpec(unsigned t_, uint32_t poly) : t(t_), reduction_poly(poly) {
    if (t < 1 || t > 16) throw ParameterError("FieldSpec: t must be in [1,16]");
    if (poly_degree(poly) != t)
        throw ParameterError("FieldSpec: reduction polynomial degree != t");
}

uint32_t FieldSpec::mul(uint32_t a, uint32_t b) const {
    uint64_t prod = poly_mul(a, b);
    return static_cast<uint32_t>(poly_mod(prod, reduction_poly));
}

uint32_t FieldSpec::inv(uint32_t a) const {
    if (a == 0) throw ParameterError("gf_inv: zero has no inverse");
    // a^(2^t - 2) by square-and-multiply.
    uint32_t result = 1;
    uint32_t base = a;
    uint32_t e = order() - 2;
    while (e) {
        if (e & 1) result = mul(result, base);
        base = mul(base, base);
        e >>= 1;
    }
    return result;
}

FieldElement gf_add(const FieldElement& a, const FieldElement& b) {
    if (a.width_t != b.width_t) throw ParameterError("gf_add: width mismatch");
    return FieldElement{a.value ^ b.value, a.width_t};
}

FieldElement gf_mul(const FieldElement& a, const FieldElement& b, const FieldSpec& spec) {
    if (a.width_t != spec.t || b.width_t != spec.t)
        throw ParameterError("gf_mul: width mismatch");
    return spec.elem(spec.mul(a.value, b.value));
}

FieldElement gf_inv(const FieldElement& a, const FieldSpec& spec) {
    if (a.width_t != spec.t) throw ParameterError("gf_inv: width mismatch");
    return spec.elem(spec.inv(a.value));
}

std::vector<uint8_t> serialize_elem(const FieldElement& e) {
    unsigned nbytes = (e.width_t + 7) / 8;
    std::vector<uint8_t> out(nbytes);
    for (unsigned i = 0; i < nbytes; ++i)
        out[i] = static_cast<uint8_t>(e.value >> (8 * (nbytes - 1 - i)));
    return out;
}

FieldElement deserialize_elem(const uint8_t* data, unsigned t) {
    unsigned nbytes = (t + 7) / 8;
    uint32_t v = 0;
    for (unsigned i = 0; i < nbytes; ++i) v = (v << 8) | data[i];
    return FieldElement{v, t};
}

}  // namespace pirsi::gf
