#include "doctest.h"
#include "pirsi/gf.hpp"
#include "pirsi/random.hpp"

using namespace pirsi;
using namespace pirsi::gf;

namespace {

// Independent oracle: a * x^i computed one shift at a time with immediate
// reduction, accumulated over the set bits of b.
uint32_t slow_mul(uint32_t a, uint32_t b, unsigned t, uint32_t poly) {
    uint32_t result = 0;
    uint32_t shifted = a;
    for (unsigned i = 0; i < t; ++i) {
        if ((b >> i) & 1) result ^= shifted;
        shifted <<= 1;
        if (shifted >> t) shifted ^= poly;
    }
    return result;
}

}  // namespace

TEST_CASE("default polynomials are irreducible for every supported width") {
    for (unsigned t = 1; t <= 16; ++t) CHECK(is_irreducible(default_poly(t), t));
    CHECK_FALSE(is_irreducible(0x15, 4));  // x^4+x^2+1 = (x^2+x+1)^2
    CHECK_FALSE(is_irreducible(0x11, 4));  // x^4+1 = (x+1)^4
    CHECK_THROWS_AS(default_poly(0), ParameterError);
    CHECK_THROWS_AS(default_poly(17), ParameterError);
}

TEST_CASE("gf_add is XOR with identity and self-inverse") {
    FieldSpec f(4);
    CHECK(gf_add(f.elem(0b1010), f.elem(0b0110)) == f.elem(0b1100));
    for (uint32_t a = 0; a < 16; ++a) {
        CHECK(gf_add(f.elem(a), f.elem(a)) == f.elem(0));
        CHECK(gf_add(f.elem(a), f.elem(0)) == f.elem(a));
        for (uint32_t b = 0; b < 16; ++b)
            CHECK(gf_add(gf_add(f.elem(a), f.elem(b)), f.elem(b)) == f.elem(a));
    }
    CHECK_THROWS_AS(gf_add(f.elem(1), FieldElement{1, 3}), ParameterError);
}

TEST_CASE("gf_mul matches the slow oracle and has identity/annihilator") {
    FieldSpec f4(4, 0x13);
    CHECK(gf_mul(f4.elem(0x2), f4.elem(0x9), f4) == f4.elem(0x1));
    for (unsigned t : {2u, 3u, 4u}) {
        FieldSpec f(t);
        for (uint32_t a = 0; a < f.order(); ++a)
            for (uint32_t b = 0; b < f.order(); ++b)
                CHECK(f.mul(a, b) == slow_mul(a, b, t, f.reduction_poly));
    }
    FieldSpec f8(8);
    Rng rng(7);
    for (int i = 0; i < 10000; ++i) {
        uint32_t a = static_cast<uint32_t>(rng.below(256));
        uint32_t b = static_cast<uint32_t>(rng.below(256));
        CHECK(f8.mul(a, b) == slow_mul(a, b, 8, f8.reduction_poly));
        CHECK(f8.mul(a, 1) == a);
        CHECK(f8.mul(a, 0) == 0);
    }
}

TEST_CASE("gf_inv inverts and rejects zero") {
    FieldSpec f(4);
    CHECK(f.inv(0x1) == 0x1);
    CHECK(f.inv(0x2) == 0x9);
    CHECK_THROWS_AS(f.inv(0), ParameterError);
    for (unsigned t : {1u, 2u, 3u, 4u, 8u, 12u}) {
        FieldSpec g(t);
        for (uint32_t a = 1; a < g.order(); ++a) CHECK(g.mul(a, g.inv(a)) == 1);
    }
}

TEST_CASE("distributivity exhaustive for small widths, randomized for t=8") {
    for (unsigned t : {2u, 3u, 4u}) {
        FieldSpec f(t);
        for (uint32_t a = 0; a < f.order(); ++a)
            for (uint32_t b = 0; b < f.order(); ++b)
                for (uint32_t c = 0; c < f.order(); ++c)
                    CHECK(f.mul(a, b ^ c) == (f.mul(a, b) ^ f.mul(a, c)));
    }
    FieldSpec f8(8);
    Rng rng(11);
    for (int i = 0; i < 10000; ++i) {
        uint32_t a = static_cast<uint32_t>(rng.below(256));
        uint32_t b = static_cast<uint32_t>(rng.below(256));
        uint32_t c = static_cast<uint32_t>(rng.below(256));
        CHECK(f8.mul(a, b ^ c) == (f8.mul(a, b) ^ f8.mul(a, c)));
    }
}

TEST_CASE("nonzero elements form a multiplicative group for t <= 4") {
    for (unsigned t : {1u, 2u, 3u, 4u}) {
        FieldSpec f(t);
        for (uint32_t a = 1; a < f.order(); ++a) {
            bool has_inverse = false;
            for (uint32_t b = 1; b < f.order(); ++b) {
                uint32_t p = f.mul(a, b);
                CHECK(p != 0);  // closure on nonzero elements
                if (p == 1) has_inverse = true;
            }
            CHECK(has_inverse);
        }
    }
}

TEST_CASE("field elements serialize big-endian in ceil(t/8) bytes") {
    FieldSpec f12(12);
    auto bytes = serialize_elem(f12.elem(0xABC));
    REQUIRE(bytes.size() == 2);
    CHECK(bytes[0] == 0x0A);
    CHECK(bytes[1] == 0xBC);
    CHECK(deserialize_elem(bytes.data(), 12) == f12.elem(0xABC));
    auto one = serialize_elem(FieldElement{0x5, 4});
    REQUIRE(one.size() == 1);
    CHECK(one[0] == 0x05);
}
