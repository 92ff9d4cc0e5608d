#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace pirsi {

// Exact arbitrary-precision rational. Privacy audits must distinguish
// "exactly uniform" from "nearly uniform", so no floating point here.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    BigInt r = 1;
    for (unsigned i = 0; i < k; ++i) {
        r *= n - i;
        r /= i + 1;
    }
    return r;
}

}  // namespace pirsi
