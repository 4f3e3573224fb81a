#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace rackq {

// Exact arbitrary-precision arithmetic. mpq_class keeps the canonical form we
// rely on everywhere: reduced fraction, denominator > 0.
using Int = mpz_class;
using Rat = mpq_class;

inline Rat make_rat(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline bool is_zero(const Rat& r) { return sgn(r) == 0; }

inline bool is_integer(const Rat& r) { return r.get_den() == 1; }

// "p/q", or just "p" for integers
inline std::string rat_string(const Rat& r) {
    if (is_integer(r)) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline size_t bit_length(const Int& v) { return mpz_sizeinbase(v.get_mpz_t(), 2); }

} // namespace rackq
