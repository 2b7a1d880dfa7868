#pragma once
/* Exact integer/rational scalars.  Everything downstream (binomial gcds,
 * Smith normal forms, spectral-sequence differentials) overflows 64 bits
 * quickly, so the whole library computes over GMP. */
#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace pucoh {

using Int = mpz_class;
using Rat = mpq_class;

inline Int int_pow(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Int int_pow(long base, unsigned long e) { return int_pow(Int(base), e); }

inline Int int_gcd(const Int& a, const Int& b) {
    Int r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

/* (g, u, v) with u*a + v*b = g = gcd(a,b) >= 0 */
struct ExtGcd {
    Int g, u, v;
};
inline ExtGcd ext_gcd(const Int& a, const Int& b) {
    ExtGcd r;
    mpz_gcdext(r.g.get_mpz_t(), r.u.get_mpz_t(), r.v.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

/* largest e with p^e | x; requires x != 0, p >= 2 */
inline long valuation(const Int& x, const Int& p) {
    if (x == 0) throw std::invalid_argument("valuation: zero argument");
    Int rest;
    return static_cast<long>(mpz_remove(rest.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t()));
}

inline bool divides(const Int& d, const Int& x) {
    if (d == 0) return x == 0;
    return mpz_divisible_p(x.get_mpz_t(), d.get_mpz_t()) != 0;
}

/* exact quotient; caller guarantees divisibility */
inline Int div_exact(const Int& x, const Int& d) {
    Int q;
    mpz_divexact(q.get_mpz_t(), x.get_mpz_t(), d.get_mpz_t());
    return q;
}

inline std::string to_decimal(const Int& x) { return x.get_str(); }

}  // namespace pucoh
