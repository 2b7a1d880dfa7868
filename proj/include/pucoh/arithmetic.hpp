#pragma once
/* Binomial arithmetic underlying the cohomology of PU(n):
 * prime factorizations, gcds of binomial rows, and the multiplier
 * c_k that measures how far the k-th exterior generator is from being
 * pulled back from the projective group.  All identities asserted here
 * are exercised exhaustively by the test suite. */
#include <vector>

#include "pucoh/bigint.hpp"

namespace pucoh {

struct PrimeFactor {
    long p;
    int e;
};

/* ascending prime factorization of n >= 2 (trial division; inputs are small) */
std::vector<PrimeFactor> factorize(long n);

/* C(n, k); zero outside 0 <= k <= n */
Int binomial(long n, long k);

/* c_k for 2 <= k <= n: p if k = p^s with p prime, p | n and s <= v_p(n),
 * else 1.  The exponent cap matters: the c_k are exactly the quotients
 * b_{n,k-1}/b_{n,k} of the binomial gcd ladder, and that quotient is 1
 * once k exceeds the largest p-power dividing n. */
long c_multiplier(long n, long k);

/* b_{n,r} = gcd(C(n,1), ..., C(n,r)) for 1 <= r <= n; the order of the
 * r-th power of the degree-2 generator. */
Int binomial_gcd(long n, long r);

/* Checks the gcd ladder: b_{n,1} = n, each quotient b_{n,r-1}/b_{n,r}
 * equals c_r, and b_{n,r} equals the product of c_k for r < k <= n. */
bool check_gcd_ladder(long n);

/* Checks the Newton-type expansion of C(n,r) in terms of C(n,r-t),
 * 1 <= t <= r, as an exact rational identity. */
bool check_newton_expansion(long n, long r);

/* The split of C(n, p^s) used when c_{p^s} = p: a main sum M plus a sign
 * times C(n, p^(s-1))/p.  The sign is -1 exactly when p = 2 and s = 1
 * (the tail of the alternating expansion ends on an even index only in
 * that case).  Throws std::logic_error if the identity fails. */
struct PrimePowerSplit {
    Int main_sum;
    int tail_sign;
};
PrimePowerSplit prime_power_split(long n, long p, int s);

/* v_p(C(n, p^s)) = v_p(n) - s for 0 <= s <= v_p(n); used as a sanity check */
bool check_binomial_valuation(long n, long p);

}  // namespace pucoh
