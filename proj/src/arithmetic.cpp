#include "pucoh/arithmetic.hpp"

#include <stdexcept>

namespace pucoh {

std::vector<PrimeFactor> factorize(long n) {
    if (n < 2) throw std::invalid_argument("factorize: n must be >= 2");
    std::vector<PrimeFactor> out;
    long m = n;
    for (long p = 2; p * p <= m; p += (p == 2 ? 1 : 2)) {
        if (m % p) continue;
        int e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        out.push_back({p, e});
    }
    if (m > 1) out.push_back({m, 1});
    return out;
}

Int binomial(long n, long k) {
    if (n < 0) throw std::invalid_argument("binomial: n must be >= 0");
    if (k < 0 || k > n) return 0;
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

long c_multiplier(long n, long k) {
    if (n < 2 || k < 2 || k > n) throw std::invalid_argument("c_multiplier: need 2 <= k <= n");
    /* k = p^s for a single prime p?  (s >= 1) */
    auto f = factorize(k);
    if (f.size() != 1) return 1;
    long p = f[0].p;
    if (n % p != 0) return 1;
    /* the exponent may not exceed the multiplicity of p in n: the gcd
     * ladder b_{n,k-1}/b_{n,k} has no p left to lose once k > p^v_p(n)
     * (e.g. c_4 = 1 for n = 6, as b_{6,3} = b_{6,4} = 1) */
    long m = n;
    int vp = 0;
    while (m % p == 0) {
        m /= p;
        ++vp;
    }
    return f[0].e <= vp ? p : 1;
}

Int binomial_gcd(long n, long r) {
    if (n < 2 || r < 1 || r > n) throw std::invalid_argument("binomial_gcd: need 1 <= r <= n");
    Int g = n;
    for (long k = 2; k <= r; ++k) g = int_gcd(g, binomial(n, k));
    return g;
}

bool check_gcd_ladder(long n) {
    /* one incremental pass over the ladder; recomputing binomial_gcd from
     * scratch at every rung would cost a quadratic number of binomials */
    std::vector<Int> g(static_cast<size_t>(n) + 1);
    g[1] = n;
    for (long r = 2; r <= n; ++r) g[r] = int_gcd(g[r - 1], binomial(n, r));
    if (g[1] != n) return false;
    for (long r = 2; r <= n; ++r)
        if (g[r - 1] != g[r] * c_multiplier(n, r)) return false;
    Int prod = 1;
    for (long r = n; r >= 1; --r) {
        /* prod = product of the multipliers for k = r+1 .. n */
        if (g[r] != prod) return false;
        if (r >= 2) prod *= c_multiplier(n, r);
    }
    return true;
}

bool check_newton_expansion(long n, long r) {
    if (n < 2 || r < 1 || r > n) throw std::invalid_argument("check_newton_expansion: need 1 <= r <= n");
    /* C(n,r) = (n/r) * sum_{1<=t<=r} (-1)^(t-1) C(n, r-t) */
    Rat acc = 0;
    for (long t = 1; t <= r; ++t) {
        Rat term(binomial(n, r - t));
        if (t % 2 == 0) term = -term;
        acc += term;
    }
    Rat scale(n, r);
    scale.canonicalize();
    acc *= scale;
    return acc == Rat(binomial(n, r));
}

PrimePowerSplit prime_power_split(long n, long p, int s) {
    if (n < 2 || p < 2 || s < 1) throw std::invalid_argument("prime_power_split: need p >= 2, s >= 1");
    if (n % p != 0) throw std::invalid_argument("prime_power_split: p must divide n");
    long ps = 1, ps1 = 1;
    for (int i = 0; i < s; ++i) ps *= p;
    for (int i = 0; i + 1 < s; ++i) ps1 *= p;
    if (ps > n) throw std::invalid_argument("prime_power_split: p^s must be <= n");

    /* M = (n/p^s) sum_{1<=t<=p^s-p^(s-1)} (-1)^(t-1) C(n, p^s - t), and
     * C(n,p^s) = M + sign * C(n,p^(s-1))/p where sign = (-1)^(p^s - p^(s-1)). */
    Rat m = 0;
    for (long t = 1; t <= ps - ps1; ++t) {
        Rat term(binomial(n, ps - t));
        if (t % 2 == 0) term = -term;
        m += term;
    }
    Rat scale(n, ps);
    scale.canonicalize();
    m *= scale;
    if (m.get_den() != 1) throw std::logic_error("prime_power_split: main sum is not integral");

    int sign = (ps - ps1) % 2 == 0 ? 1 : -1;
    Rat tail(binomial(n, ps1), Int(p));
    tail.canonicalize();
    Rat rhs = Rat(m.get_num()) + Rat(sign) * tail;
    if (rhs != Rat(binomial(n, ps)))
        throw std::logic_error("prime_power_split: identity violated");
    return {m.get_num(), sign};
}

bool check_binomial_valuation(long n, long p) {
    if (n < 2 || n % p != 0) throw std::invalid_argument("check_binomial_valuation: p must divide n");
    long r = valuation(Int(n), Int(p));
    long ps = 1;
    for (long s = 0; s <= r; ++s) {
        if (valuation(binomial(n, ps), Int(p)) != r - s) return false;
        ps *= p;
    }
    return true;
}

}  // namespace pucoh
