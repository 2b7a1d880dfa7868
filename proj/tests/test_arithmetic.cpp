/* Binomial arithmetic: factorizations, gcd ladders, the c_k multiplier,
 * and the prime-power splits of C(n, p^s).  Frozen values here were
 * computed by hand (small cases) or by direct gcd evaluation; the
 * check_* routines re-derive the ladder identities from scratch. */
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pucoh/arithmetic.hpp"

using namespace pucoh;

TEST_CASE("factorize: ascending prime factorizations") {
    auto f8 = factorize(8);
    REQUIRE(f8.size() == 1);
    CHECK(f8[0].p == 2);
    CHECK(f8[0].e == 3);

    auto f12 = factorize(12);
    REQUIRE(f12.size() == 2);
    CHECK(f12[0].p == 2);
    CHECK(f12[0].e == 2);
    CHECK(f12[1].p == 3);
    CHECK(f12[1].e == 1);

    auto f360 = factorize(360);
    REQUIRE(f360.size() == 3);
    CHECK(f360[0].p == 2);
    CHECK(f360[0].e == 3);
    CHECK(f360[1].p == 3);
    CHECK(f360[1].e == 2);
    CHECK(f360[2].p == 5);
    CHECK(f360[2].e == 1);

    auto f97 = factorize(97);
    REQUIRE(f97.size() == 1);
    CHECK(f97[0].p == 97);
    CHECK(f97[0].e == 1);

    CHECK_THROWS_AS(factorize(1), std::invalid_argument);
    CHECK_THROWS_AS(factorize(0), std::invalid_argument);
}

TEST_CASE("binomial: values and out-of-range zeros") {
    CHECK(binomial(8, 3) == 56);
    CHECK(binomial(8, 0) == 1);
    CHECK(binomial(8, 8) == 1);
    CHECK(binomial(8, 9) == 0);
    CHECK(binomial(8, -1) == 0);
    CHECK(binomial(30, 15) == Int("155117520"));
    CHECK(to_decimal(binomial(64, 32)) == "1832624140942590534");
    CHECK_THROWS_AS(binomial(-1, 0), std::invalid_argument);
}

TEST_CASE("c_multiplier: prime-power detection with the exponent cap") {
    /* n = 8 = 2^3: the three 2-powers <= 8 pick up a 2 */
    CHECK(c_multiplier(8, 2) == 2);
    CHECK(c_multiplier(8, 3) == 1);
    CHECK(c_multiplier(8, 4) == 2);
    CHECK(c_multiplier(8, 5) == 1);
    CHECK(c_multiplier(8, 6) == 1);
    CHECK(c_multiplier(8, 7) == 1);
    CHECK(c_multiplier(8, 8) == 2);

    /* n = 6: c_4 = 1 even though 4 = 2^2 divides nothing beyond 2^1 | 6;
     * the ladder b_{6,3} = b_{6,4} = 1 has no factor of 2 left to lose */
    CHECK(c_multiplier(6, 2) == 2);
    CHECK(c_multiplier(6, 3) == 3);
    CHECK(c_multiplier(6, 4) == 1);
    CHECK(c_multiplier(6, 5) == 1);
    CHECK(c_multiplier(6, 6) == 1);

    /* n = 12 = 2^2 * 3: 4 still qualifies, 8 and 9 no longer do */
    CHECK(c_multiplier(12, 2) == 2);
    CHECK(c_multiplier(12, 3) == 3);
    CHECK(c_multiplier(12, 4) == 2);
    CHECK(c_multiplier(12, 8) == 1);
    CHECK(c_multiplier(12, 9) == 1);

    /* n = 9 = 3^2: only the 3-powers react */
    CHECK(c_multiplier(9, 2) == 1);
    CHECK(c_multiplier(9, 3) == 3);
    CHECK(c_multiplier(9, 9) == 3);

    CHECK_THROWS_AS(c_multiplier(8, 1), std::invalid_argument);
    CHECK_THROWS_AS(c_multiplier(8, 9), std::invalid_argument);
    CHECK_THROWS_AS(c_multiplier(1, 1), std::invalid_argument);
}

TEST_CASE("binomial_gcd: the ladders for n = 8 and n = 6") {
    const long b8[] = {8, 4, 4, 2, 2, 2, 2, 1};
    for (long r = 1; r <= 8; ++r) CHECK(binomial_gcd(8, r) == b8[r - 1]);

    const long b6[] = {6, 3, 1, 1, 1, 1};
    for (long r = 1; r <= 6; ++r) CHECK(binomial_gcd(6, r) == b6[r - 1]);

    CHECK(binomial_gcd(12, 2) == 6);
    CHECK(binomial_gcd(12, 3) == 2);
    CHECK(binomial_gcd(12, 4) == 1);

    CHECK_THROWS_AS(binomial_gcd(8, 0), std::invalid_argument);
    CHECK_THROWS_AS(binomial_gcd(8, 9), std::invalid_argument);
}

TEST_CASE("check_gcd_ladder: quotients and tail products agree") {
    for (long n : {2L, 3L, 4L, 6L, 8L, 12L, 36L, 97L, 256L})
        CHECK(check_gcd_ladder(n));
}

TEST_CASE("check_newton_expansion: exact rational identity") {
    for (long n : {2L, 6L, 8L, 12L, 30L})
        for (long r = 1; r <= n; ++r) CHECK(check_newton_expansion(n, r));
    CHECK_THROWS_AS(check_newton_expansion(8, 0), std::invalid_argument);
    CHECK_THROWS_AS(check_newton_expansion(8, 9), std::invalid_argument);
}

TEST_CASE("prime_power_split: frozen main sums for n = 8") {
    /* C(8,2) = 28 = 32 - C(8,1)/2, the lone negative-tail case (p=2, s=1) */
    auto s1 = prime_power_split(8, 2, 1);
    CHECK(s1.main_sum == 32);
    CHECK(s1.tail_sign == -1);

    /* C(8,4) = 70 = 56 + C(8,2)/2 */
    auto s2 = prime_power_split(8, 2, 2);
    CHECK(s2.main_sum == 56);
    CHECK(s2.tail_sign == 1);

    /* C(8,8) = 1 = -34 + C(8,4)/2 */
    auto s3 = prime_power_split(8, 2, 3);
    CHECK(s3.main_sum == -34);
    CHECK(s3.tail_sign == 1);

    /* odd primes always get the positive tail */
    CHECK(prime_power_split(6, 3, 1).tail_sign == 1);
    CHECK(prime_power_split(9, 3, 2).tail_sign == 1);

    CHECK_THROWS_AS(prime_power_split(8, 3, 1), std::invalid_argument);
    CHECK_THROWS_AS(prime_power_split(8, 2, 4), std::invalid_argument);
    CHECK_THROWS_AS(prime_power_split(8, 2, 0), std::invalid_argument);
}

TEST_CASE("prime_power_split: identity holds across the small range") {
    for (long n = 2; n <= 64; ++n)
        for (const PrimeFactor& f : factorize(n))
            for (int s = 1; s <= f.e; ++s)
                CHECK_NOTHROW(prime_power_split(n, f.p, s));
}

TEST_CASE("check_binomial_valuation: v_p(C(n, p^s)) = v_p(n) - s") {
    for (long n : {4L, 6L, 8L, 9L, 12L, 16L, 24L, 27L, 36L, 64L})
        for (const PrimeFactor& f : factorize(n)) CHECK(check_binomial_valuation(n, f.p));
    CHECK_THROWS_AS(check_binomial_valuation(8, 3), std::invalid_argument);
}
