/* The connecting operator: frozen values computed by hand through the
 * recursion, exact agreement with the closed formula on prime columns,
 * the documented divergence of the uncorrected exponent variant, and the
 * prime-support decomposition. */
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <bit>

#include "pucoh/gysin.hpp"

using namespace pucoh;

namespace {

PresElem t(long c, int omega, std::vector<int> rho) {
    return PresElem::term(Rat(Int(c)), omega, rho_set(rho));
}

}  // namespace

TEST_CASE("theta_generator: C(n,k) w^(k-1)") {
    CHECK(theta_generator(8, 3) == t(56, 2, {}));
    CHECK(theta_generator(8, 1) == t(8, 0, {}));
    CHECK(theta_generator(6, 6) == t(1, 5, {}));
    CHECK(theta(8, {3}) == t(56, 2, {}));
    CHECK_THROWS_AS(theta_generator(8, 0), std::invalid_argument);
    CHECK_THROWS_AS(theta_generator(8, 9), std::invalid_argument);
}

TEST_CASE("theta: frozen values from the recursion") {
    CHECK(theta(8, {1, 2}) == t(-4, 0, {2}));
    CHECK(theta(8, {1, 4}) == t(-4, 0, {4}) + t(-2, 2, {2}));
    CHECK(theta(8, {1, 8}) == t(-4, 0, {8}) + t(-2, 4, {4}) + t(-1, 6, {2}));
    CHECK(theta(8, {2, 4}) == t(-14, 1, {4}));
    CHECK(theta(8, {1, 2, 4}) == t(2, 0, {2, 4}));
    CHECK(theta(8, {1, 2, 4, 8}) == t(-1, 0, {2, 4, 8}));

    /* mixed prime support */
    CHECK(theta(6, {2, 3}) == t(-5, 1, {3}) + t(1, 2, {2}));
    CHECK(theta(12, {2, 3}) == t(-22, 1, {3}) + t(2, 2, {2}));

    /* 4 = 2^2 exceeds v_2(6), so xi_4 pulls back and only deposits rho_4 */
    CHECK(theta(6, {1, 4}) == t(-6, 0, {4}));
    CHECK(theta(6, {1, 6}) == t(-6, 0, {6}));
}

TEST_CASE("theta: validation and integrality") {
    CHECK_THROWS_AS(theta(8, {0}), std::invalid_argument);
    CHECK_THROWS_AS(theta(8, {9}), std::invalid_argument);
    CHECK_THROWS_AS(theta(8, {2, 2}), std::invalid_argument);
    CHECK_THROWS_AS(theta(63, {1}), std::invalid_argument);

    /* every subset of {1..6}: integral, and homogeneous of degree
     * sum(2i-1) - 1 unless zero */
    for (unsigned mask = 1; mask < 64; ++mask) {
        MultiIndex idx;
        int want = -1;
        for (int i = 1; i <= 6; ++i)
            if (mask & (1u << (i - 1))) {
                idx.push_back(i);
                want += 2 * i - 1;
            }
        PresElem th = theta(6, idx);
        CHECK(th.is_integral());
        Degree d = th.degree();
        if (d.kind != Degree::zero) {
            CHECK(d.kind == Degree::homogeneous);
            CHECK(d.value == want);
        }
    }
}

TEST_CASE("theta_closed: exact agreement with the recursion on prime columns") {
    auto sweep = [](long n, const std::vector<int>& pool) {
        int m = static_cast<int>(pool.size());
        for (unsigned mask = 1; mask < (1u << m); ++mask) {
            if (std::popcount(mask) < 2) continue;
            MultiIndex idx;
            for (int i = 0; i < m; ++i)
                if (mask & (1u << i)) idx.push_back(pool[static_cast<size_t>(i)]);
            auto seq = as_prime_power_seq(n, idx);
            REQUIRE(seq.has_value());
            CHECK(theta(n, idx) == theta_closed(n, *seq));
        }
    };
    sweep(8, {1, 2, 4, 8});
    sweep(9, {1, 3, 9});
    sweep(12, {1, 2, 4});
    sweep(12, {1, 3});

    CHECK(theta_closed(8, *as_prime_power_seq(8, {1, 8})) ==
          t(-4, 0, {8}) + t(-2, 4, {4}) + t(-1, 6, {2}));
    CHECK(theta_closed(8, *as_prime_power_seq(8, {2, 4, 8})) == t(7, 1, {4, 8}));
    CHECK_THROWS_AS(theta_closed(8, *as_prime_power_seq(8, {2})), std::invalid_argument);
}

TEST_CASE("theta_closed: the uncorrected exponent variant is off by p^(k-1)") {
    auto seq = as_prime_power_seq(8, {1, 2});
    REQUIRE(seq.has_value());
    CHECK(theta_closed(8, *seq, ClosedExponent::printed) == t(-8, 0, {2}));
    CHECK(theta_closed(8, *seq) == t(-4, 0, {2}));
    CHECK(theta_closed(8, *seq, ClosedExponent::printed) != theta(8, {1, 2}));
}

TEST_CASE("split_by_primes: prime-support decomposition terms") {
    /* {2,3} splits across the two columns with Bezout weights 1, -1 */
    auto s = split_by_primes(6, {2, 3});
    REQUIRE(s.size() == 2);
    CHECK(s[0].factor == t(-1, 0, {3}));
    CHECK(s[0].sub == MultiIndex{2});
    CHECK(s[1].factor == t(-1, 0, {2}));
    CHECK(s[1].sub == MultiIndex{3});

    /* xi_6 is a pullback for n = 6: theta dies modulo the ring relations */
    CHECK(split_by_primes(6, {6}).empty());

    /* with entry 1 present the pullback factors move across theta(xi_1);
     * here the identity even holds on the nose */
    auto u = split_by_primes(6, {1, 6});
    REQUIRE(u.size() == 1);
    CHECK(u[0].factor == t(-1, 0, {6}));
    CHECK(u[0].sub == MultiIndex{1});
    CHECK(theta(6, {1, 6}) == u[0].factor * theta(6, u[0].sub));

    auto v = split_by_primes(12, {2, 3});
    REQUIRE(v.size() == 2);
    CHECK(v[0].factor == t(-1, 0, {3}));
    CHECK(v[0].sub == MultiIndex{2});
    CHECK(v[1].factor == t(-1, 0, {2}));
    CHECK(v[1].sub == MultiIndex{3});

    auto w = split_by_primes(6, {1});
    REQUIRE(w.size() == 1);
    CHECK(w[0].factor == PresElem::one());
    CHECK(w[0].sub == MultiIndex{1});
}
