/* Multi-index bookkeeping: parsing, Koszul sorting, prime-power
 * classification, and the admissible-set combinatorics feeding the
 * closed formula for the connecting map. */
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pucoh/multiindex.hpp"

using namespace pucoh;

TEST_CASE("parse/format round trip") {
    MultiIndex idx = parse_multiindex("1,2,8");
    REQUIRE(idx.size() == 3);
    CHECK(idx[0] == 1);
    CHECK(idx[1] == 2);
    CHECK(idx[2] == 8);
    CHECK(format_multiindex(idx) == "1,2,8");
    CHECK(format_multiindex(parse_multiindex("5")) == "5");
}

TEST_CASE("validate_multiindex: bounds and strict ascent") {
    CHECK_NOTHROW(validate_multiindex({1, 2, 8}, 8));
    CHECK_NOTHROW(validate_multiindex({8}, 8));
    CHECK_THROWS_AS(validate_multiindex({0}, 8), std::invalid_argument);
    CHECK_THROWS_AS(validate_multiindex({9}, 8), std::invalid_argument);
    CHECK_THROWS_AS(validate_multiindex({2, 1}, 8), std::invalid_argument);
    CHECK_THROWS_AS(validate_multiindex({1, 1}, 8), std::invalid_argument);
    CHECK_THROWS_AS(validate_multiindex({}, 8), std::invalid_argument);
}

TEST_CASE("truncate_top drops the largest entry") {
    CHECK(truncate_top({1, 2, 8}) == MultiIndex{1, 2});
    CHECK(truncate_top({5}) == MultiIndex{});
}

TEST_CASE("sort_with_sign: Koszul signs and squared generators") {
    SortedIndex a = sort_with_sign({2, 1});
    CHECK_FALSE(a.zero);
    CHECK(a.sorted == MultiIndex{1, 2});
    CHECK(a.sign == -1);

    SortedIndex b = sort_with_sign({1, 1});
    CHECK(b.zero);

    /* (3,1,2) has two inversions, so the sign is +1 */
    SortedIndex c = sort_with_sign({3, 1, 2});
    CHECK_FALSE(c.zero);
    CHECK(c.sorted == MultiIndex{1, 2, 3});
    CHECK(c.sign == 1);

    SortedIndex d = sort_with_sign({4});
    CHECK_FALSE(d.zero);
    CHECK(d.sorted == MultiIndex{4});
    CHECK(d.sign == 1);
}

TEST_CASE("as_prime_power_seq: classification inside one prime column") {
    auto s = as_prime_power_seq(8, {1, 2, 8});
    REQUIRE(s.has_value());
    CHECK(s->p == 2);
    CHECK(s->rank == 3);
    CHECK(s->exps == std::vector<int>{0, 1, 3});
    CHECK(s->value(0) == 1);
    CHECK(s->value(2) == 8);
    CHECK(s->values() == std::vector<long>{1, 2, 8});

    /* mixed primes and entries outside Q_p(n) are rejected */
    CHECK_FALSE(as_prime_power_seq(6, {2, 3}).has_value());
    CHECK_FALSE(as_prime_power_seq(6, {1, 2, 3}).has_value());
    CHECK_FALSE(as_prime_power_seq(8, {3}).has_value());
    /* 4 = 2^2 but v_2(6) = 1, so 4 is not in Q_2(6) */
    CHECK_FALSE(as_prime_power_seq(6, {4}).has_value());

    auto t = as_prime_power_seq(12, {4});
    REQUIRE(t.has_value());
    CHECK(t->p == 2);
    CHECK(t->rank == 2);
    CHECK(t->exps == std::vector<int>{2});

    /* the ambiguous singleton {1} lands in the smallest prime column */
    auto u = as_prime_power_seq(6, {1});
    REQUIRE(u.has_value());
    CHECK(u->p == 2);
    CHECK(u->rank == 1);
    CHECK(u->exps == std::vector<int>{0});

    auto v = as_prime_power_seq(9, {3, 9});
    REQUIRE(v.has_value());
    CHECK(v->p == 3);
    CHECK(v->rank == 2);
    CHECK(v->exps == std::vector<int>{1, 2});
}

TEST_CASE("boundary: lowering the top exponent") {
    auto s = as_prime_power_seq(8, {2, 8});
    REQUIRE(s.has_value());
    auto down = boundary(*s);
    REQUIRE(down.has_value());
    CHECK(down->values() == std::vector<long>{2, 4});

    /* {4, 8}: lowering 8 to 4 collides with the neighbour */
    auto t = as_prime_power_seq(8, {4, 8});
    REQUIRE(t.has_value());
    CHECK_FALSE(boundary(*t).has_value());
}

TEST_CASE("admissible_set: S({1,8}) in Q_2(8)") {
    auto idx = as_prime_power_seq(8, {1, 8});
    REQUIRE(idx.has_value());
    auto sets = admissible_set(*idx);
    REQUIRE(sets.size() == 3); /* e_2 - e_1 = 3 */
    CHECK(sets[0].values() == std::vector<long>{2});
    CHECK(sets[1].values() == std::vector<long>{4});
    CHECK(sets[2].values() == std::vector<long>{8});

    CHECK(exponent_drop(*idx, sets[0]) == 2);
    CHECK(exponent_drop(*idx, sets[1]) == 1);
    CHECK(exponent_drop(*idx, sets[2]) == 0);

    CHECK(omega_weight(*idx, sets[0]) == 6);
    CHECK(omega_weight(*idx, sets[1]) == 4);
    CHECK(omega_weight(*idx, sets[2]) == 0);
}

TEST_CASE("admissible_set: two-step sequences enumerate lexicographically") {
    auto idx = as_prime_power_seq(8, {1, 2, 8});
    REQUIRE(idx.has_value());
    auto sets = admissible_set(*idx);
    /* (e_2 - e_1)(e_3 - e_2) = 1 * 2 */
    REQUIRE(sets.size() == 2);
    CHECK(sets[0].values() == std::vector<long>{2, 4});
    CHECK(sets[1].values() == std::vector<long>{2, 8});

    CHECK(exponent_drop(*idx, sets[0]) == 1);
    CHECK(exponent_drop(*idx, sets[1]) == 0);
    /* weight(J) = sum_{s>=2}(p^{e_s} - p^{j_s}) + p^{e_1} - 1 */
    CHECK(omega_weight(*idx, sets[0]) == 4);
    CHECK(omega_weight(*idx, sets[1]) == 0);

    auto pair = as_prime_power_seq(8, {2, 8});
    REQUIRE(pair.has_value());
    auto psets = admissible_set(*pair);
    REQUIRE(psets.size() == 2);
    CHECK(psets[0].values() == std::vector<long>{4});
    CHECK(psets[1].values() == std::vector<long>{8});
}
