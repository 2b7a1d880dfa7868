/* The ring presentation layer: omega order ladders, the R_I relation
 * rows, the emitted presentation per n, per-degree groups, the p-primary
 * pages, and the serializers.  Relation tables are frozen from hand
 * computations through the recursion; the exhaustive-row cross-checks
 * confirm that dropping mixed-prime indices loses nothing. */
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <bit>
#include <stdexcept>
#include <string>
#include <vector>

#include "pucoh/arithmetic.hpp"
#include "pucoh/gysin.hpp"
#include "pucoh/presentation.hpp"

using namespace pucoh;

namespace {

PresElem t(long c, int omega, std::vector<int> rho) {
    return PresElem::term(Rat(Int(c)), omega, rho_set(rho));
}

/* relation list -> "provenance: text" lines, for compact table compares */
std::vector<std::string> table_of(const std::vector<Relation>& rels) {
    std::vector<std::string> out;
    for (const Relation& r : rels) out.push_back(r.provenance + ": " + to_text(r.value));
    return out;
}

PrimePowerSeq seq(long n, const MultiIndex& idx) {
    auto s = as_prime_power_seq(n, idx);
    REQUIRE(s.has_value());
    return *s;
}

/* w * theta rows over every index subset of {1..n} of size >= 2, plus the
 * omega order ladder: the unabridged presentation */
std::vector<Relation> exhaustive_rows(long n) {
    std::vector<Relation> rows = omega_order_relations(n);
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        if (std::popcount(mask) < 2) continue;
        MultiIndex idx;
        for (int i = 1; i <= n; ++i)
            if (mask & (1u << (i - 1))) idx.push_back(i);
        PresElem th = theta(n, idx);
        if (th.is_zero()) continue;
        rows.push_back({(PresElem::omega_power(1) * th).normalized(),
                        "I=" + format_multiindex(idx)});
    }
    return rows;
}

}  // namespace

TEST_CASE("j_ring: order ladder of a prime power") {
    auto j8 = j_ring(2, 3);
    CHECK(table_of(j8) == std::vector<std::string>{
              "order r=1: 8*w",
              "order r=2: 4*w^2",
              "order r=4: 2*w^4",
              "order r=8: w^8",
          });
    auto j9 = j_ring(3, 2);
    CHECK(table_of(j9) == std::vector<std::string>{
              "order r=1: 9*w",
              "order r=3: 3*w^3",
              "order r=9: w^9",
          });
    CHECK_THROWS_AS(j_ring(6, 1), std::invalid_argument);
    CHECK_THROWS_AS(j_ring(4, 1), std::invalid_argument);
    CHECK_THROWS_AS(j_ring(2, 0), std::invalid_argument);
}

TEST_CASE("omega_order_relations: one row per gcd drop") {
    CHECK(table_of(omega_order_relations(2)) ==
          std::vector<std::string>{"order r=1: 2*w", "order r=2: w^2"});
    CHECK(table_of(omega_order_relations(3)) ==
          std::vector<std::string>{"order r=1: 3*w", "order r=3: w^3"});
    CHECK(table_of(omega_order_relations(6)) ==
          std::vector<std::string>{"order r=1: 6*w", "order r=2: 3*w^2", "order r=3: w^3"});
    CHECK(table_of(omega_order_relations(12)) ==
          std::vector<std::string>{"order r=1: 12*w", "order r=2: 6*w^2", "order r=3: 2*w^3",
                                   "order r=4: w^4"});

    /* prime power n: the ladder is the J ring of that prime power */
    CHECK(table_of(omega_order_relations(8)) == table_of(j_ring(2, 3)));
    CHECK(table_of(omega_order_relations(9)) == table_of(j_ring(3, 2)));

    /* coefficients are the binomial gcds, ending at 1, powers increasing */
    for (long n : {2L, 5L, 6L, 12L, 30L, 60L}) {
        auto rows = omega_order_relations(n);
        REQUIRE(!rows.empty());
        int prev = 0;
        for (const Relation& row : rows) {
            REQUIRE(row.value.terms.size() == 1);
            const auto& [key, coeff] = *row.value.terms.begin();
            CHECK(coeff == Rat(binomial_gcd(n, key.omega)));
            CHECK(key.omega > prev);
            prev = key.omega;
        }
        CHECK(rows.back().value.terms.begin()->second == Rat(Int(1)));
    }
}

TEST_CASE("relation_R: frozen rows in the 2-column of n = 8") {
    CHECK(to_text(relation_R(8, seq(8, {1, 2}))) == "4*w*r3");
    CHECK(to_text(relation_R(8, seq(8, {1, 4}))) == "4*w*r7+2*w^3*r3");
    CHECK(to_text(relation_R(8, seq(8, {1, 8}))) == "4*w*r15+2*w^5*r7+w^7*r3");
    CHECK(to_text(relation_R(8, seq(8, {2, 4}))) == "2*w^2*r7");
    CHECK(to_text(relation_R(8, seq(8, {2, 8}))) == "2*w^2*r15+w^6*r7");
    CHECK(to_text(relation_R(8, seq(8, {4, 8}))) == "w^4*r15");
    CHECK(to_text(relation_R(8, seq(8, {1, 2, 4}))) == "2*w*r3r7");
    CHECK(to_text(relation_R(8, seq(8, {1, 2, 8}))) == "2*w*r3r15+w^5*r3r7");
    CHECK(to_text(relation_R(8, seq(8, {1, 4, 8}))) == "2*w*r7r15+w^3*r3r15");
    CHECK(to_text(relation_R(8, seq(8, {2, 4, 8}))) == "w^2*r7r15");
    CHECK(to_text(relation_R(8, seq(8, {1, 2, 4, 8}))) == "w*r3r7r15");
}

TEST_CASE("relation_R: w*theta is a unit multiple, any n") {
    /* w * theta(xi_I) = (-1)^(k-1) * C(n,p^{e_1})/p^(rank-e_1) * R_I */
    auto check_unit = [](long n, const MultiIndex& idx) {
        PrimePowerSeq s = seq(n, idx);
        Int u = binomial(n, s.value(0));
        for (int i = s.exps[0]; i < s.rank; ++i) u = u / Int(s.p);
        Rat unit(u);
        if (idx.size() % 2 == 0) unit = -unit;
        CHECK(PresElem::omega_power(1) * theta(n, idx) == relation_R(n, s) * unit);
    };
    for (unsigned mask = 1; mask < 16; ++mask) {
        if (std::popcount(mask) < 2) continue;
        MultiIndex idx;
        for (int i = 0; i < 4; ++i)
            if (mask & (1u << i)) idx.push_back(1 << i);
        check_unit(8, idx);
    }
    check_unit(6, {1, 2});
    check_unit(6, {1, 3});
    check_unit(12, {1, 2, 4});
    check_unit(12, {2, 4});
    check_unit(12, {1, 3});

    /* the multiplier for n = 6 on the 2-column is the odd part 3 */
    CHECK(to_text(relation_R(6, seq(6, {1, 2}))) == "w*r3");
    CHECK(PresElem::omega_power(1) * theta(6, {1, 2}) ==
          relation_R(6, seq(6, {1, 2})) * Rat(Int(-3)));
}

TEST_CASE("relation_R: validation") {
    CHECK_THROWS_AS(relation_R(8, seq(8, {4})), std::invalid_argument);
    /* a sequence whose rank disagrees with v_p(n) is rejected */
    PrimePowerSeq bad;
    bad.p = 2;
    bad.rank = 2;
    bad.exps = {0, 1};
    CHECK_THROWS_AS(relation_R(8, bad), std::invalid_argument);
}

TEST_CASE("present: prime power n keeps the positive R_I rows") {
    CHECK(table_of(present(2).relations) == std::vector<std::string>{
              "order r=1: 2*w",
              "order r=2: w^2",
              "I=1,2: w*r3",
          });
    CHECK(table_of(present(3).relations) == std::vector<std::string>{
              "order r=1: 3*w",
              "order r=3: w^3",
              "I=1,3: w*r5",
          });
    CHECK(table_of(present(4).relations) == std::vector<std::string>{
              "order r=1: 4*w",
              "order r=2: 2*w^2",
              "order r=4: w^4",
              "I=1,2: 2*w*r3",
              "I=1,4: 2*w*r7+w^3*r3",
              "I=2,4: w^2*r7",
              "I=1,2,4: w*r3r7",
          });
    CHECK(table_of(present(8).relations) == std::vector<std::string>{
              "order r=1: 8*w",
              "order r=2: 4*w^2",
              "order r=4: 2*w^4",
              "order r=8: w^8",
              "I=1,2: 4*w*r3",
              "I=1,4: 4*w*r7+2*w^3*r3",
              "I=1,8: 4*w*r15+2*w^5*r7+w^7*r3",
              "I=2,4: 2*w^2*r7",
              "I=2,8: 2*w^2*r15+w^6*r7",
              "I=4,8: w^4*r15",
              "I=1,2,4: 2*w*r3r7",
              "I=1,2,8: 2*w*r3r15+w^5*r3r7",
              "I=1,4,8: 2*w*r7r15+w^3*r3r15",
              "I=2,4,8: w^2*r7r15",
              "I=1,2,4,8: w*r3r7r15",
          });
    CHECK(table_of(present(9).relations) == std::vector<std::string>{
              "order r=1: 9*w",
              "order r=3: 3*w^3",
              "order r=9: w^9",
              "I=1,3: 3*w*r5",
              "I=1,9: 3*w*r17+w^7*r5",
              "I=3,9: w^3*r17",
              "I=1,3,9: w*r5r17",
          });
}

TEST_CASE("present: composite n keeps sign-normalized w*theta rows") {
    /* taking R_I verbatim would drop the binomial multipliers that carry
     * the cross-prime torsion (H^7 of PU(6) needs 2*w*r5, not w*r5) */
    CHECK(table_of(present(6).relations) == std::vector<std::string>{
              "order r=1: 6*w",
              "order r=2: 3*w^2",
              "order r=3: w^3",
              "I=1,2: 3*w*r3",
              "I=1,3: 2*w*r5",
          });
    CHECK(table_of(present(12).relations) == std::vector<std::string>{
              "order r=1: 12*w",
              "order r=2: 6*w^2",
              "order r=3: 2*w^3",
              "order r=4: w^4",
              "I=1,2: 6*w*r3",
              "I=1,4: 6*w*r7+3*w^3*r3",
              "I=2,4: 33*w^2*r7",
              "I=1,2,4: 3*w*r3r7",
              "I=1,3: 4*w*r5",
          });

    CHECK_THROWS_AS(present(1), std::invalid_argument);
    CHECK_THROWS_AS(present(21), ResourceLimitError);
    CHECK(present(20).relations.size() == 9);
}

TEST_CASE("present: mixed-prime indices land in the relation ideal") {
    /* the one subset of {1..8} whose w*theta row survives both the order
     * reduction and the multiple filter; it still lies in the ideal */
    CHECK(theta(8, {3, 4, 8}) == t(14, 2, {4, 8}) + t(-7, 3, {3, 8}));
    CHECK(in_relation_ideal(8, present(8).relations,
                            PresElem::omega_power(1) * theta(8, {3, 4, 8})));
    CHECK(in_relation_ideal(6, present(6).relations,
                            PresElem::omega_power(1) * theta(6, {2, 3})));

    /* the unabridged presentation gives the same groups in every degree */
    for (long n : {6L, 12L}) {
        int d_max = n == 6 ? 37 : 16;
        auto lhs = groups_from_relations(n, exhaustive_rows(n), d_max, 0,
                                         static_cast<int>(n) - 1);
        auto rhs = groups_by_degree(n, d_max);
        for (int d = 0; d <= d_max; ++d)
            CHECK(group_text(lhs.at(d)) == group_text(rhs.at(d)));
    }
}

TEST_CASE("groups_by_degree: frozen tables") {
    auto g2 = groups_by_degree(2);
    CHECK(g2.size() == 6); /* degrees 0..n^2+1 */
    CHECK(group_text(g2.at(0)) == "Z");
    CHECK(group_text(g2.at(1)) == "0");
    CHECK(group_text(g2.at(2)) == "Z/2");
    CHECK(group_text(g2.at(3)) == "Z");
    CHECK(group_text(g2.at(4)) == "0");
    CHECK(group_text(g2.at(5)) == "0");

    CHECK(groups_to_text(groups_by_degree(3, 8)) ==
          "deg 0: Z\n"
          "deg 1: 0\n"
          "deg 2: Z/3\n"
          "deg 3: Z\n"
          "deg 4: Z/3\n"
          "deg 5: Z+Z/3\n"
          "deg 6: 0\n"
          "deg 7: Z/3\n"
          "deg 8: Z\n");

    auto g6 = groups_by_degree(6, 8);
    CHECK(group_text(g6.at(2)) == "Z/6");
    CHECK(group_text(g6.at(5)) == "Z+Z/3");
    CHECK(group_text(g6.at(7)) == "Z+Z/6");

    CHECK_THROWS_AS(groups_by_degree(1), std::invalid_argument);
    CHECK_THROWS_AS(groups_by_degree(3, 11), std::invalid_argument);
}

TEST_CASE("ambient_basis and relation_matrix in one degree") {
    auto basis = ambient_basis(3, 5, 0, 2);
    REQUIRE(basis.size() == 2);
    CHECK(basis[0].omega == 0);
    CHECK(basis[0].rho == rho_set({3}));
    CHECK(basis[1].omega == 1);
    CHECK(basis[1].rho == rho_set({2}));
    CHECK(ambient_basis(3, 5, 1, 2).size() == 1);
    CHECK(ambient_basis(3, -1, 0, 2).empty());
    CHECK(ambient_basis(3, 4, 3, 2).empty());

    /* degree 5 of PU(3): one relation multiple, 3w * r3 */
    SparseIntMatrix m = relation_matrix(3, present(3).relations, 5, 0, 2);
    CHECK(m.rows == 1);
    CHECK(m.cols == 2);
    CHECK(m.get(0, 1) == Int(3));
    AbelianGroup g = cokernel_invariants(m);
    CHECK(group_text(g) == "Z+Z/3");
}

TEST_CASE("in_relation_ideal: membership decisions") {
    auto rels = present(3).relations;
    CHECK(in_relation_ideal(3, rels, t(3, 1, {2})));
    CHECK(in_relation_ideal(3, rels, t(1, 4, {})));
    CHECK(in_relation_ideal(3, rels, t(3, 1, {2}) + t(1, 4, {})));
    CHECK(in_relation_ideal(3, rels, PresElem::zero()));
    CHECK(in_relation_ideal(3, rels, PresElem::omega_power(1) * theta(3, {2, 3})));
    CHECK_FALSE(in_relation_ideal(3, rels, t(1, 1, {2})));
    /* w-free elements are never in the w-divisible ideal */
    CHECK_FALSE(in_relation_ideal(3, rels, t(1, 0, {2})));
}

TEST_CASE("exterior_rank") {
    CHECK(exterior_rank(2, 3, 0) == 1);
    CHECK(exterior_rank(2, 3, 3) == 1);
    CHECK(exterior_rank(2, 3, 5) == 1);
    CHECK(exterior_rank(2, 3, 8) == 1);
    CHECK(exterior_rank(2, 3, 4) == 0);
    CHECK(exterior_rank(2, 8, 15) == 2); /* rho_8 and rho_2 rho_3 rho_4 */
    for (int n = 2; n <= 6; ++n) {
        long total = 0;
        for (int d = 0; d <= n * n; ++d) total += exterior_rank(2, n, d);
        CHECK(total == (1L << (n - 1)));
    }
}

TEST_CASE("sigma_p_groups: p-primary pages") {
    auto s4 = sigma_p_groups(4, 2, 7);
    CHECK(group_text(s4.at(2)) == "Z/4");
    CHECK(group_text(s4.at(5)) == "Z/2");
    CHECK(group_text(s4.at(7)) == "Z/2+Z/4");

    CHECK(group_text(sigma_p_groups(6, 2, 5).at(2)) == "Z/2");
    CHECK(group_text(sigma_p_groups(6, 3, 5).at(2)) == "Z/3");
    CHECK(group_text(sigma_p_groups(12, 2, 4).at(2)) == "Z/4");
    CHECK(group_text(sigma_p_groups(12, 3, 4).at(2)) == "Z/3");

    CHECK_THROWS_AS(sigma_p_groups(6, 5, 10), std::invalid_argument);
}

TEST_CASE("primary_decomposition: free part plus p-primary pages") {
    PrimaryDecomposition pd4 = primary_decomposition(4);
    CHECK(pd4.ok());
    CHECK(pd4.failures.empty());
    CHECK(pd4.free_by_degree.at(5) == 1);
    CHECK(pd4.free_by_degree.at(4) == 0);
    CHECK(pd4.sigma.size() == 1);
    CHECK(group_text(pd4.sigma.at(2).at(5)) == "Z/2");

    /* squarefree n: both pages have the one-ladder shape */
    PrimaryDecomposition pd6 = primary_decomposition(6);
    CHECK(pd6.ok());
    CHECK(group_text(pd6.sigma.at(2).at(2)) == "Z/2");
    CHECK(group_text(pd6.sigma.at(3).at(2)) == "Z/3");

    /* n = 12: the 2-page reduces to the page of 4 tensor an exterior part */
    PrimaryDecomposition pd12 = primary_decomposition(12, 16);
    CHECK(pd12.ok());
    CHECK(pd12.sigma.size() == 2);
}

TEST_CASE("sanity_suite") {
    auto checks3 = sanity_suite(3);
    std::vector<std::string> names;
    for (const auto& c : checks3) {
        CHECK(c.pass);
        names.push_back(c.name);
    }
    CHECK(names == std::vector<std::string>{
              "vanishing above the dimension",
              "top group H^{n^2-1}",
              "H^3",
              "H^2",
              "total free rank",
              "c_2 multiplier",
          });
    for (const auto& c : sanity_suite(4)) {
        CHECK(c.pass);
        if (c.name == "c_2 multiplier") CHECK(c.expected == "2");
        if (c.name == "total free rank") CHECK(c.expected == "8");
    }
}

TEST_CASE("serializers: text") {
    CHECK(presentation_to_text(present(2)) ==
          "H*(PU(2))\n"
          "generators: w (deg 2), r3 (deg 3)\n"
          "relations:\n"
          "  [order r=1] 2*w\n"
          "  [order r=2] w^2\n"
          "  [I=1,2] w*r3\n");
}

TEST_CASE("serializers: latex") {
    CHECK(presentation_to_latex(present(3)) ==
          "$\\left\\langle 3\\omega ,\\omega ^{3}\\right\\rangle $\n"
          "\\begin{tabular}{l|l}\n"
          "\\hline\\hline\n"
          "$I$ & $R_{I}$ \\\\ \\hline\\hline\n"
          "$\\{1,3\\}$ & $\\omega \\otimes \\rho _{5}$ \\\\ \\hline\n"
          "\\end{tabular}\n");
}

TEST_CASE("serializers: json") {
    nlohmann::json j = presentation_to_json(present(3));
    CHECK(j["n"] == 3);
    REQUIRE(j["generators"].size() == 3);
    CHECK(j["generators"][0]["name"] == "w");
    CHECK(j["generators"][0]["deg"] == 2);
    CHECK(j["generators"][1]["name"] == "r2");
    CHECK(j["generators"][1]["deg"] == 3);
    CHECK(j["generators"][2]["name"] == "r3");
    CHECK(j["generators"][2]["deg"] == 5);
    REQUIRE(j["relations"].size() == 3);
    CHECK(j["relations"][2]["provenance"] == "I=1,3");
    CHECK(j["relations"][2]["terms"] == to_json(t(1, 1, {3})));

    nlohmann::json g = groups_to_json(groups_by_degree(3, 8));
    REQUIRE(g.size() == 9);
    CHECK(g[2]["degree"] == 2);
    CHECK(g[2]["free_rank"] == 0);
    CHECK(g[2]["torsion"] == nlohmann::json::array({"3"}));
    CHECK(g[5]["free_rank"] == 1);
}
