#pragma once
/* Brute-force backend: the Koszul-style spectral sequence computing
 * H*(U(n)) and H*(PU(n)) from scratch, used to verify every closed-form
 * output of the rest of the library.
 *
 * The base ring is the coinvariant algebra Z[x_1..x_n]/(e_1..e_n) with
 * Groebner rewriting x_k^(n-k+1) -> lower terms (leading monomials taken
 * in lex order with x_1 < ... < x_n); standard monomials have exponent
 * caps a_k <= n-k and count n!.  The second page is the coinvariant ring
 * tensor an exterior algebra on classes t_0..t_{n-1} (t_0 dropped for
 * the projective quotient); the differential is the derivation with
 * d(t_0) = x_1, d(t_i) = x_{i+1} - x_i.  Homology per bidegree is read
 * off Smith normal forms of the two adjacent differentials. */
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

#include "pucoh/graded.hpp"
#include "pucoh/intlinalg.hpp"
#include "pucoh/multiindex.hpp"

namespace pucoh {

constexpr int kMaxKoszulVars = 8;

using ExpVec = std::array<unsigned char, kMaxKoszulVars>;  /* exponent of x_{v+1} at [v] */
using Poly = std::map<ExpVec, Int>;                        /* raw integer polynomial */

Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_sub(const Poly& a, const Poly& b);
Poly elementary_symmetric(int n, int r);
Poly power_monomial(int var, int e);

class CoinvRing {
public:
    explicit CoinvRing(int n);

    int n() const { return n_; }
    long basis_size() const { return total_; }  /* n! */
    int top_degree() const { return n_ * (n_ - 1) / 2; }

    long code_of(const ExpVec& e) const;  /* standard monomials only */
    ExpVec exp_of(long code) const;
    int degree_of(long code) const;
    const std::vector<long>& basis(int degree) const;  /* codes, ascending */
    long position(int degree, long code) const;        /* index within basis(degree) */

    using Reduced = std::vector<std::pair<long, Int>>;  /* (code, coeff), sorted */
    const Reduced& reduce_monomial(const ExpVec& e);    /* memoized rewriting */
    Reduced reduce(const Poly& p);
    Reduced multiply(long code_a, long code_b);
    Reduced multiply_var(int var, long code);  /* x_{var+1} * monomial */

private:
    int n_;
    long total_;
    std::vector<long> stride_;
    std::vector<std::vector<ExpVec>> tail_;  /* rewriting tails per variable */
    std::vector<std::vector<long>> by_degree_;
    std::unordered_map<std::uint64_t, Reduced> memo_;
};

/* term of the second page: standard monomial code tensor a t-subset */
struct E2Key {
    std::uint32_t tmask;
    long code;
    auto operator<=>(const E2Key&) const = default;
};
using E2Elem = std::map<E2Key, Int>;

enum class Ambient { full, projective };  /* with or without t_0 */

struct BidegreeGroup {
    int xdeg, q;
    AbelianGroup group;
};

class KoszulPage {
public:
    explicit KoszulPage(int n);

    CoinvRing& ring() { return ring_; }
    int n() const { return n_; }

    /* --- element algebra --- */
    E2Elem scale(const E2Elem& z, const Int& c) const;
    E2Elem add(const E2Elem& a, const E2Elem& b) const;
    E2Elem sub(const E2Elem& a, const E2Elem& b) const;
    E2Elem mul(const E2Elem& a, const E2Elem& b);
    E2Elem mul_poly(const CoinvRing::Reduced& p, const E2Elem& z);
    E2Elem d2(const E2Elem& z);
    /* bidegree (xdeg, q) of a bihomogeneous element; throws on mixed */
    std::pair<int, int> bidegree(const E2Elem& z) const;

    /* --- cochain constructions --- */
    std::vector<Poly> taylor_components(const Poly& h) const;
    E2Elem hat_lift(const Poly& h);       /* d2(hat_lift(h)) = reduce(h) tensor 1 */
    const E2Elem& sym_cocycle(int r);     /* lift of e_r; d2-closed */
    E2Elem sym_cocycle_pu(int r);         /* t_0-free part; d2' sends it to -C(n,r) x_1^r */
    const E2Elem& omega_order_witness(int r);  /* solves d2'(w) = b_{n,r} x_1^r */
    const E2Elem& rho_cocycle(int r);     /* d2'-closed lift representing rho_{2r-1} */

    /* --- chain-level connecting map --- */
    E2Elem pu_component(const E2Elem& z) const;     /* terms without t_0 */
    E2Elem theta_component(const E2Elem& z) const;  /* signed t_0 coefficient */

    /* --- bidegree bases, differentials, homology --- */
    const std::vector<E2Key>& basis(Ambient amb, int xdeg, int q);
    std::vector<Int> coords(const E2Elem& z, Ambient amb, int xdeg, int q);
    /* matrix of d2 from (xdeg, q) to (xdeg+1, q-1) */
    SparseIntMatrix d2_matrix(Ambient amb, int xdeg, int q);
    const SmithResult& d2_smith(Ambient amb, int xdeg, int q);
    AbelianGroup e3_group(Ambient amb, int xdeg, int q);

    /* order of the class of x_1^r in the fiber-degree-0 homology */
    Int omega_class_order(int r);
    /* does the product of the rho cocycles generate the top corner? */
    bool top_product_generates();
    /* is z (a d2'-cocycle at its bidegree) a coboundary? */
    bool is_coboundary(const E2Elem& z, Ambient amb);
    /* solve d2(w) = z; nullopt if z is not a coboundary */
    std::optional<E2Elem> coboundary_witness(const E2Elem& z, Ambient amb);

    /* theta(hat e_I) resolved in the frame {x_1^a * rho-cocycle products}
     * modulo coboundaries; verification failure throws std::logic_error */
    PresElem oracle_theta(const MultiIndex& idx);
    /* chain image of a presentation element: sum c x_1^a rho_J -> E2 */
    E2Elem chainify(const PresElem& x);

private:
    int n_;
    CoinvRing ring_;
    std::map<int, E2Elem> sym_cache_, witness_cache_, rho_cache_;
    std::map<std::tuple<int, int, int>, std::vector<E2Key>> basis_cache_;
    std::map<std::tuple<int, int, int>, SmithResult> smith_cache_;
    std::uint32_t allowed_bits(Ambient amb) const;
};

}  // namespace pucoh
