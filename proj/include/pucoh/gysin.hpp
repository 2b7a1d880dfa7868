#pragma once
/* The connecting operator of the Gysin sequence of the circle bundle
 * U(n) -> PU(n), evaluated on monomials of the exterior generators.
 * theta is computed by a top-down recursion whose intermediate values
 * live in Q[w] tensor the rho-exterior algebra (denominators are powers
 * of the relevant prime); every returned value is verified integral.
 * For indices inside a single prime column there is also a closed
 * formula, kept in two variants: the corrected exponent used everywhere,
 * and an uncorrected variant retained for documentation tests. */
#include <vector>

#include "pucoh/graded.hpp"
#include "pucoh/multiindex.hpp"

namespace pucoh {

/* theta(xi_{2k-1}) = C(n,k) w^(k-1) */
PresElem theta_generator(long n, int k);

/* theta on a monomial xi_I, I subseteq {1..n}; memoized per (n, I) */
PresElem theta(long n, const MultiIndex& idx);

enum class ClosedExponent { corrected, printed };

/* closed form for I = {p^{e_1} < ... < p^{e_k}} subseteq Q_p(n), k >= 2:
 * (-1)^(k-1) u * sum over admissible J of
 *   p^(rank - e_1 - (k-1) - drop(J)) w^(weight(J)) rho_J
 * where u = C(n, p^{e_1}) / p^(rank - e_1).  The 'printed' variant omits
 * the -(k-1) in the exponent. */
PresElem theta_closed(long n, const PrimePowerSeq& idx,
                      ClosedExponent mode = ClosedExponent::corrected);

/* Decomposition of theta(xi_I) along the prime support of I:
 * theta(xi_I) = sum of factor * theta(xi_sub) over the returned terms.
 * An empty list means theta(xi_I) = 0 (I pulls back from the projective
 * group).  Entry 1 of I rides along inside each sub-index. */
struct ThetaSplitTerm {
    PresElem factor;
    MultiIndex sub;
};
std::vector<ThetaSplitTerm> split_by_primes(long n, const MultiIndex& idx);

}  // namespace pucoh
