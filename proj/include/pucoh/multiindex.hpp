#pragma once
/* Multi-index bookkeeping for exterior generators.  A multi-index
 * I = {i_1 < ... < i_k} names the product of the odd generators of
 * degrees 2i-1; prime-power sequences restrict the entries to powers of
 * a fixed prime and drive the closed formulas for the connecting map. */
#include <optional>
#include <string>
#include <vector>

#include "pucoh/bigint.hpp"

namespace pucoh {

/* strictly increasing positive subscripts; parse/format as "1,2,8" */
using MultiIndex = std::vector<int>;

MultiIndex parse_multiindex(const std::string& text);
std::string format_multiindex(const MultiIndex& idx);

/* throws std::invalid_argument unless 1 <= i_1 < ... < i_k <= n */
void validate_multiindex(const MultiIndex& idx, long n);

/* I with its top element removed */
MultiIndex truncate_top(const MultiIndex& idx);

/* Sorts subscripts of a wedge of odd generators, reporting the Koszul
 * sign; a repeated subscript squares an odd generator, so the result is
 * marked zero.  Zero is a value here, not an error. */
struct SortedIndex {
    MultiIndex sorted;
    int sign;  /* +1 or -1; meaningless when zero */
    bool zero;
};
SortedIndex sort_with_sign(const std::vector<int>& subscripts);

/* I = {p^{e_1} < ... < p^{e_k}} subseteq Q_p(n); exponents ascending.
 * rank = v_p(n), so the ambient set Q_p(n) is {1, p, ..., p^rank}. */
struct PrimePowerSeq {
    long p = 0;
    int rank = 0;
    std::vector<int> exps;

    long value(int s) const;  /* p^{exps[s]} */
    std::vector<long> values() const;
};

/* classify I as a subset of Q_p(n) for a prime p | n; nullopt otherwise.
 * Singleton {1} is ambiguous and classified under the smallest prime. */
std::optional<PrimePowerSeq> as_prime_power_seq(long n, const MultiIndex& idx);

/* I with its top exponent lowered by one step: {p^{e_1},...,p^{e_k - 1}};
 * nullopt marks the zero outcome (the lowered top collides with its
 * neighbour, i.e. the wedge acquires a repeated factor). */
std::optional<PrimePowerSeq> boundary(const PrimePowerSeq& idx);

/* The admissible set S(I): all J = {p^{j_2},...,p^{j_k}} with
 * e_{s-1} < j_s <= e_s for s = 2..k; enumerated in lexicographic order
 * of (j_2,...,j_k).  |S(I)| = prod (e_s - e_{s-1}). */
std::vector<PrimePowerSeq> admissible_set(const PrimePowerSeq& idx);

/* total exponent drop: sum of e_s - j_s over s = 2..k */
long exponent_drop(const PrimePowerSeq& idx, const PrimePowerSeq& j);

/* weight of the omega power attached to J:
 * sum_{s>=2} (p^{e_s} - p^{j_s}) + p^{e_1} - 1 */
Int omega_weight(const PrimePowerSeq& idx, const PrimePowerSeq& j);

}  // namespace pucoh
