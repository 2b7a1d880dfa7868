#pragma once
/* The deliverable: H*(PU(n)) as a presented ring and as exact per-degree
 * abelian groups.
 *
 * Generators: w (degree 2) and rho_{2k-1} for k = 2..n.  Relations come in
 * two families:
 *   - w-power orders b_{n,r} w^r, where b_{n,r} = gcd(C(n,1..r));
 *   - one row per multi-index I with |I| >= 2, namely w * theta(xi_I),
 *     up to a normalization described at present().
 * Per-degree groups are cokernels of the integer matrix whose rows are all
 * monomial multiples of the relations landing in that degree. */
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "pucoh/graded.hpp"
#include "pucoh/intlinalg.hpp"
#include "pucoh/multiindex.hpp"

namespace pucoh {

/* thrown when a request is structurally valid but too large to honor
 * (relation enumeration is exponential in n) */
struct ResourceLimitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Relation {
    PresElem value;          /* homogeneous, integral, leading coefficient > 0 */
    std::string provenance;  /* "order r=2" or "I=1,2,4" */
};

struct RingPresentation {
    long n = 0;
    std::vector<Relation> relations;
};

/* positive part of the p-primary w-ring: rows p^{r-s} w^{p^s} for s = 0..r */
std::vector<Relation> j_ring(long p, int r);

/* minimal set of w-power orders for general n: b_{n,1} w and afterwards
 * b_{n,r} w^r exactly where the gcd drops, ending at the first b_{n,r} = 1.
 * For n = p^r this reproduces j_ring(p, r). */
std::vector<Relation> omega_order_relations(long n);

/* The distinguished relation row attached to a prime-power index sequence
 * I = {p^{e_1} < ... < p^{e_k}}, k >= 2 (all coefficients positive powers
 * of p):
 *     R_I = sum over admissible J of p^{r - e_1 - (k-1) - drop(J)}
 *           * w^{weight(J) + 1} * rho_J,
 * where r is the multiplicity of p in n.  Equals w * theta(n, I) times the
 * unit (-1)^{k-1} C(n, p^{e_1}) / p^{r - e_1}, which is coprime to p. */
PresElem relation_R(long n, const PrimePowerSeq& idx);

/* Full presentation: the w-power orders followed by one index row per
 * I inside Q_p(n) = {1, p, ..., p^{v_p(n)}} with |I| >= 2, for each prime
 * p dividing n (primes ascending; subsets smallest-first, then
 * lexicographic).  Indices meeting several prime columns contribute no
 * row of their own: their w * theta values are integral combinations of
 * the column rows, a reduction the verification suite re-checks by
 * comparing per-degree groups against the exhaustive row list.  When n is
 * a prime power the rows are emitted in the positive R_I form (same
 * ideal: the connecting unit is invertible against the w-power orders);
 * otherwise rows are sign-normalized w * theta values.  A candidate row
 * is dropped when its termwise reduction modulo the orders vanishes or
 * when it (or its reduction) is a monomial multiple of a row already
 * kept. */
RingPresentation present(long n);

/* ambient monomials w^a rho_J of the given total degree, J subset of {2..n},
 * omega_min <= a <= omega_cap, in canonical term order */
std::vector<PresKey> ambient_basis(long n, int degree, int omega_min, int omega_cap);

/* rows = monomial multiples of the relations landing in the degree, columns
 * = ambient_basis; terms whose w-exponent exceeds omega_cap are dropped,
 * which is exact as long as the relation list contains a unit w-power (all
 * lists produced here do) */
SparseIntMatrix relation_matrix(long n, const std::vector<Relation>& rels, int degree,
                                int omega_min, int omega_cap);

/* true when the homogeneous integral x lies in the span of the relation
 * multiples of its degree (i.e. vanishes in the presented ring) */
bool in_relation_ideal(long n, const std::vector<Relation>& rels, const PresElem& x);

/* per-degree cokernels for an arbitrary relation list (used for the
 * two-presentations consistency check); jobs > 1 runs degrees in parallel */
std::map<int, AbelianGroup> groups_from_relations(long n, const std::vector<Relation>& rels,
                                                  int d_max, int omega_min, int omega_cap,
                                                  int jobs = 1);

/* H^d(PU(n)) for 0 <= d <= d_max (default cap n^2 + 1 witnesses top-degree
 * vanishing); computed from present(n) */
std::map<int, AbelianGroup> groups_by_degree(long n, int d_max = -1, int jobs = 1);

/* number of square-free monomials rho_J, J subset of {lo..hi}, of degree d
 * (coefficient of t^d in prod_{k=lo..hi} (1 + t^{2k-1})) */
long exterior_rank(int lo, int hi, int degree);

/* p-primary component by degree: positive w-part of the p-ladder tensor the
 * full exterior algebra, modulo the R_I rows for I inside the p-column */
std::map<int, AbelianGroup> sigma_p_groups(long n, long p, int d_max, int jobs = 1);

struct PrimaryDecomposition {
    long n = 0;
    int d_max = 0;
    std::map<int, long> free_by_degree;                 /* exterior part */
    std::map<long, std::map<int, AbelianGroup>> sigma;  /* prime -> degree -> group */
    /* failed structure checks, empty when everything matches */
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

/* Splits groups_by_degree into free part + p-primary components and checks
 * the expected shape: reassembly matches, the free part has Poincare
 * polynomial prod_{i=2..n} (1 + t^{2i-1}), sigma_p is killed by p^{v_p(n)},
 * sigma_p(n) = sigma_p(p^r) tensor the exterior algebra on the remaining
 * generators, and for squarefree n each sigma_p is the explicit one-ladder
 * tensor product.  Mismatches are reported, not thrown. */
PrimaryDecomposition primary_decomposition(long n, int d_max = -1, int jobs = 1);

struct SanityCheck {
    std::string name;
    std::string expected;
    std::string computed;
    bool pass = false;
};

/* the fixed facts every n must satisfy: vanishing above the dimension,
 * H^{n^2-1} = Z, H^3 = Z, H^2 = Z/n, total free rank 2^{n-1}, and the
 * parity rule for the c_2 multiplier */
std::vector<SanityCheck> sanity_suite(long n, int jobs = 1);

/* serializers */
nlohmann::json presentation_to_json(const RingPresentation& pres);
std::string presentation_to_text(const RingPresentation& pres);
std::string presentation_to_latex(const RingPresentation& pres);
nlohmann::json groups_to_json(const std::map<int, AbelianGroup>& groups);
std::string groups_to_text(const std::map<int, AbelianGroup>& groups);

}  // namespace pucoh
