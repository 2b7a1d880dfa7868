#pragma once
/* Exact arithmetic in the two graded rings the computation lives in:
 *   - the exterior algebra on odd generators xi_{2k-1}, k = 1..n;
 *   - Q[w] tensor the exterior algebra on rho_{2k-1}, k = 2..n,
 * with w of degree 2.  Monomials in the odd generators are bitmasks
 * (bit k = subscript k), so Koszul signs are popcount arithmetic.
 * Rational coefficients appear only transiently (denominators are
 * p-powers inside the connecting-map recursion); final values must pass
 * assert_integral. */
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "pucoh/bigint.hpp"

namespace pucoh {

/* set of odd-generator subscripts: bit k set = subscript k present (k <= 62) */
using RhoSet = std::uint64_t;

RhoSet rho_set(const std::vector<int>& subscripts);
std::vector<int> rho_list(RhoSet s);
int rho_degree(RhoSet s);  /* sum of 2k-1 over members */

/* Koszul sign of merging two disjoint ascending blocks of odd generators;
 * 0 when they intersect (a squared odd generator vanishes). */
int merge_sign(RhoSet a, RhoSet b);

struct Degree {
    enum Kind { zero, homogeneous, mixed } kind;
    int value;  /* meaningful only when homogeneous */
};

struct IntegralityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/* --- exterior algebra on xi_{2k-1}, integer coefficients --- */
struct ExtElem {
    std::map<RhoSet, Int> terms;  /* mask -> coefficient, zero coeffs never stored */

    static ExtElem generator(int k);
    static ExtElem monomial(const Int& coeff, RhoSet mask);

    ExtElem& operator+=(const ExtElem& o);
    ExtElem operator*(const ExtElem& o) const;
    bool operator==(const ExtElem& o) const = default;
    bool is_zero() const { return terms.empty(); }
    Degree degree() const;
};

/* --- Q[w] tensor exterior algebra on rho_{2k-1} --- */
struct PresKey {
    int omega;    /* exponent of w */
    RhoSet rho;   /* subscript set */
    int degree() const { return 2 * omega + rho_degree(rho); }
    bool operator==(const PresKey& o) const = default;
};

/* canonical term order: total degree, then w-exponent, then lexicographic
 * comparison of the ascending subscript lists */
struct PresKeyLess {
    bool operator()(const PresKey& a, const PresKey& b) const;
};

struct PresElem {
    std::map<PresKey, Rat, PresKeyLess> terms;  /* zero coeffs never stored */

    static PresElem zero() { return {}; }
    static PresElem one();
    static PresElem term(const Rat& coeff, int omega, RhoSet rho);
    static PresElem omega_power(int a);
    static PresElem rho_single(int k);

    PresElem& operator+=(const PresElem& o);
    PresElem& operator-=(const PresElem& o);
    PresElem operator+(const PresElem& o) const;
    PresElem operator-(const PresElem& o) const;
    PresElem operator*(const PresElem& o) const;
    PresElem operator*(const Rat& c) const;
    PresElem operator-() const;
    bool operator==(const PresElem& o) const = default;

    bool is_zero() const { return terms.empty(); }
    Degree degree() const;
    bool is_integral() const;
    /* returns *this; throws IntegralityError naming the offending term */
    const PresElem& assert_integral() const;

    /* first term in canonical order; element must be nonzero */
    std::pair<PresKey, Rat> leading_term() const;
    /* sign-normalized: leading coefficient positive */
    PresElem normalized() const;
};

/* rendering; subscripts are odd degrees 2k-1 in text/latex, k in json */
std::string to_text(const PresElem& x);
std::string to_latex(const PresElem& x);
nlohmann::json to_json(const PresElem& x);
PresElem pres_from_json(const nlohmann::json& j);

}  // namespace pucoh
