#pragma once
/* Cross-checks between independent routes to the same answers: the
 * recursion for the connecting map against its closed form, identities
 * that hold modulo the relation ideal, and — for small n — the ring
 * presentation against a brute-force page built from the Koszul complex
 * of the flag manifold.  Every check reports a (name, expected, computed)
 * triple so a failure is directly inspectable. */
#include <string>
#include <vector>

#include "json.hpp"

#include "pucoh/presentation.hpp"

namespace pucoh {

struct VerifyReport {
    long n = 0;
    std::vector<SanityCheck> checks;

    bool ok() const;
    long failures() const;
    void merge(const VerifyReport& o);  /* append o's checks; same n */
};

std::string report_to_text(const VerifyReport& r);
nlohmann::json report_to_json(const VerifyReport& r);

/* theta by recursion vs the closed formula on every I subseteq Q_p(n)
 * with |I| >= 2, for each prime p | n; also pins w*theta(xi_I) against
 * the presentation row R_I times its unit. */
VerifyReport verify_closed_form(long n);

/* identities that hold in the quotient ring, checked by ideal membership:
 * the prime-column splitting of theta, and the torsion statements for
 * prime-pure indices.  Exponential in n; refuses n > 10. */
VerifyReport verify_identities(long n);

/* everything that needs the brute-force page: per-degree groups against
 * the direct sum of E3 terms of PU(n), the free control case U(n), theta
 * against the chain-level oracle, omega orders, and the cocycle suite.
 * The group and theta sweeps run for n <= 6, the cocycle suite for n <= 8;
 * larger n is refused.  d_max windows the per-degree sweeps (-1 = all). */
VerifyReport verify_oracle(long n, int jobs = 1, int d_max = -1);

/* union of the above, sized to what is feasible for the given n */
VerifyReport verify_all(long n, int jobs = 1);

}  // namespace pucoh
