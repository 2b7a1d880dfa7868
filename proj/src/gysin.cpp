#include "pucoh/gysin.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "pucoh/arithmetic.hpp"

namespace pucoh {

PresElem theta_generator(long n, int k) {
    if (k < 1 || k > n) throw std::invalid_argument("theta_generator: need 1 <= k <= n");
    return PresElem::term(Rat(binomial(n, k)), k - 1, 0);
}

static RhoSet index_mask(const MultiIndex& idx) {
    RhoSet m = 0;
    for (int v : idx) m |= RhoSet(1) << v;
    return m;
}

PresElem theta(long n, const MultiIndex& idx) {
    validate_multiindex(idx, n);
    if (n > 62) throw std::invalid_argument("theta: n out of supported range");
    if (idx.size() == 1) return theta_generator(n, idx[0]);

    static std::map<std::pair<long, RhoSet>, PresElem> memo;
    static std::mutex memo_mutex;
    const std::pair<long, RhoSet> key{n, index_mask(idx)};
    {
        std::lock_guard<std::mutex> lock(memo_mutex);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
    }

    int top = idx.back();
    MultiIndex head = truncate_top(idx);
    long c = c_multiplier(n, top);
    PresElem out;
    if (c == 1) {
        out = -(theta(n, head) * PresElem::rho_single(top));
    } else {
        long p = c;
        out = theta(n, head) * PresElem::rho_single(top) * Rat(-1, p);
        /* lower the top generator by one p-step and re-sort the wedge */
        std::vector<int> lowered = head;
        lowered.push_back(top / static_cast<int>(p));
        SortedIndex s = sort_with_sign(lowered);
        if (!s.zero) {
            PresElem tail = theta(n, s.sorted) * Rat(s.sign, p);
            out += PresElem::omega_power(static_cast<int>(top - top / p)) * tail;
        }
    }
    out.assert_integral();

    std::lock_guard<std::mutex> lock(memo_mutex);
    return memo.emplace(key, std::move(out)).first->second;
}

PresElem theta_closed(long n, const PrimePowerSeq& idx, ClosedExponent mode) {
    int k = static_cast<int>(idx.exps.size());
    if (k < 2) throw std::invalid_argument("theta_closed: need at least two entries");
    long e1 = idx.exps[0];
    Int u = div_exact(binomial(n, idx.value(0)), int_pow(idx.p, static_cast<unsigned long>(idx.rank - e1)));
    PresElem sum;
    for (const PrimePowerSeq& j : admissible_set(idx)) {
        long drop = exponent_drop(idx, j);
        long expo = idx.rank - e1 - drop - (mode == ClosedExponent::corrected ? k - 1 : 0);
        if (expo < 0) throw std::logic_error("theta_closed: negative prime exponent");
        Int weight = omega_weight(idx, j);
        RhoSet rho = 0;
        for (long v : j.values()) rho |= RhoSet(1) << v;
        sum += PresElem::term(Rat(int_pow(idx.p, static_cast<unsigned long>(expo))),
                              static_cast<int>(weight.get_si()), rho);
    }
    Rat unit(u);
    if (k % 2 == 0) unit = -unit;
    return sum * unit;
}

std::vector<ThetaSplitTerm> split_by_primes(long n, const MultiIndex& idx) {
    validate_multiindex(idx, n);
    bool with_one = !idx.empty() && idx[0] == 1;
    MultiIndex core(idx.begin() + (with_one ? 1 : 0), idx.end());

    /* partition core into the prime columns and the complement; a column
     * only takes v = p^s with s <= v_p(n), i.e. the entries with c_v = p.
     * Everything else (composites and over-cap prime powers) has c_v = 1,
     * so xi_v is a pullback and factors out of theta directly. */
    std::vector<PrimeFactor> primes = factorize(n);
    std::vector<MultiIndex> column(primes.size());
    MultiIndex rest;
    for (int v : core) {
        bool placed = false;
        for (size_t i = 0; i < primes.size() && !placed; ++i) {
            long w = v;
            int e = 0;
            while (w % primes[i].p == 0) {
                w /= primes[i].p;
                ++e;
            }
            if (w == 1 && e <= primes[i].e) {
                column[i].push_back(v);
                placed = true;
            }
        }
        if (!placed) rest.push_back(v);
    }

    std::vector<size_t> nonempty;
    for (size_t i = 0; i < primes.size(); ++i)
        if (!column[i].empty()) nonempty.push_back(i);

    std::vector<ThetaSplitTerm> out;
    if (nonempty.empty()) {
        if (!with_one) return out;  /* xi_I pulls back, theta vanishes */
        int sign = rest.size() % 2 ? -1 : 1;
        out.push_back({PresElem::term(Rat(sign), 0, index_mask(rest)), MultiIndex{1}});
        return out;
    }

    /* b_i = product over the other columns; the b_i are coprime, so a
     * Bezout combination sum q_i b_i = 1 exists */
    std::vector<Int> b(nonempty.size(), 1);
    for (size_t a = 0; a < nonempty.size(); ++a)
        for (size_t l = 0; l < nonempty.size(); ++l)
            if (l != a) b[a] *= int_pow(primes[nonempty[l]].p, column[nonempty[l]].size());
    std::vector<Int> q(nonempty.size(), 0);
    Int g = b[0];
    q[0] = 1;
    for (size_t a = 1; a < nonempty.size(); ++a) {
        ExtGcd e = ext_gcd(g, b[a]);
        for (size_t l = 0; l < a; ++l) q[l] *= e.u;
        q[a] = e.v;
        g = e.g;
    }
    if (g != 1) throw std::logic_error("split_by_primes: columns not coprime");

    for (size_t a = 0; a < nonempty.size(); ++a) {
        size_t i = nonempty[a];
        MultiIndex sub = column[i];
        if (with_one) sub.insert(sub.begin(), 1);
        /* J_i = everything outside the chosen column */
        MultiIndex j = rest;
        for (size_t l = 0; l < primes.size(); ++l)
            if (l != i) j.insert(j.end(), column[l].begin(), column[l].end());
        std::sort(j.begin(), j.end());
        int sign = merge_sign(index_mask(j), index_mask(sub));
        out.push_back({PresElem::term(Rat(sign) * Rat(q[a]), 0, index_mask(j)), sub});
    }
    return out;
}

}  // namespace pucoh
