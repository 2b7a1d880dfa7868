#include "pucoh/koszul.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>

#include "pucoh/arithmetic.hpp"
#include "pucoh/bigint.hpp"

namespace pucoh {

namespace {

std::uint64_t pack_exp(const ExpVec& e) {
    std::uint64_t k;
    static_assert(sizeof(ExpVec) == sizeof(k));
    std::memcpy(&k, e.data(), sizeof(k));
    return k;
}

void poly_add_term(Poly& p, const ExpVec& e, const Int& c) {
    if (c == 0) return;
    auto it = p.find(e);
    if (it == p.end()) {
        p.emplace(e, c);
        return;
    }
    it->second += c;
    if (it->second == 0) p.erase(it);
}

ExpVec exp_sum(const ExpVec& a, const ExpVec& b) {
    ExpVec e{};
    for (int v = 0; v < kMaxKoszulVars; ++v) {
        int s = int(a[v]) + int(b[v]);
        if (s > 255) throw std::overflow_error("monomial exponent overflow");
        e[v] = static_cast<unsigned char>(s);
    }
    return e;
}

/* substitute x_{a+1} := x_{b+1} */
Poly substitute(const Poly& p, int a, int b) {
    Poly out;
    for (const auto& [e, c] : p) {
        ExpVec f = e;
        int s = int(f[b]) + int(f[a]);
        if (s > 255) throw std::overflow_error("monomial exponent overflow");
        f[b] = static_cast<unsigned char>(s);
        f[a] = 0;
        poly_add_term(out, f, c);
    }
    return out;
}

Poly shift_var(const Poly& p, int v) {
    Poly out;
    for (const auto& [e, c] : p) {
        ExpVec f = e;
        if (f[v] == 255) throw std::overflow_error("monomial exponent overflow");
        ++f[v];
        poly_add_term(out, f, c);
    }
    return out;
}

/* exact division by (x_{a+1} - x_{b+1}) via synthetic division in x_{a+1} */
Poly divide_linear(const Poly& p, int a, int b) {
    if (p.empty()) return {};
    std::map<int, Poly> layers;  /* coefficient polynomials by x_{a+1}-exponent */
    for (const auto& [e, c] : p) {
        ExpVec f = e;
        int d = f[a];
        f[a] = 0;
        poly_add_term(layers[d], f, c);
    }
    int top = layers.rbegin()->first;
    Poly out;
    Poly q;  /* quotient coefficient at the previous (higher) exponent */
    for (int i = top - 1; i >= 0; --i) {
        Poly qi = shift_var(q, b);
        auto it = layers.find(i + 1);
        if (it != layers.end())
            for (const auto& [e, c] : it->second) poly_add_term(qi, e, c);
        for (const auto& [e, c] : qi) {
            ExpVec f = e;
            f[a] = static_cast<unsigned char>(i);
            poly_add_term(out, f, c);
        }
        q = std::move(qi);
    }
    Poly rem = shift_var(q, b);
    auto it = layers.find(0);
    if (it != layers.end())
        for (const auto& [e, c] : it->second) poly_add_term(rem, e, c);
    if (!rem.empty()) throw std::logic_error("divide_linear: division is not exact");
    return out;
}

/* parity of interleaving the t-subset b after a (count of pairs s>t) */
int merge_parity(std::uint32_t a, std::uint32_t b) {
    int inv = 0;
    for (std::uint32_t m = b; m; m &= m - 1) {
        int t = std::countr_zero(m);
        inv += std::popcount(a >> (t + 1));
    }
    return inv & 1;
}

void e2_add_term(E2Elem& z, const E2Key& k, const Int& c) {
    if (c == 0) return;
    auto it = z.find(k);
    if (it == z.end()) {
        z.emplace(k, c);
        return;
    }
    it->second += c;
    if (it->second == 0) z.erase(it);
}

ExpVec power_of_first(int e) {
    ExpVec v{};
    if (e > 255) throw std::overflow_error("monomial exponent overflow");
    v[0] = static_cast<unsigned char>(e);
    return v;
}

}  // namespace

Poly poly_mul(const Poly& a, const Poly& b) {
    Poly out;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) poly_add_term(out, exp_sum(ea, eb), ca * cb);
    return out;
}

Poly poly_sub(const Poly& a, const Poly& b) {
    Poly out = a;
    for (const auto& [e, c] : b) poly_add_term(out, e, -c);
    return out;
}

Poly elementary_symmetric(int n, int r) {
    if (n < 1 || n > kMaxKoszulVars || r < 0 || r > n)
        throw std::invalid_argument("elementary_symmetric: bad arguments");
    Poly out;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        if (std::popcount(mask) != r) continue;
        ExpVec e{};
        for (std::uint32_t m = mask; m; m &= m - 1) e[std::countr_zero(m)] = 1;
        out.emplace(e, Int(1));
    }
    return out;
}

Poly power_monomial(int var, int e) {
    if (var < 0 || var >= kMaxKoszulVars || e < 0 || e > 255)
        throw std::invalid_argument("power_monomial: bad arguments");
    ExpVec v{};
    v[var] = static_cast<unsigned char>(e);
    Poly out;
    out.emplace(v, Int(1));
    return out;
}

/* ---------------------------------------------------------------- */

CoinvRing::CoinvRing(int n) : n_(n) {
    if (n < 1 || n > kMaxKoszulVars)
        throw std::invalid_argument("CoinvRing: rank must be between 1 and 8");
    stride_.assign(n_, 0);
    long s = 1;
    for (int v = 0; v < n_; ++v) {
        stride_[v] = s;
        s *= n_ - v;  /* exponent of x_{v+1} ranges over 0..n-1-v */
    }
    total_ = s;

    /* rewriting rule for x_{v+1}^(n-v): the complete homogeneous polynomial
     * of degree n-v in x_1..x_{v+1} lies in the ideal, so the leading power
     * equals minus the sum of the remaining degree-(n-v) monomials. */
    tail_.resize(n_);
    for (int v = 0; v < n_; ++v) {
        int deg = n_ - v;
        ExpVec e{};
        auto recurse = [&](auto&& self, int var, int left) -> void {
            if (var == v) {
                if (left < deg) { /* skip the leading power itself */
                    e[var] = static_cast<unsigned char>(left);
                    tail_[v].push_back(e);
                    e[var] = 0;
                }
                return;
            }
            for (int k = 0; k <= left; ++k) {
                e[var] = static_cast<unsigned char>(k);
                self(self, var + 1, left - k);
            }
            e[var] = 0;
        };
        recurse(recurse, 0, deg);
    }

    by_degree_.assign(top_degree() + 1, {});
    for (long code = 0; code < total_; ++code) by_degree_[degree_of(code)].push_back(code);
}

long CoinvRing::code_of(const ExpVec& e) const {
    long code = 0;
    for (int v = 0; v < n_; ++v) {
        if (e[v] > n_ - 1 - v) throw std::logic_error("code_of: monomial is not standard");
        code += stride_[v] * e[v];
    }
    for (int v = n_; v < kMaxKoszulVars; ++v)
        if (e[v] != 0) throw std::logic_error("code_of: variable out of range");
    return code;
}

ExpVec CoinvRing::exp_of(long code) const {
    ExpVec e{};
    for (int v = 0; v < n_; ++v) e[v] = static_cast<unsigned char>(code / stride_[v] % (n_ - v));
    return e;
}

int CoinvRing::degree_of(long code) const {
    ExpVec e = exp_of(code);
    int d = 0;
    for (int v = 0; v < n_; ++v) d += e[v];
    return d;
}

const std::vector<long>& CoinvRing::basis(int degree) const {
    static const std::vector<long> empty;
    if (degree < 0 || degree > top_degree()) return empty;
    return by_degree_[degree];
}

long CoinvRing::position(int degree, long code) const {
    const auto& b = basis(degree);
    auto it = std::lower_bound(b.begin(), b.end(), code);
    if (it == b.end() || *it != code) throw std::logic_error("position: code not in degree basis");
    return it - b.begin();
}

namespace {

/* the term order of the rewriting (lex, x_n most significant): every tail
 * monomial of a rule sits strictly below the head, so the worklist loop
 * below is monotone decreasing and terminates */
struct HeadOrder {
    bool operator()(const ExpVec& a, const ExpVec& b) const {
        for (int v = kMaxKoszulVars - 1; v >= 0; --v)
            if (a[v] != b[v]) return a[v] < b[v];
        return false;
    }
};

}  // namespace

const CoinvRing::Reduced& CoinvRing::reduce_monomial(const ExpVec& e) {
    std::uint64_t key = pack_exp(e);
    auto hit = memo_.find(key);
    if (hit != memo_.end()) return hit->second;

    /* explicit worklist instead of recursion: only the entry monomial is
     * memoized, never the intermediate cascade (whose size is what would
     * otherwise dominate memory on long sweeps) */
    std::map<ExpVec, Int, HeadOrder> work;
    std::map<long, Int> done;
    work.emplace(e, Int(1));
    while (!work.empty()) {
        auto it = std::prev(work.end());
        ExpVec m = it->first;
        Int c = std::move(it->second);
        work.erase(it);

        int v = -1;
        for (int u = n_ - 1; u >= 0; --u)
            if (m[u] > n_ - 1 - u) {
                v = u;
                break;
            }
        if (v < 0) {
            long code = code_of(m);
            Int& slot = done[code];
            slot += c;
            if (slot == 0) done.erase(code);
            continue;
        }
        ExpVec base = m;
        base[v] = static_cast<unsigned char>(base[v] - (n_ - v));
        for (const ExpVec& u : tail_[v]) {
            ExpVec f = exp_sum(base, u);
            Int& slot = work[f];
            slot -= c;
            if (slot == 0) work.erase(f);
        }
    }
    Reduced out(done.begin(), done.end());
    return memo_.emplace(key, std::move(out)).first->second;
}

CoinvRing::Reduced CoinvRing::reduce(const Poly& p) {
    std::map<long, Int> acc;
    for (const auto& [e, c] : p)
        for (const auto& [code, k] : reduce_monomial(e)) {
            Int& slot = acc[code];
            slot += c * k;
            if (slot == 0) acc.erase(code);
        }
    return Reduced(acc.begin(), acc.end());
}

CoinvRing::Reduced CoinvRing::multiply(long code_a, long code_b) {
    return reduce_monomial(exp_sum(exp_of(code_a), exp_of(code_b)));
}

CoinvRing::Reduced CoinvRing::multiply_var(int var, long code) {
    ExpVec e = exp_of(code);
    if (e[var] == 255) throw std::overflow_error("monomial exponent overflow");
    ++e[var];
    return reduce_monomial(e);
}

/* ---------------------------------------------------------------- */

KoszulPage::KoszulPage(int n) : n_(n), ring_(n) {
    if (n < 2) throw std::invalid_argument("KoszulPage: rank must be at least 2");
}

std::uint32_t KoszulPage::allowed_bits(Ambient amb) const {
    std::uint32_t all = (1u << n_) - 1;
    return amb == Ambient::full ? all : (all & ~1u);
}

E2Elem KoszulPage::scale(const E2Elem& z, const Int& c) const {
    E2Elem out;
    if (c == 0) return out;
    for (const auto& [k, v] : z) out.emplace(k, v * c);
    return out;
}

E2Elem KoszulPage::add(const E2Elem& a, const E2Elem& b) const {
    E2Elem out = a;
    for (const auto& [k, v] : b) e2_add_term(out, k, v);
    return out;
}

E2Elem KoszulPage::sub(const E2Elem& a, const E2Elem& b) const {
    E2Elem out = a;
    for (const auto& [k, v] : b) e2_add_term(out, k, -v);
    return out;
}

E2Elem KoszulPage::mul(const E2Elem& a, const E2Elem& b) {
    E2Elem out;
    for (const auto& [ka, ca] : a)
        for (const auto& [kb, cb] : b) {
            if (ka.tmask & kb.tmask) continue;
            Int c = ca * cb;
            if (merge_parity(ka.tmask, kb.tmask)) c = -c;
            std::uint32_t mask = ka.tmask | kb.tmask;
            for (const auto& [code, k] : ring_.multiply(ka.code, kb.code))
                e2_add_term(out, {mask, code}, c * k);
        }
    return out;
}

E2Elem KoszulPage::mul_poly(const CoinvRing::Reduced& p, const E2Elem& z) {
    E2Elem out;
    for (const auto& [pcode, pc] : p)
        for (const auto& [k, c] : z)
            for (const auto& [code, f] : ring_.multiply(pcode, k.code))
                e2_add_term(out, {k.tmask, code}, pc * c * f);
    return out;
}

E2Elem KoszulPage::d2(const E2Elem& z) {
    E2Elem out;
    for (const auto& [key, c] : z) {
        int pos = 0;
        for (std::uint32_t m = key.tmask; m; m &= m - 1, ++pos) {
            int s = std::countr_zero(m);
            Int sgn = (pos % 2 == 0) ? c : -c;
            std::uint32_t rest = key.tmask & ~(1u << s);
            for (const auto& [code, k] : ring_.multiply_var(s == 0 ? 0 : s, key.code))
                e2_add_term(out, {rest, code}, sgn * k);
            if (s > 0)
                for (const auto& [code, k] : ring_.multiply_var(s - 1, key.code))
                    e2_add_term(out, {rest, code}, -sgn * k);
        }
    }
    return out;
}

std::pair<int, int> KoszulPage::bidegree(const E2Elem& z) const {
    int xd = -1, q = -1;
    for (const auto& [key, c] : z) {
        int xdeg = ring_.degree_of(key.code);
        int tq = std::popcount(key.tmask);
        if (xd < 0) {
            xd = xdeg;
            q = tq;
        } else if (xd != xdeg || q != tq) {
            throw std::logic_error("bidegree: element is not bihomogeneous");
        }
    }
    return {xd, q};
}

std::vector<Poly> KoszulPage::taylor_components(const Poly& h) const {
    std::vector<Poly> comps(n_);
    Poly cur = h;
    for (int k = n_ - 1; k >= 1; --k) {
        Poly sub = substitute(cur, k, k - 1);
        comps[k] = divide_linear(poly_sub(cur, sub), k, k - 1);
        cur = std::move(sub);
    }
    for (const auto& [e, c] : cur) {
        if (e[0] == 0) throw std::logic_error("taylor_components: input has a constant term");
        ExpVec f = e;
        --f[0];
        poly_add_term(comps[0], f, c);
    }
    /* reconstruct: the components must telescope back to the input */
    Poly check = poly_mul(comps[0], power_monomial(0, 1));
    for (int k = 1; k < n_; ++k) {
        Poly lin = poly_sub(power_monomial(k, 1), power_monomial(k - 1, 1));
        for (const auto& [e, c] : poly_mul(comps[k], lin)) poly_add_term(check, e, c);
    }
    if (!poly_sub(check, h).empty())
        throw std::logic_error("taylor_components: reconstruction failed");
    return comps;
}

E2Elem KoszulPage::hat_lift(const Poly& h) {
    E2Elem out;
    auto comps = taylor_components(h);
    for (int k = 0; k < n_; ++k)
        for (const auto& [code, c] : ring_.reduce(comps[k]))
            e2_add_term(out, {1u << k, code}, c);
    return out;
}

const E2Elem& KoszulPage::sym_cocycle(int r) {
    auto hit = sym_cache_.find(r);
    if (hit != sym_cache_.end()) return hit->second;
    if (r < 1 || r > n_) throw std::invalid_argument("sym_cocycle: index out of range");
    E2Elem z = hat_lift(elementary_symmetric(n_, r));
    if (!d2(z).empty()) throw std::logic_error("sym_cocycle: lift is not closed");
    return sym_cache_.emplace(r, std::move(z)).first->second;
}

E2Elem KoszulPage::sym_cocycle_pu(int r) {
    E2Elem out;
    for (const auto& [k, c] : sym_cocycle(r))
        if (!(k.tmask & 1u)) out.emplace(k, c);
    return out;
}

const E2Elem& KoszulPage::omega_order_witness(int r) {
    auto hit = witness_cache_.find(r);
    if (hit != witness_cache_.end()) return hit->second;
    if (r < 1 || r > ring_.top_degree())
        throw std::invalid_argument("omega_order_witness: index out of range");
    Int b = binomial_gcd(n_, std::min<long>(r, n_));
    E2Elem rhs;
    for (const auto& [code, c] : ring_.reduce_monomial(power_of_first(r)))
        rhs.emplace(E2Key{0u, code}, b * c);
    const auto& src = basis(Ambient::projective, r - 1, 1);
    auto sol = solve_integer(d2_matrix(Ambient::projective, r - 1, 1),
                             coords(rhs, Ambient::projective, r, 0));
    if (!sol) throw std::logic_error("omega_order_witness: no integral solution");
    E2Elem w;
    for (std::size_t i = 0; i < src.size(); ++i) e2_add_term(w, src[i], (*sol)[i]);
    if (!sub(d2(w), rhs).empty()) throw std::logic_error("omega_order_witness: bad witness");
    return witness_cache_.emplace(r, std::move(w)).first->second;
}

const E2Elem& KoszulPage::rho_cocycle(int r) {
    auto hit = rho_cache_.find(r);
    if (hit != rho_cache_.end()) return hit->second;
    if (r < 2 || r > n_) throw std::invalid_argument("rho_cocycle: index out of range");

    E2Elem out;
    Int c = c_multiplier(n_, r);
    if (c == 1) {
        /* correct the symmetric lift by a multiple of the order witness one
         * degree down: d2 of the witness is b_{n,r-1} x_1^(r-1). */
        Int q = binomial(n_, r);
        Int b = binomial_gcd(n_, r - 1);
        if (!divides(b, q)) throw std::logic_error("rho_cocycle: unexpected divisibility failure");
        q = div_exact(q, b);
        E2Elem corr = mul_poly(ring_.reduce_monomial(power_of_first(1)),
                               scale(omega_order_witness(r - 1), q));
        out = add(sym_cocycle_pu(r), corr);
    } else {
        long p = c.get_si();
        long ps1 = r / p; /* r is a prime power p^s; this is p^(s-1) */
        if (n_ % ps1 != 0)
            throw std::logic_error("rho_cocycle: construction needs p^(s-1) to divide the rank");
        long m = n_ / ps1;
        out = scale(sym_cocycle_pu(r), Int(p));
        for (int t = 1; t <= r - ps1; ++t) {
            E2Elem term =
                mul_poly(ring_.reduce_monomial(power_of_first(t)), sym_cocycle_pu(r - t));
            out = add(out, scale(term, Int(t % 2 == 0 ? m : -m)));
        }
        int sigma = ((r - ps1) % 2 != 0) ? -1 : 1;
        E2Elem last = mul_poly(ring_.reduce_monomial(power_of_first(int(r - ps1))),
                               sym_cocycle_pu(int(ps1)));
        out = sub(out, scale(last, Int(sigma)));
    }
    if (!d2(out).empty()) throw std::logic_error("rho_cocycle: lift is not closed");
    return rho_cache_.emplace(r, std::move(out)).first->second;
}

E2Elem KoszulPage::pu_component(const E2Elem& z) const {
    E2Elem out;
    for (const auto& [k, c] : z)
        if (!(k.tmask & 1u)) out.emplace(k, c);
    return out;
}

E2Elem KoszulPage::theta_component(const E2Elem& z) const {
    E2Elem out;
    for (const auto& [k, c] : z) {
        if (!(k.tmask & 1u)) continue;
        int q = std::popcount(k.tmask);
        out.emplace(E2Key{k.tmask & ~1u, k.code}, (q - 1) % 2 == 0 ? c : -c);
    }
    return out;
}

const std::vector<E2Key>& KoszulPage::basis(Ambient amb, int xdeg, int q) {
    auto key = std::make_tuple(int(amb), xdeg, q);
    auto hit = basis_cache_.find(key);
    if (hit != basis_cache_.end()) return hit->second;
    std::vector<E2Key> out;
    if (xdeg >= 0 && xdeg <= ring_.top_degree() && q >= 0 && q <= n_) {
        std::uint32_t allowed = allowed_bits(amb);
        for (std::uint32_t mask = 0; mask < (1u << n_); ++mask) {
            if ((mask & ~allowed) != 0 || std::popcount(mask) != q) continue;
            for (long code : ring_.basis(xdeg)) out.push_back({mask, code});
        }
    }
    return basis_cache_.emplace(key, std::move(out)).first->second;
}

std::vector<Int> KoszulPage::coords(const E2Elem& z, Ambient amb, int xdeg, int q) {
    const auto& b = basis(amb, xdeg, q);
    std::vector<Int> out(b.size(), Int(0));
    for (const auto& [k, c] : z) {
        auto it = std::lower_bound(b.begin(), b.end(), k);
        if (it == b.end() || !(*it == k))
            throw std::logic_error("coords: element outside the bidegree basis");
        out[it - b.begin()] = c;
    }
    return out;
}

SparseIntMatrix KoszulPage::d2_matrix(Ambient amb, int xdeg, int q) {
    const auto& src = basis(amb, xdeg, q);
    const auto& tgt = basis(amb, xdeg + 1, q - 1);
    SparseIntMatrix m(long(tgt.size()), long(src.size()));
    for (std::size_t col = 0; col < src.size(); ++col) {
        E2Elem one;
        one.emplace(src[col], Int(1));
        for (const auto& [k, c] : d2(one)) {
            auto it = std::lower_bound(tgt.begin(), tgt.end(), k);
            if (it == tgt.end() || !(*it == k))
                throw std::logic_error("d2_matrix: image term outside the target basis");
            m.add(it - tgt.begin(), long(col), c);
        }
    }
    return m;
}

const SmithResult& KoszulPage::d2_smith(Ambient amb, int xdeg, int q) {
    auto key = std::make_tuple(int(amb), xdeg, q);
    auto hit = smith_cache_.find(key);
    if (hit != smith_cache_.end()) return hit->second;
    SmithResult r = smith_normal_form(d2_matrix(amb, xdeg, q));
    return smith_cache_.emplace(key, std::move(r)).first->second;
}

AbelianGroup KoszulPage::e3_group(Ambient amb, int xdeg, int q) {
    long dim = long(basis(amb, xdeg, q).size());
    long rank_out = d2_smith(amb, xdeg, q).rank;
    long rank_in = 0;
    std::vector<Int> torsion;
    if (xdeg > 0) {
        const SmithResult& in = d2_smith(amb, xdeg - 1, q + 1);
        rank_in = in.rank;
        for (const Int& f : in.factors)
            if (f > 1) torsion.push_back(f);
    }
    long free = dim - rank_out - rank_in;
    if (free < 0) throw std::logic_error("e3_group: negative rank");
    return AbelianGroup{free, std::move(torsion)};
}

Int KoszulPage::omega_class_order(int r) {
    if (r == 0) return Int(0);
    auto red = ring_.reduce_monomial(power_of_first(r));
    if (red.empty()) return Int(1);
    E2Elem z;
    for (const auto& [code, c] : red) z.emplace(E2Key{0u, code}, c);
    auto target = coords(z, Ambient::projective, r, 0);
    SparseIntMatrix m = d2_matrix(Ambient::projective, r - 1, 1);
    ColumnEchelon ech(m.rows, matrix_columns(m), false);
    auto d = ech.order_denominator(target);
    return d ? *d : Int(0);
}

bool KoszulPage::top_product_generates() {
    E2Elem z = rho_cocycle(2);
    for (int r = 3; r <= n_; ++r) z = mul(z, rho_cocycle(r));
    if (z.empty()) return false;
    auto [xd, q] = bidegree(z);
    if (xd != ring_.top_degree() || q != n_ - 1)
        throw std::logic_error("top_product_generates: unexpected bidegree");
    auto v = coords(z, Ambient::projective, xd, q);
    if (v.size() != 1) throw std::logic_error("top_product_generates: corner is not rank one");
    return v[0] == 1 || v[0] == -1;
}

bool KoszulPage::is_coboundary(const E2Elem& z, Ambient amb) {
    return coboundary_witness(z, amb).has_value();
}

std::optional<E2Elem> KoszulPage::coboundary_witness(const E2Elem& z, Ambient amb) {
    if (z.empty()) return E2Elem{};
    auto [xd, q] = bidegree(z);
    if (xd == 0) return std::nullopt;
    const auto& src = basis(amb, xd - 1, q + 1);
    auto sol = solve_integer(d2_matrix(amb, xd - 1, q + 1), coords(z, amb, xd, q));
    if (!sol) return std::nullopt;
    E2Elem w;
    for (std::size_t i = 0; i < src.size(); ++i) e2_add_term(w, src[i], (*sol)[i]);
    return w;
}

E2Elem KoszulPage::chainify(const PresElem& x) {
    E2Elem out;
    for (const auto& [key, coeff] : x.terms) {
        if (coeff.get_den() != 1)
            throw std::logic_error("chainify: presentation element is not integral");
        E2Elem term;
        term.emplace(E2Key{0u, 0}, Int(1));
        for (int k : rho_list(key.rho)) term = mul(term, rho_cocycle(k));
        term = mul_poly(ring_.reduce_monomial(power_of_first(key.omega)), term);
        out = add(out, scale(term, coeff.get_num()));
    }
    return out;
}

PresElem KoszulPage::oracle_theta(const MultiIndex& idx) {
    validate_multiindex(idx, n_);
    E2Elem prod;
    prod.emplace(E2Key{0u, 0}, Int(1));
    for (int i : idx) prod = mul(prod, sym_cocycle(i));
    E2Elem z = theta_component(prod);
    if (z.empty()) return PresElem::zero();
    auto [xd, q] = bidegree(z);
    if (!d2(z).empty()) throw std::logic_error("oracle_theta: connecting image is not closed");

    /* frame: x_1^a times products of rho cocycles, one column per subset
     * of {2..n} of the right size whose degree fits under xd */
    struct Frame {
        int omega;
        RhoSet rho;
    };
    std::vector<Frame> frame;
    std::vector<std::vector<Int>> frame_cols;
    const auto& tgt = basis(Ambient::projective, xd, q);
    for (std::uint32_t sel = 0; sel < (1u << (n_ - 1)); ++sel) {
        if (std::popcount(sel) != q) continue;
        int weight = 0;
        RhoSet rho = 0;
        for (std::uint32_t m = sel; m; m &= m - 1) {
            int k = std::countr_zero(m) + 2;
            weight += k - 1;
            rho |= RhoSet(1) << k;
        }
        if (weight > xd) continue;
        int a = xd - weight;
        E2Elem f;
        f.emplace(E2Key{0u, 0}, Int(1));
        for (int k : rho_list(rho)) f = mul(f, rho_cocycle(k));
        f = mul_poly(ring_.reduce_monomial(power_of_first(a)), f);
        if (f.empty()) continue;
        frame.push_back({a, rho});
        frame_cols.push_back(coords(f, Ambient::projective, xd, q));
    }

    SparseIntMatrix cob = d2_matrix(Ambient::projective, xd - 1, q + 1);
    long nf = long(frame.size());
    SparseIntMatrix m(long(tgt.size()), nf + cob.cols);
    for (long j = 0; j < nf; ++j)
        for (long i = 0; i < long(frame_cols[j].size()); ++i) m.add(i, j, frame_cols[j][i]);
    for (const auto& [rc, v] : cob.entries) m.add(rc.first, nf + rc.second, v);

    auto sol = solve_integer(m, coords(z, Ambient::projective, xd, q));
    if (!sol) throw std::logic_error("oracle_theta: class does not resolve in the frame");
    PresElem out = PresElem::zero();
    for (long j = 0; j < nf; ++j)
        if ((*sol)[j] != 0) out = out + PresElem::term(Rat((*sol)[j]), frame[j].omega, frame[j].rho);
    return out;
}

}  // namespace pucoh
