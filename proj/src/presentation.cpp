#include "pucoh/presentation.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <thread>

#include "pucoh/arithmetic.hpp"
#include "pucoh/gysin.hpp"

namespace pucoh {

namespace {

std::string order_provenance(long r) { return "order r=" + std::to_string(r); }

std::string index_provenance(const MultiIndex& idx) { return "I=" + format_multiindex(idx); }

Relation order_relation(const Int& coeff, long r) {
    return {PresElem::term(Rat(coeff), static_cast<int>(r), 0), order_provenance(r)};
}

/* b_{n,r} for r = 0..n (b_0 := 0 placeholder) */
std::vector<Int> gcd_ladder(long n) {
    std::vector<Int> b(static_cast<size_t>(n) + 1, 0);
    Int g = 0;
    for (long r = 1; r <= n; ++r) {
        g = int_gcd(g, binomial(n, r));
        b[static_cast<size_t>(r)] = g;
    }
    return b;
}

/* next size-|c| combination of {1..n} in lexicographic order */
bool next_combination(std::vector<int>& c, int n) {
    int k = static_cast<int>(c.size());
    int i = k - 1;
    while (i >= 0 && c[i] == n - (k - 1 - i)) --i;
    if (i < 0) return false;
    ++c[i];
    for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
    return true;
}

/* termwise reduction of an integral w-positive row: the coefficient of
 * w^a rho_J is taken mod b_{n,a} (mod 1, i.e. to zero, past the ladder) */
PresElem reduce_mod_orders(const PresElem& x, const std::vector<Int>& ladder) {
    long n = static_cast<long>(ladder.size()) - 1;
    PresElem out;
    for (const auto& [key, c] : x.terms) {
        if (key.omega < 1) throw std::logic_error("reduce_mod_orders: w-free term in a relation row");
        Int b = key.omega <= n ? ladder[static_cast<size_t>(key.omega)] : Int(1);
        Int m = c.get_num() % b;
        if (m < 0) m += b;
        if (m != 0) out += PresElem::term(Rat(m), key.omega, key.rho);
    }
    return out;
}

/* x == lambda * w^e rho_M * k for some monomial and integer lambda != 0?
 * Candidates are read off by matching the leading term of x against each
 * term of k; a hit is confirmed by exact expansion. */
bool monomial_multiple_of(const PresElem& x, const PresElem& k) {
    if (x.is_zero() || k.is_zero()) return false;
    auto [lx, cx] = x.leading_term();
    for (const auto& [kt, ck] : k.terms) {
        if (kt.omega > lx.omega || (kt.rho & ~lx.rho)) continue;
        RhoSet m = lx.rho & ~kt.rho;
        int sign = merge_sign(m, kt.rho);
        Rat lambda = cx / (ck * sign);
        if (lambda.get_den() != 1) continue;
        if (PresElem::term(lambda, lx.omega - kt.omega, m) * k == x) return true;
    }
    return false;
}

/* square-free rho-monomial count with one subscript excluded */
long exterior_rank_excluding(int lo, int hi, int skip, int degree) {
    if (degree < 0) return 0;
    std::vector<long> dp(static_cast<size_t>(degree) + 1, 0);
    dp[0] = 1;
    for (int k = lo; k <= hi; ++k) {
        if (k == skip) continue;
        int w = 2 * k - 1;
        for (int d = degree; d >= w; --d) dp[static_cast<size_t>(d)] += dp[static_cast<size_t>(d - w)];
    }
    return dp[static_cast<size_t>(degree)];
}

}  // namespace

std::vector<Relation> j_ring(long p, int r) {
    auto f = factorize(p);
    if (f.size() != 1 || f[0].e != 1) throw std::invalid_argument("j_ring: p must be prime");
    if (r < 1) throw std::invalid_argument("j_ring: need r >= 1");
    std::vector<Relation> out;
    Int coeff = int_pow(p, static_cast<unsigned long>(r));
    long power = 1;
    for (int s = 0; s <= r; ++s) {
        out.push_back(order_relation(coeff, power));
        coeff = div_exact(coeff, p);
        power *= p;
    }
    return out;
}

std::vector<Relation> omega_order_relations(long n) {
    if (n < 2) throw std::invalid_argument("omega_order_relations: need n >= 2");
    std::vector<Relation> out;
    Int prev = 0;
    Int g = 0;
    for (long r = 1; r <= n; ++r) {
        g = int_gcd(g, binomial(n, r));
        if (r == 1 || g != prev) out.push_back(order_relation(g, r));
        prev = g;
        if (g == 1) break;  /* later powers are multiples of this unit row */
    }
    return out;
}

PresElem relation_R(long n, const PrimePowerSeq& idx) {
    int k = static_cast<int>(idx.exps.size());
    if (k < 2) throw std::invalid_argument("relation_R: need at least two entries");
    if (idx.rank != valuation(n, idx.p))
        throw std::invalid_argument("relation_R: rank disagrees with the multiplicity of p in n");
    long e1 = idx.exps[0];
    PresElem sum;
    for (const PrimePowerSeq& j : admissible_set(idx)) {
        long drop = exponent_drop(idx, j);
        long expo = idx.rank - e1 - (k - 1) - drop;
        if (expo < 0) throw std::logic_error("relation_R: negative prime exponent");
        Int weight = omega_weight(idx, j);
        RhoSet rho = 0;
        for (long v : j.values()) rho |= RhoSet(1) << v;
        sum += PresElem::term(Rat(int_pow(idx.p, static_cast<unsigned long>(expo))),
                              static_cast<int>(weight.get_si()) + 1, rho);
    }
    return sum;
}

RingPresentation present(long n) {
    if (n < 2) throw std::invalid_argument("present: need n >= 2");
    if (n > 20)
        throw ResourceLimitError("present: n > 20 refused (downstream degree sweeps scale as n^2)");

    RingPresentation pres;
    pres.n = n;
    pres.relations = omega_order_relations(n);

    const std::vector<Int> ladder = gcd_ladder(n);
    const std::vector<PrimeFactor> factors = factorize(n);
    const bool single_prime = factors.size() == 1;

    std::vector<Relation> rows;
    for (const PrimeFactor& f : factors) {
        std::vector<int> pool;  /* Q_p(n) = {1, p, ..., p^e} */
        long v = 1;
        for (int s = 0; s <= f.e; ++s) {
            pool.push_back(static_cast<int>(v));
            v *= f.p;
        }
        for (int k = 2; k <= static_cast<int>(pool.size()); ++k) {
            std::vector<int> comb(static_cast<size_t>(k));
            std::iota(comb.begin(), comb.end(), 1);
            do {
                MultiIndex idx;
                for (int pos : comb) idx.push_back(pool[static_cast<size_t>(pos) - 1]);
                PresElem th = theta(n, idx);
                PresElem wth = PresElem::omega_power(1) * th;
                PresElem row = wth.normalized();

                auto seq = as_prime_power_seq(n, idx);
                if (!seq)
                    throw std::logic_error("present: column subset not recognized at I=" +
                                           format_multiindex(idx));
                PresElem r_val = relation_R(n, *seq);
                /* the connecting unit: w*theta = (-1)^{k-1} u R_I */
                Int u = div_exact(binomial(n, seq->value(0)),
                                  int_pow(seq->p, static_cast<unsigned long>(seq->rank - seq->exps[0])));
                Rat unit(u);
                if (k % 2 == 0) unit = -unit;
                if (!(r_val * unit == wth))
                    throw std::logic_error("present: R-row disagrees with w*theta at I=" +
                                           format_multiindex(idx));
                if (single_prime) row = r_val;

                PresElem red = reduce_mod_orders(row, ladder);
                if (red.is_zero()) continue;
                bool redundant = false;
                for (const Relation& kept : rows)
                    if (monomial_multiple_of(row, kept.value) || monomial_multiple_of(red, kept.value)) {
                        redundant = true;
                        break;
                    }
                if (!redundant) rows.push_back({std::move(row), index_provenance(idx)});
            } while (next_combination(comb, static_cast<int>(pool.size())));
        }
    }

    for (Relation& r : rows) pres.relations.push_back(std::move(r));
    return pres;
}

std::vector<PresKey> ambient_basis(long n, int degree, int omega_min, int omega_cap) {
    std::vector<PresKey> out;
    if (degree < 0 || omega_min > omega_cap) return out;
    /* suffix[k] = max rho-degree available from subscripts k..n */
    std::vector<int> suffix(static_cast<size_t>(n) + 2, 0);
    for (long k = n; k >= 2; --k)
        suffix[static_cast<size_t>(k)] = suffix[static_cast<size_t>(k) + 1] + (2 * static_cast<int>(k) - 1);
    for (int a = omega_min; a <= omega_cap && 2 * a <= degree; ++a) {
        int target = degree - 2 * a;
        RhoSet cur = 0;
        auto rec = [&](auto&& self, int k, int left) -> void {
            if (left == 0) {
                out.push_back({a, cur});
                return;
            }
            if (k > n || left > suffix[static_cast<size_t>(k)]) return;
            if (2 * k - 1 <= left) {
                cur |= RhoSet(1) << k;
                self(self, k + 1, left - (2 * k - 1));
                cur &= ~(RhoSet(1) << k);
            }
            self(self, k + 1, left);
        };
        rec(rec, 2, target);
    }
    std::sort(out.begin(), out.end(), PresKeyLess{});
    return out;
}

SparseIntMatrix relation_matrix(long n, const std::vector<Relation>& rels, int degree,
                                int omega_min, int omega_cap) {
    std::vector<PresKey> cols = ambient_basis(n, degree, omega_min, omega_cap);
    std::map<PresKey, long, PresKeyLess> colof;
    for (size_t i = 0; i < cols.size(); ++i) colof.emplace(cols[i], static_cast<long>(i));

    std::vector<std::map<long, Int>> rows;
    for (const Relation& rel : rels) {
        Degree dr = rel.value.degree();
        if (dr.kind != Degree::homogeneous)
            throw std::invalid_argument("relation_matrix: relations must be homogeneous and nonzero");
        if (degree < dr.value) continue;
        for (const PresKey& m : ambient_basis(n, degree - dr.value, 0, omega_cap)) {
            std::map<long, Int> row;
            for (const auto& [kt, c] : rel.value.terms) {
                if (m.rho & kt.rho) continue;
                int a = m.omega + kt.omega;
                if (a > omega_cap) continue;  /* unit w-power relation covers these */
                auto it = colof.find({a, m.rho | kt.rho});
                if (it == colof.end()) continue;
                row[it->second] = c.get_num() * merge_sign(m.rho, kt.rho);
            }
            std::erase_if(row, [](const auto& e) { return e.second == 0; });
            if (!row.empty()) rows.push_back(std::move(row));
        }
    }

    SparseIntMatrix out(static_cast<long>(rows.size()), static_cast<long>(cols.size()));
    for (size_t r = 0; r < rows.size(); ++r)
        for (const auto& [c, v] : rows[r]) out.add(static_cast<long>(r), c, v);
    return out;
}

bool in_relation_ideal(long n, const std::vector<Relation>& rels, const PresElem& x) {
    if (x.is_zero()) return true;
    x.assert_integral();
    /* per-degree components (callers sometimes hand in differences of
     * mixed-degree sums) */
    std::map<int, PresElem> comps;
    for (const auto& [key, c] : x.terms) comps[key.degree()] += PresElem::term(c, key.omega, key.rho);

    const std::vector<Int> ladder = gcd_ladder(n);
    for (const auto& [d, comp] : comps) {
        /* a w-free term can never be a combination of w-positive rows */
        for (const auto& [key, c] : comp.terms)
            if (key.omega == 0) return false;
        PresElem red = reduce_mod_orders(comp, ladder);
        if (red.is_zero()) continue;
        SparseIntMatrix m = relation_matrix(n, rels, d, 0, static_cast<int>(n) - 1);
        /* columns of the solve are the relation multiples */
        SparseIntMatrix t(m.cols, m.rows);
        for (const auto& [rc, v] : m.entries) t.add(rc.second, rc.first, v);
        std::vector<Int> target(static_cast<size_t>(m.cols), 0);
        std::vector<PresKey> amb = ambient_basis(n, d, 0, static_cast<int>(n) - 1);
        std::map<PresKey, long, PresKeyLess> colof;
        for (size_t i = 0; i < amb.size(); ++i) colof.emplace(amb[i], static_cast<long>(i));
        for (const auto& [key, c] : red.terms) {
            auto it = colof.find(key);
            if (it == colof.end()) return false;
            target[static_cast<size_t>(it->second)] = c.get_num();
        }
        if (!solve_integer(t, target)) return false;
    }
    return true;
}

std::map<int, AbelianGroup> groups_from_relations(long n, const std::vector<Relation>& rels,
                                                  int d_max, int omega_min, int omega_cap,
                                                  int jobs) {
    if (d_max < 0) throw std::invalid_argument("groups_from_relations: need d_max >= 0");
    std::vector<AbelianGroup> out(static_cast<size_t>(d_max) + 1);
    std::atomic<int> next{0};
    auto worker = [&]() {
        for (;;) {
            int d = next.fetch_add(1);
            if (d > d_max) break;
            SparseIntMatrix m = relation_matrix(n, rels, d, omega_min, omega_cap);
            if (m.cols == 0) {
                out[static_cast<size_t>(d)] = AbelianGroup{};
                continue;
            }
            out[static_cast<size_t>(d)] = cokernel_invariants(m);
        }
    };
    int j = std::max(1, jobs);
    if (j == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(j));
        for (int i = 0; i < j; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    std::map<int, AbelianGroup> groups;
    for (int d = 0; d <= d_max; ++d) groups.emplace(d, std::move(out[static_cast<size_t>(d)]));
    return groups;
}

std::map<int, AbelianGroup> groups_by_degree(long n, int d_max, int jobs) {
    if (n < 2) throw std::invalid_argument("groups_by_degree: need n >= 2");
    if (d_max < 0) d_max = static_cast<int>(n * n + 1);
    if (d_max > n * n + 1) throw std::invalid_argument("groups_by_degree: d_max exceeds n^2+1");
    RingPresentation pres = present(n);
    return groups_from_relations(n, pres.relations, d_max, 0, static_cast<int>(n) - 1, jobs);
}

long exterior_rank(int lo, int hi, int degree) {
    return exterior_rank_excluding(lo, hi, 0, degree);
}

std::map<int, AbelianGroup> sigma_p_groups(long n, long p, int d_max, int jobs) {
    int r = valuation(n, p);
    if (r == 0) throw std::invalid_argument("sigma_p_groups: p must divide n");
    if (d_max < 0) throw std::invalid_argument("sigma_p_groups: need d_max >= 0");

    std::vector<Relation> rels = j_ring(p, r);
    for (int k = 2; k <= r + 1; ++k) {
        std::vector<int> comb(static_cast<size_t>(k));
        std::iota(comb.begin(), comb.end(), 1);
        do {
            PrimePowerSeq seq;
            seq.p = p;
            seq.rank = r;
            for (int v : comb) seq.exps.push_back(v - 1);  /* exponents 0..r */
            MultiIndex values;
            for (long v : seq.values()) values.push_back(static_cast<int>(v));
            rels.push_back({relation_R(n, seq), index_provenance(values)});
        } while (next_combination(comb, r + 1));
    }

    long cap = 1;
    for (int i = 0; i < r; ++i) cap *= p;
    return groups_from_relations(n, rels, d_max, 1, static_cast<int>(cap) - 1, jobs);
}

PrimaryDecomposition primary_decomposition(long n, int d_max, int jobs) {
    if (n < 2) throw std::invalid_argument("primary_decomposition: need n >= 2");
    if (d_max < 0) d_max = static_cast<int>(n * n + 1);

    PrimaryDecomposition out;
    out.n = n;
    out.d_max = d_max;

    std::map<int, AbelianGroup> base = groups_by_degree(n, d_max, jobs);
    for (int d = 0; d <= d_max; ++d) out.free_by_degree[d] = exterior_rank(2, static_cast<int>(n), d);
    std::vector<PrimeFactor> primes = factorize(n);
    for (const PrimeFactor& f : primes) out.sigma[f.p] = sigma_p_groups(n, f.p, d_max, jobs);

    /* reassembly: free part plus the p-primary pieces must equal the groups */
    for (int d = 0; d <= d_max; ++d) {
        AbelianGroup expect{out.free_by_degree[d], {}};
        for (const PrimeFactor& f : primes) expect = direct_sum(expect, out.sigma[f.p][d]);
        if (!(expect == base[d]))
            out.failures.push_back("degree " + std::to_string(d) + ": groups " + group_text(base[d]) +
                                   " != free + primary " + group_text(expect));
    }

    /* each sigma_p is pure p-torsion killed by p^r */
    for (const PrimeFactor& f : primes) {
        Int pr = int_pow(f.p, static_cast<unsigned long>(f.e));
        for (const auto& [d, g] : out.sigma[f.p]) {
            if (g.free_rank != 0)
                out.failures.push_back("sigma_" + std::to_string(f.p) + " degree " + std::to_string(d) +
                                       ": nonzero free rank");
            for (const Int& t : g.torsion)
                if (pr % t != 0)
                    out.failures.push_back("sigma_" + std::to_string(f.p) + " degree " +
                                           std::to_string(d) + ": order " + to_decimal(t) +
                                           " not a divisor of p^r");
        }
    }

    /* reduction to the prime-power case: sigma_p(n) is sigma_p(p^r) tensor
     * the exterior algebra on the remaining generators */
    for (const PrimeFactor& f : primes) {
        long pr = 1;
        for (int i = 0; i < f.e; ++i) pr *= f.p;
        if (pr == n) continue;
        std::map<int, AbelianGroup> inner = sigma_p_groups(pr, f.p, d_max, jobs);
        for (int d = 0; d <= d_max; ++d) {
            AbelianGroup expect{};
            for (int dd = 0; dd <= d; ++dd) {
                long mult = exterior_rank(static_cast<int>(pr) + 1, static_cast<int>(n), d - dd);
                for (long i = 0; i < mult; ++i) expect = direct_sum(expect, inner[dd]);
            }
            if (!(expect == out.sigma[f.p][d]))
                out.failures.push_back("sigma_" + std::to_string(f.p) + " degree " + std::to_string(d) +
                                       ": " + group_text(out.sigma[f.p][d]) +
                                       " != prime-power tensor form " + group_text(expect));
        }
    }

    /* squarefree n: the explicit one-ladder tensor shape */
    bool squarefree = std::all_of(primes.begin(), primes.end(),
                                  [](const PrimeFactor& f) { return f.e == 1; });
    if (squarefree) {
        for (const PrimeFactor& f : primes) {
            for (int d = 0; d <= d_max; ++d) {
                long count = 0;
                for (int a = 1; a < f.p; ++a)
                    count += exterior_rank_excluding(2, static_cast<int>(n), static_cast<int>(f.p),
                                                     d - 2 * a);
                std::vector<Int> orders(static_cast<size_t>(count), Int(f.p));
                AbelianGroup expect = make_group(0, std::move(orders));
                if (!(expect == out.sigma[f.p][d]))
                    out.failures.push_back("sigma_" + std::to_string(f.p) + " degree " +
                                           std::to_string(d) + ": " + group_text(out.sigma[f.p][d]) +
                                           " != squarefree shape " + group_text(expect));
            }
        }
    }

    return out;
}

std::vector<SanityCheck> sanity_suite(long n, int jobs) {
    if (n < 2) throw std::invalid_argument("sanity_suite: need n >= 2");
    const int d_max = static_cast<int>(n * n + 1);
    std::map<int, AbelianGroup> g = groups_by_degree(n, d_max, jobs);
    std::vector<SanityCheck> out;
    auto add = [&](const std::string& name, const std::string& expected, const std::string& computed) {
        out.push_back({name, expected, computed, expected == computed});
    };

    std::string above;
    for (int d = static_cast<int>(n * n); d <= d_max; ++d)
        if (!g[d].is_trivial()) above += (above.empty() ? "" : ", ") + ("deg " + std::to_string(d) +
                                                                        ": " + group_text(g[d]));
    add("vanishing above the dimension", "0", above.empty() ? "0" : above);
    add("top group H^{n^2-1}", "Z", group_text(g[static_cast<int>(n * n - 1)]));
    add("H^3", "Z", group_text(g[3]));
    add("H^2", "Z/" + std::to_string(n), group_text(g[2]));

    long total_free = 0;
    for (const auto& [d, gg] : g) total_free += gg.free_rank;
    add("total free rank", std::to_string(1L << (n - 1)), std::to_string(total_free));
    add("c_2 multiplier", n % 2 == 0 ? "2" : "1", std::to_string(c_multiplier(n, 2)));
    return out;
}

nlohmann::json presentation_to_json(const RingPresentation& pres) {
    nlohmann::json j;
    j["n"] = pres.n;
    nlohmann::json gens = nlohmann::json::array();
    gens.push_back({{"name", "w"}, {"deg", 2}});
    for (long k = 2; k <= pres.n; ++k)
        gens.push_back({{"name", "r" + std::to_string(k)}, {"deg", 2 * static_cast<int>(k) - 1}});
    j["generators"] = gens;
    nlohmann::json rels = nlohmann::json::array();
    for (const Relation& r : pres.relations)
        rels.push_back({{"provenance", r.provenance}, {"terms", to_json(r.value)}});
    j["relations"] = rels;
    return j;
}

std::string presentation_to_text(const RingPresentation& pres) {
    std::string out = "H*(PU(" + std::to_string(pres.n) + "))\n";
    out += "generators: w (deg 2)";
    for (long k = 2; k <= pres.n; ++k) {
        long d = 2 * k - 1;
        out += ", r" + std::to_string(d) + " (deg " + std::to_string(d) + ")";
    }
    out += "\nrelations:\n";
    for (const Relation& r : pres.relations)
        out += "  [" + r.provenance + "] " + to_text(r.value) + "\n";
    return out;
}

std::string presentation_to_latex(const RingPresentation& pres) {
    std::string orders;
    std::vector<const Relation*> rows;
    for (const Relation& r : pres.relations) {
        if (r.provenance.rfind("order", 0) == 0) {
            if (!orders.empty()) orders += ",";
            orders += to_latex(r.value);
        } else {
            rows.push_back(&r);
        }
    }
    std::string out = "$\\left\\langle " + orders + "\\right\\rangle $\n";
    out += "\\begin{tabular}{l|l}\n\\hline\\hline\n$I$ & $R_{I}$ \\\\ \\hline\\hline\n";
    for (const Relation* r : rows) {
        std::string iset = r->provenance.substr(2);
        out += "$\\{" + iset + "\\}$ & $" + to_latex(r->value) + "$ \\\\ \\hline\n";
    }
    out += "\\end{tabular}\n";
    return out;
}

nlohmann::json groups_to_json(const std::map<int, AbelianGroup>& groups) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [d, g] : groups) {
        nlohmann::json t;
        t["degree"] = d;
        t["free_rank"] = g.free_rank;
        nlohmann::json tor = nlohmann::json::array();
        for (const Int& v : g.torsion) tor.push_back(to_decimal(v));
        t["torsion"] = tor;
        arr.push_back(t);
    }
    return arr;
}

std::string groups_to_text(const std::map<int, AbelianGroup>& groups) {
    std::string out;
    for (const auto& [d, g] : groups) out += "deg " + std::to_string(d) + ": " + group_text(g) + "\n";
    return out;
}

}  // namespace pucoh
