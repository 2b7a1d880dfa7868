#include "pucoh/intlinalg.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace pucoh {

static int abs_cmp(const Int& a, const Int& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }

/* quotient rounded to nearest (ties toward zero magnitude remainder);
 * keeps Euclidean steps shrinking as fast as possible */
static Int div_round(const Int& a, const Int& d) {
    Int q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t());
    Int ad = abs(d);
    if (r * 2 > ad) q += 1;
    return q;
}

/* --- SparseIntMatrix --- */

SparseIntMatrix SparseIntMatrix::from_dense(const std::vector<std::vector<Int>>& d) {
    SparseIntMatrix m(static_cast<long>(d.size()), d.empty() ? 0 : static_cast<long>(d[0].size()));
    for (long r = 0; r < m.rows; ++r) {
        if (static_cast<long>(d[r].size()) != m.cols)
            throw std::invalid_argument("from_dense: ragged matrix");
        for (long c = 0; c < m.cols; ++c)
            if (d[r][c] != 0) m.entries[{r, c}] = d[r][c];
    }
    return m;
}

void SparseIntMatrix::add(long r, long c, const Int& v) {
    if (r < 0 || r >= rows || c < 0 || c >= cols) throw std::out_of_range("SparseIntMatrix::add");
    if (v == 0) return;
    auto it = entries.find({r, c});
    if (it == entries.end()) {
        entries.emplace(std::make_pair(r, c), v);
    } else {
        it->second += v;
        if (it->second == 0) entries.erase(it);
    }
}

void SparseIntMatrix::set(long r, long c, const Int& v) {
    if (r < 0 || r >= rows || c < 0 || c >= cols) throw std::out_of_range("SparseIntMatrix::set");
    if (v == 0)
        entries.erase({r, c});
    else
        entries[{r, c}] = v;
}

Int SparseIntMatrix::get(long r, long c) const {
    auto it = entries.find({r, c});
    return it == entries.end() ? Int(0) : it->second;
}

std::vector<std::vector<Int>> SparseIntMatrix::dense() const {
    std::vector<std::vector<Int>> d(rows, std::vector<Int>(cols, 0));
    for (const auto& [rc, v] : entries) d[rc.first][rc.second] = v;
    return d;
}

std::string SparseIntMatrix::dump_coordinate() const {
    std::ostringstream os;
    for (const auto& [rc, v] : entries) os << rc.first << " " << rc.second << " " << v.get_str() << "\n";
    return os.str();
}

/* --- sparse vector helpers --- */

SparseVec sparse_from_dense(const std::vector<Int>& v) {
    SparseVec out;
    for (long i = 0; i < static_cast<long>(v.size()); ++i)
        if (v[i] != 0) out.emplace_back(i, v[i]);
    return out;
}

void sparse_axpy(SparseVec& dst, const Int& q, const SparseVec& src) {
    if (q == 0 || src.empty()) return;
    SparseVec out;
    out.reserve(dst.size() + src.size());
    size_t i = 0, j = 0;
    while (i < dst.size() || j < src.size()) {
        if (j == src.size() || (i < dst.size() && dst[i].first < src[j].first)) {
            out.push_back(dst[i++]);
        } else if (i == dst.size() || src[j].first < dst[i].first) {
            out.emplace_back(src[j].first, -q * src[j].second);
            ++j;
        } else {
            Int v = dst[i].second - q * src[j].second;
            if (v != 0) out.emplace_back(dst[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    dst = std::move(out);
}

static const Int* sparse_at(const SparseVec& v, long row) {
    auto it = std::lower_bound(v.begin(), v.end(), row,
                               [](const std::pair<long, Int>& e, long r) { return e.first < r; });
    if (it == v.end() || it->first != row) return nullptr;
    return &it->second;
}

/* --- ColumnEchelon --- */

ColumnEchelon::ColumnEchelon(long nrows, std::vector<SparseVec> columns, bool track_combos)
    : nrows_(nrows), track_(track_combos), h_(std::move(columns)) {
    long ncols = static_cast<long>(h_.size());
    pivot_col_.assign(ncols, 0);
    if (track_) {
        v_.resize(ncols);
        for (long c = 0; c < ncols; ++c) v_[c].emplace_back(c, 1);
    }

    /* rows -> incident columns (lazily maintained; may hold stale entries) */
    std::vector<std::vector<long>> row_index(nrows_);
    for (long c = 0; c < ncols; ++c)
        for (const auto& [r, v] : h_[c]) row_index[r].push_back(c);

    using QEntry = std::pair<long, long>;  /* (incidence, row) */
    std::priority_queue<QEntry, std::vector<QEntry>, std::greater<QEntry>> queue;
    std::vector<char> processed(nrows_, 0), queued(nrows_, 0);
    for (long r = 0; r < nrows_; ++r)
        if (!row_index[r].empty()) {
            queue.push({static_cast<long>(row_index[r].size()), r});
            queued[r] = 1;
        }

    auto gather = [&](long r) {
        std::vector<long> cols;
        for (long c : row_index[r]) {
            if (pivot_col_[c]) continue;
            if (sparse_at(h_[c], r)) cols.push_back(c);
        }
        std::sort(cols.begin(), cols.end());
        cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
        row_index[r] = cols;
        return cols;
    };

    while (!queue.empty()) {
        auto [key, r] = queue.top();
        queue.pop();
        if (processed[r]) continue;
        std::vector<long> cols = gather(r);
        if (cols.empty()) {
            processed[r] = 1;
            continue;
        }
        long cur = static_cast<long>(cols.size());
        if (cur > key && !queue.empty()) {
            queue.push({cur, r});
            continue;
        }
        processed[r] = 1;

        while (cols.size() > 1) {
            /* pivot column: least |entry| at row r, then least index */
            size_t best = 0;
            const Int* bestv = sparse_at(h_[cols[0]], r);
            for (size_t i = 1; i < cols.size(); ++i) {
                const Int* v = sparse_at(h_[cols[i]], r);
                if (abs_cmp(*v, *bestv) < 0) {
                    best = i;
                    bestv = v;
                }
            }
            long cp = cols[best];
            Int pv = *bestv;
            std::vector<long> next{cp};
            for (size_t i = 0; i < cols.size(); ++i) {
                if (i == best) continue;
                long c = cols[i];
                Int cv = *sparse_at(h_[c], r);
                Int q = div_round(cv, pv);
                if (q != 0) {
                    /* record fill rows so their queue entries exist */
                    for (const auto& [rr, vv] : h_[cp]) {
                        if (processed[rr] || sparse_at(h_[c], rr)) continue;
                        row_index[rr].push_back(c);
                        if (!queued[rr]) {
                            queue.push({1, rr});
                            queued[rr] = 1;
                        }
                    }
                    sparse_axpy(h_[c], q, h_[cp]);
                    if (track_) sparse_axpy(v_[c], q, v_[cp]);
                }
                if (sparse_at(h_[c], r)) next.push_back(c);
            }
            cols = std::move(next);
        }
        pivots_.emplace_back(r, cols[0]);
        pivot_col_[cols[0]] = 1;
    }
}

std::optional<std::vector<Int>> ColumnEchelon::solve(std::vector<Int> b) const {
    if (!track_) throw std::logic_error("ColumnEchelon::solve requires track_combos");
    if (static_cast<long>(b.size()) != nrows_) throw std::invalid_argument("solve: size mismatch");
    std::vector<std::pair<long, Int>> picked;  /* (col, multiplier) */
    for (const auto& [r, c] : pivots_) {
        if (b[r] == 0) continue;
        const Int* pv = sparse_at(h_[c], r);
        if (!divides(*pv, b[r])) return std::nullopt;
        Int q = div_exact(b[r], *pv);
        for (const auto& [rr, vv] : h_[c]) b[rr] -= q * vv;
        picked.emplace_back(c, std::move(q));
    }
    for (const Int& x : b)
        if (x != 0) return std::nullopt;
    std::vector<Int> out(h_.size(), 0);
    for (const auto& [c, q] : picked)
        for (const auto& [i, vv] : v_[c]) out[i] += q * vv;
    return out;
}

std::optional<Int> ColumnEchelon::order_denominator(std::vector<Int> b) const {
    if (static_cast<long>(b.size()) != nrows_) throw std::invalid_argument("order_denominator: size mismatch");
    std::vector<Rat> rb(b.size());
    for (size_t i = 0; i < b.size(); ++i) rb[i] = b[i];
    Int denom = 1;
    for (const auto& [r, c] : pivots_) {
        if (rb[r] == 0) continue;
        const Int* pv = sparse_at(h_[c], r);
        Rat q = rb[r] / Rat(*pv);
        q.canonicalize();
        for (const auto& [rr, vv] : h_[c]) rb[rr] -= q * Rat(vv);
        Int l;
        mpz_lcm(l.get_mpz_t(), denom.get_mpz_t(), q.get_den().get_mpz_t());
        denom = l;
    }
    for (const Rat& x : rb)
        if (x != 0) return std::nullopt;
    return denom;
}

std::vector<std::vector<Int>> ColumnEchelon::kernel() const {
    if (!track_) throw std::logic_error("ColumnEchelon::kernel requires track_combos");
    std::vector<std::vector<Int>> out;
    for (size_t c = 0; c < h_.size(); ++c) {
        if (pivot_col_[c]) continue;
        if (!h_[c].empty()) throw std::logic_error("ColumnEchelon: non-pivot column not eliminated");
        std::vector<Int> vec(h_.size(), 0);
        for (const auto& [i, vv] : v_[c]) vec[i] = vv;
        out.push_back(std::move(vec));
    }
    return out;
}

/* --- dense Smith normal form --- */

static std::vector<Int> dense_snf(std::vector<std::vector<Int>>& a, SmithTransforms* t) {
    long nr = static_cast<long>(a.size());
    long nc = nr ? static_cast<long>(a[0].size()) : 0;
    std::vector<Int> factors;
    for (long k = 0; k < std::min(nr, nc); ++k) {
        /* locate minimal nonzero entry in the trailing block */
        long pi = -1, pj = -1;
        for (long i = k; i < nr; ++i)
            for (long j = k; j < nc; ++j)
                if (a[i][j] != 0 && (pi < 0 || abs_cmp(a[i][j], a[pi][pj]) < 0)) {
                    pi = i;
                    pj = j;
                }
        if (pi < 0) break;
        if (pi != k) {
            std::swap(a[pi], a[k]);
            if (t) std::swap(t->left[pi], t->left[k]);
        }
        if (pj != k) {
            for (long i = 0; i < nr; ++i) std::swap(a[i][pj], a[i][k]);
            if (t)
                for (auto& row : t->right) std::swap(row[pj], row[k]);
        }
        for (bool settled = false; !settled;) {
            bool dirty;
            do {
                dirty = false;
                for (long i = k + 1; i < nr; ++i) {
                    if (a[i][k] == 0) continue;
                    Int q = div_round(a[i][k], a[k][k]);
                    if (q != 0) {
                        for (long j = k; j < nc; ++j) a[i][j] -= q * a[k][j];
                        if (t)
                            for (long j = 0; j < nr; ++j) t->left[i][j] -= q * t->left[k][j];
                    }
                    if (a[i][k] != 0) {
                        std::swap(a[i], a[k]);
                        if (t) std::swap(t->left[i], t->left[k]);
                        dirty = true;
                    }
                }
                for (long j = k + 1; j < nc; ++j) {
                    if (a[k][j] == 0) continue;
                    Int q = div_round(a[k][j], a[k][k]);
                    if (q != 0) {
                        for (long i = k; i < nr; ++i) a[i][j] -= q * a[i][k];
                        if (t)
                            for (long i = 0; i < nc; ++i) t->right[i][j] -= q * t->right[i][k];
                    }
                    if (a[k][j] != 0) {
                        for (long i = k; i < nr; ++i) std::swap(a[i][j], a[i][k]);
                        if (t)
                            for (long i = 0; i < nc; ++i) std::swap(t->right[i][j], t->right[i][k]);
                        dirty = true;
                    }
                }
            } while (dirty);
            /* pivot must divide the whole trailing block */
            settled = true;
            for (long i = k + 1; i < nr && settled; ++i)
                for (long j = k + 1; j < nc && settled; ++j)
                    if (!divides(a[k][k], a[i][j])) {
                        for (long jj = k; jj < nc; ++jj) a[k][jj] += a[i][jj];
                        if (t)
                            for (long jj = 0; jj < nr; ++jj) t->left[k][jj] += t->left[i][jj];
                        settled = false;
                    }
        }
        if (a[k][k] < 0) {
            for (long j = k; j < nc; ++j) a[k][j] = -a[k][j];
            if (t)
                for (long j = 0; j < nr; ++j) t->left[k][j] = -t->left[k][j];
        }
        factors.push_back(a[k][k]);
    }
    return factors;
}

/* --- invariant factors without entry explosion ---
 *
 * Plain integer diagonalization can swell entries exponentially even on
 * small matrices, and the d2 differentials of the Koszul page trigger
 * exactly that.  The finish below therefore never eliminates over Z
 * directly.  A fraction-free (Bareiss) pass finds the rank r and a
 * nonzero r x r minor exactly; Bareiss intermediates are themselves
 * minors of the input, so their bit size grows linearly with the step
 * count.  Every invariant factor divides any nonzero r x r minor D, so
 * the elimination may then run modulo D: the cokernel of A agrees with
 * the cokernel of [A | D*I] apart from n - r extra Z/D summands, and
 * that augmented lattice absorbs mod-D reductions, keeping every entry
 * in (-D/2, D/2] for good. */

/* fraction-free elimination on a copy; returns the rank and stores in
 * `minor` the magnitude of the final pivot, which is an r x r minor of
 * the input.  `mirror` flips the pivot scan so a second run tends to
 * select a different submatrix: the gcd of two such minors is usually
 * far smaller than either one */
static long bareiss_rank_minor(std::vector<std::vector<Int>> a, bool mirror, Int& minor) {
    long nr = static_cast<long>(a.size());
    long nc = nr ? static_cast<long>(a[0].size()) : 0;
    Int prev = 1, last = 1;
    long k = 0;
    for (; k < std::min(nr, nc); ++k) {
        long pi = -1, pj = -1;
        for (long di = 0; di < nr - k; ++di)
            for (long dj = 0; dj < nc - k; ++dj) {
                long i = mirror ? nr - 1 - di : k + di;
                long j = mirror ? nc - 1 - dj : k + dj;
                if (a[i][j] != 0 && (pi < 0 || abs_cmp(a[i][j], a[pi][pj]) < 0)) {
                    pi = i;
                    pj = j;
                }
            }
        if (pi < 0) break;
        if (pi != k) std::swap(a[pi], a[k]);
        if (pj != k)
            for (long i = k; i < nr; ++i) std::swap(a[i][pj], a[i][k]);
        for (long i = k + 1; i < nr; ++i) {
            const bool zi = a[i][k] == 0;
            for (long j = k + 1; j < nc; ++j) {
                if (zi && a[i][j] == 0) continue;
                Int num = a[i][j] * a[k][k];
                if (!zi && a[k][j] != 0) num -= a[i][k] * a[k][j];
                a[i][j] = div_exact(num, prev);
            }
        }
        prev = a[k][k];
        last = prev;
    }
    minor = abs(last);
    return k;
}

/* balanced residue in (-D/2, D/2]; D > 0 */
static Int mod_balanced(const Int& x, const Int& D) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), D.get_mpz_t());
    if (r * 2 > D) r -= D;
    return r;
}

/* diagonalize modulo D > 1 and return the diagonal values found.  no
 * divisibility fix-ups here -- the caller gcd/lcm-chains the results --
 * so a plain Euclidean sweep suffices, with every written entry reduced
 * back into the balanced range */
static std::vector<Int> diagonalize_mod(std::vector<std::vector<Int>>& a, const Int& D) {
    long nr = static_cast<long>(a.size());
    long nc = nr ? static_cast<long>(a[0].size()) : 0;
    for (auto& r : a)
        for (Int& x : r) x = mod_balanced(x, D);
    std::vector<Int> diag;
    for (long k = 0; k < std::min(nr, nc); ++k) {
        long pi = -1, pj = -1;
        for (long i = k; i < nr; ++i)
            for (long j = k; j < nc; ++j)
                if (a[i][j] != 0 && (pi < 0 || abs_cmp(a[i][j], a[pi][pj]) < 0)) {
                    pi = i;
                    pj = j;
                }
        if (pi < 0) break;
        if (pi != k) std::swap(a[pi], a[k]);
        if (pj != k)
            for (long i = 0; i < nr; ++i) std::swap(a[i][pj], a[i][k]);
        if (a[k][k] < 0)
            for (long j = k; j < nc; ++j) a[k][j] = -a[k][j];
        bool dirty;
        do {
            dirty = false;
            for (long i = k + 1; i < nr; ++i) {
                if (a[i][k] == 0) continue;
                Int q = div_round(a[i][k], a[k][k]);
                if (q != 0)
                    for (long j = k; j < nc; ++j) {
                        a[i][j] -= q * a[k][j];
                        if (j > k) a[i][j] = mod_balanced(a[i][j], D);
                    }
                if (a[i][k] != 0) {
                    std::swap(a[i], a[k]);
                    dirty = true;
                }
            }
            for (long j = k + 1; j < nc; ++j) {
                if (a[k][j] == 0) continue;
                Int q = div_round(a[k][j], a[k][k]);
                if (q != 0)
                    for (long i = k; i < nr; ++i) {
                        a[i][j] -= q * a[i][k];
                        if (i > k) a[i][j] = mod_balanced(a[i][j], D);
                    }
                if (a[k][j] != 0) {
                    for (long i = k; i < nr; ++i) std::swap(a[i][j], a[i][k]);
                    dirty = true;
                }
            }
        } while (dirty);
        diag.push_back(a[k][k]);
    }
    return diag;
}

/* --- sparse Smith phase: peel off unit pivots, exact-finish the rest --- */

static std::vector<Int> sparse_snf_invariants(const SparseIntMatrix& m) {
    std::vector<std::map<long, Int>> row(m.rows);
    std::vector<std::set<long>> colrows(m.cols);
    for (const auto& [rc, v] : m.entries) {
        row[rc.first][rc.second] = v;
        colrows[rc.second].insert(rc.first);
    }

    long unit_pivots = 0;
    using HEntry = std::tuple<long, long, long>;  /* (cost, row, col) */
    std::priority_queue<HEntry, std::vector<HEntry>, std::greater<HEntry>> heap;
    auto cost_of = [&](long r, long c) {
        return (static_cast<long>(row[r].size()) - 1) * (static_cast<long>(colrows[c].size()) - 1);
    };
    for (long r = 0; r < m.rows; ++r)
        for (const auto& [c, v] : row[r])
            if (v == 1 || v == -1) heap.push({cost_of(r, c), r, c});

    /* the peel is only a shortcut; once it starts filling in or growing
     * entries it stops and hands the leftover block to the exact finish */
    const long fill_cap = 4 * static_cast<long>(m.entries.size()) + 20000;
    long fill = static_cast<long>(m.entries.size());
    bool oversize = false;

    std::vector<char> row_dead(m.rows, 0), col_dead(m.cols, 0);
    while (!heap.empty() && !oversize && fill <= fill_cap) {
        auto [cost, r, c] = heap.top();
        heap.pop();
        if (row_dead[r] || col_dead[c]) continue;
        auto it = row[r].find(c);
        if (it == row[r].end() || (it->second != 1 && it->second != -1)) continue;
        long cur = cost_of(r, c);
        if (cur > cost && !heap.empty()) {
            heap.push({cur, r, c});
            continue;
        }
        /* eliminate: clear column c with row ops, then drop row r / col c */
        Int pv = it->second;
        std::vector<long> touched(colrows[c].begin(), colrows[c].end());
        for (long r2 : touched) {
            if (r2 == r) continue;
            Int mult = row[r2][c] * pv;  /* pv = +-1 */
            for (const auto& [c2, v2] : row[r]) {
                auto jt = row[r2].find(c2);
                if (jt == row[r2].end()) {
                    Int nv = -mult * v2;
                    if (mpz_sizeinbase(nv.get_mpz_t(), 2) > 48) oversize = true;
                    if (nv == 1 || nv == -1) heap.push({cost_of(r2, c2), r2, c2});
                    row[r2][c2] = std::move(nv);
                    colrows[c2].insert(r2);
                    ++fill;
                } else {
                    jt->second -= mult * v2;
                    if (jt->second == 0) {
                        row[r2].erase(jt);
                        colrows[c2].erase(r2);
                        --fill;
                    } else if (jt->second == 1 || jt->second == -1) {
                        heap.push({cost_of(r2, c2), r2, c2});
                    } else if (mpz_sizeinbase(jt->second.get_mpz_t(), 2) > 48) {
                        oversize = true;
                    }
                }
            }
        }
        fill -= static_cast<long>(row[r].size());
        for (const auto& [c2, v2] : row[r]) colrows[c2].erase(r);
        row[r].clear();
        row_dead[r] = 1;
        col_dead[c] = 1;
        ++unit_pivots;
    }

    /* exact finish on the surviving block */
    std::vector<long> live_rows, live_cols;
    for (long r = 0; r < m.rows; ++r)
        if (!row[r].empty()) live_rows.push_back(r);
    std::vector<char> col_seen(m.cols, 0);
    for (long r : live_rows)
        for (const auto& [c, v] : row[r]) col_seen[c] = 1;
    for (long c = 0; c < m.cols; ++c)
        if (col_seen[c]) live_cols.push_back(c);
    std::vector<Int> factors(unit_pivots, 1);
    if (live_rows.empty()) return factors;

    std::map<long, long> cindex;
    for (size_t i = 0; i < live_cols.size(); ++i) cindex[live_cols[i]] = static_cast<long>(i);
    std::vector<std::vector<Int>> block(live_rows.size(), std::vector<Int>(live_cols.size(), 0));
    for (size_t i = 0; i < live_rows.size(); ++i)
        for (const auto& [c, v] : row[live_rows[i]]) block[i][cindex[c]] = v;

    Int minor1;
    long rank = bareiss_rank_minor(block, false, minor1);
    if (rank == 0) return factors;
    Int D = minor1;
    if (mpz_sizeinbase(D.get_mpz_t(), 2) > 62) {
        Int minor2;
        long again = bareiss_rank_minor(block, true, minor2);
        if (again != rank) throw std::logic_error("smith_normal_form: rank disagrees between pivot orders");
        D = int_gcd(D, minor2);
    }

    /* slots are the diagonal of [block | D*I]: gcd(w, D) per computed
     * diagonal value, then copies of D for the rows that vanished mod D */
    std::vector<Int> slots;
    if (D == 1) {
        slots.assign(live_rows.size(), Int(1));
    } else {
        std::vector<Int> diag = diagonalize_mod(block, D);
        slots.reserve(live_rows.size());
        for (const Int& w : diag) slots.push_back(int_gcd(w, D));
        slots.resize(live_rows.size(), D);
    }
    /* one gcd/lcm sweep sorts the multiset into a divisibility chain; its
     * first `rank` entries are the invariant factors of the block and the
     * tail is the mod-D padding */
    for (size_t i = 0; i < slots.size(); ++i)
        for (size_t j = i + 1; j < slots.size(); ++j) {
            Int g = int_gcd(slots[i], slots[j]);
            Int l = div_exact(slots[i], g) * slots[j];
            slots[i] = std::move(g);
            slots[j] = std::move(l);
        }
    factors.insert(factors.end(), slots.begin(), slots.begin() + rank);
    return factors;
}

SmithResult smith_normal_form(const SparseIntMatrix& m, bool want_transforms) {
    SmithResult res;
    if (want_transforms) {
        SmithTransforms t;
        t.left.assign(m.rows, std::vector<Int>(m.rows, 0));
        t.right.assign(m.cols, std::vector<Int>(m.cols, 0));
        for (long i = 0; i < m.rows; ++i) t.left[i][i] = 1;
        for (long i = 0; i < m.cols; ++i) t.right[i][i] = 1;
        auto dense = m.dense();
        res.factors = dense_snf(dense, &t);
        res.transforms = std::move(t);
    } else {
        res.factors = sparse_snf_invariants(m);
    }
    res.rank = static_cast<long>(res.factors.size());
    return res;
}

/* --- abelian groups --- */

static std::vector<std::pair<Int, int>> factorize_int(Int n) {
    std::vector<std::pair<Int, int>> out;
    if (n < 0) n = -n;
    if (n <= 1) return out;
    for (Int p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (!divides(p, n)) continue;
        int e = 0;
        while (divides(p, n)) {
            n = div_exact(n, p);
            ++e;
        }
        out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

AbelianGroup make_group(long free_rank, std::vector<Int> orders) {
    AbelianGroup g;
    g.free_rank = free_rank;
    /* regroup prime powers into a divisibility chain */
    std::map<Int, std::vector<int>> powers;  /* p -> exponents, to be sorted descending */
    size_t slots = 0;
    for (const Int& d : orders) {
        if (d == 0) throw std::invalid_argument("make_group: zero order");
        for (const auto& [p, e] : factorize_int(d)) powers[p].push_back(e);
    }
    for (auto& [p, es] : powers) {
        std::sort(es.rbegin(), es.rend());
        slots = std::max(slots, es.size());
    }
    std::vector<Int> chain(slots, 1);
    for (const auto& [p, es] : powers)
        for (size_t i = 0; i < es.size(); ++i) chain[i] *= int_pow(p, static_cast<unsigned long>(es[i]));
    std::reverse(chain.begin(), chain.end());
    for (Int& d : chain)
        if (d > 1) g.torsion.push_back(d);
    return g;
}

AbelianGroup direct_sum(const AbelianGroup& a, const AbelianGroup& b) {
    std::vector<Int> orders = a.torsion;
    orders.insert(orders.end(), b.torsion.begin(), b.torsion.end());
    return make_group(a.free_rank + b.free_rank, std::move(orders));
}

std::string group_text(const AbelianGroup& g) {
    if (g.is_trivial()) return "0";
    std::string out;
    if (g.free_rank == 1) out = "Z";
    if (g.free_rank > 1) out = "Z^" + std::to_string(g.free_rank);
    for (const Int& d : g.torsion) {
        if (!out.empty()) out += "+";
        out += "Z/" + d.get_str();
    }
    return out;
}

AbelianGroup cokernel_invariants(const SparseIntMatrix& m) {
    SmithResult s = smith_normal_form(m);
    return make_group(m.cols - s.rank, s.factors);
}

std::vector<SparseVec> matrix_columns(const SparseIntMatrix& m) {
    std::vector<SparseVec> cols(m.cols);
    /* entries iterate row-major; columns stay sorted by pushing in row order */
    for (const auto& [rc, v] : m.entries) cols[rc.second].emplace_back(rc.first, v);
    return cols;
}

std::optional<std::vector<Int>> solve_integer(const SparseIntMatrix& m, const std::vector<Int>& b) {
    if (static_cast<long>(b.size()) != m.rows) throw std::invalid_argument("solve_integer: size mismatch");
    ColumnEchelon ech(m.rows, matrix_columns(m), true);
    return ech.solve(b);
}

std::vector<std::vector<Int>> kernel_basis(const SparseIntMatrix& m) {
    ColumnEchelon ech(m.rows, matrix_columns(m), true);
    return ech.kernel();
}

}  // namespace pucoh
