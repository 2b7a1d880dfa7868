#pragma once
/* Exact integer linear algebra: Smith normal form, integer linear solve,
 * saturated kernel bases, cokernel invariants.  The matrices come from
 * spectral-sequence differentials and presentation relation blocks; they
 * are sparse with mostly small entries, so elimination prefers unit
 * pivots chosen Markowitz-style (minimal fill estimate) and falls back
 * to a dense routine for the stubborn core. */
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pucoh/bigint.hpp"

namespace pucoh {

struct SparseIntMatrix {
    long rows = 0, cols = 0;
    std::map<std::pair<long, long>, Int> entries;  /* (row, col) -> nonzero value */

    SparseIntMatrix() = default;
    SparseIntMatrix(long r, long c) : rows(r), cols(c) {}
    static SparseIntMatrix from_dense(const std::vector<std::vector<Int>>& d);

    void add(long r, long c, const Int& v);  /* accumulate, dropping zeros */
    void set(long r, long c, const Int& v);
    Int get(long r, long c) const;
    std::vector<std::vector<Int>> dense() const;
    /* coordinate text format, one "row col value" per line, row-major order */
    std::string dump_coordinate() const;
};

struct SmithTransforms {
    std::vector<std::vector<Int>> left;   /* U: rows x rows */
    std::vector<std::vector<Int>> right;  /* V: cols x cols */
};

struct SmithResult {
    std::vector<Int> factors;  /* positive, d1 | d2 | ... | d_rank */
    long rank = 0;
    std::optional<SmithTransforms> transforms;  /* U*M*V = diag(factors) */
};

SmithResult smith_normal_form(const SparseIntMatrix& m, bool want_transforms = false);

/* finitely generated abelian group in canonical form */
struct AbelianGroup {
    long free_rank = 0;
    std::vector<Int> torsion;  /* ascending divisibility chain, entries > 1 */
    bool operator==(const AbelianGroup& o) const = default;
    bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
};

/* canonical form from an arbitrary multiset of torsion orders (1s dropped,
 * non-chain multisets are reassembled prime by prime) */
AbelianGroup make_group(long free_rank, std::vector<Int> orders);
AbelianGroup direct_sum(const AbelianGroup& a, const AbelianGroup& b);
std::string group_text(const AbelianGroup& g);

/* rows are relations: invariants of Z^cols / (row lattice) */
AbelianGroup cokernel_invariants(const SparseIntMatrix& m);

/* one solution x of M x = b over the integers, or nullopt; the solution
 * is pinned by the deterministic pivot order of the elimination */
std::optional<std::vector<Int>> solve_integer(const SparseIntMatrix& m, const std::vector<Int>& b);

/* basis of the saturated lattice {x : M x = 0} */
std::vector<std::vector<Int>> kernel_basis(const SparseIntMatrix& m);

/* --- reusable elimination engine (shared with the Koszul oracle) --- */

using SparseVec = std::vector<std::pair<long, Int>>;  /* sorted by index */

SparseVec sparse_from_dense(const std::vector<Int>& v);
void sparse_axpy(SparseVec& dst, const Int& q, const SparseVec& src);  /* dst -= q*src */
std::vector<SparseVec> matrix_columns(const SparseIntMatrix& m);

/* Column echelon form over Z via unimodular column operations.
 * Rows are processed smallest current incidence first; within a row the
 * Euclidean reduction keeps the entry of least magnitude.  With
 * track_combos the performed column operations are recorded so that
 * solutions and kernel vectors can be expressed over the original
 * columns. */
class ColumnEchelon {
public:
    ColumnEchelon(long nrows, std::vector<SparseVec> columns, bool track_combos);

    long rank() const { return static_cast<long>(pivots_.size()); }
    /* M x = b; requires track_combos */
    std::optional<std::vector<Int>> solve(std::vector<Int> b) const;
    /* membership of b in the rational column span together with the least
     * m >= 1 for which m*b lies in the integer column lattice */
    std::optional<Int> order_denominator(std::vector<Int> b) const;
    /* kernel basis over the original columns; requires track_combos */
    std::vector<std::vector<Int>> kernel() const;

private:
    long nrows_;
    bool track_;
    std::vector<SparseVec> h_;                   /* echelon columns */
    std::vector<SparseVec> v_;                   /* column combinations */
    std::vector<std::pair<long, long>> pivots_;  /* (row, col), processing order */
    std::vector<char> pivot_col_;
};

}  // namespace pucoh
