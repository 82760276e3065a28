#pragma once
// Labelled matrices over a partial field, with the determinant calculus,
// validity checking, pivoting, normalization, cycle signatures, and cross
// ratios.
//
// A matrix carries disjoint row and column label sets X and Y and entries
// from the partial field. It is "valid" when every square submatrix has a
// determinant inside the partial field (zero or a unit of the group).
//
// Two determinant paths are implemented on purpose:
//   * ring_subdet: ring-level Laplace expansion memoized by (row mask, col
//     mask), shared across all validity and basis queries on the matrix;
//   * subdet: the pivot recursion det(A) = (-1)^j A_xy det(schur complement),
//     with cofactor expansion at size <= 3, every intermediate entry
//     membership-checked.
// Their agreement on valid matrices is part of the property-test suite.

#include "catalog.hpp"
#include "graph.hpp"
#include "partial_field.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace pfkit {

struct UndefinedDeterminant : Error {
    RingElement value;  // ring value that fell outside the partial field
    UndefinedDeterminant(RingElement v, const std::string& where)
        : Error("determinant undefined: intermediate value " + r_raw_string(v) +
                " lies outside the partial field (" + where + ")"),
          value(std::move(v)) {}
};

struct UndefinedEntry : Error {
    RingElement value;
    UndefinedEntry(RingElement v, const std::string& where)
        : Error("pivot produced entry " + r_raw_string(v) + " outside the partial field (" + where + ")"),
          value(std::move(v)) {}
};

struct ValidityWitness {
    std::vector<std::string> rows, cols;  // labels of the offending submatrix
    RingElement det;                      // its ring determinant
};

enum class Validity { Unchecked, Valid, Invalid };

class PMatrix;
using DetCache = std::map<std::pair<std::uint32_t, std::uint32_t>, RingElement>;

struct PMatrixState {
    // mutable companion carried by value-semantic copies of the same matrix
    DetCache dets;
    Validity validity = Validity::Unchecked;
    std::optional<ValidityWitness> witness;
};

class PMatrix {
  public:
    PartialFieldPtr field;
    std::vector<std::string> row_labels, col_labels;
    std::vector<std::vector<PfElement>> a;  // a[i][j]
    std::shared_ptr<PMatrixState> state = std::make_shared<PMatrixState>();

    int nrows() const { return (int)row_labels.size(); }
    int ncols() const { return (int)col_labels.size(); }
    const PfElement& at(int i, int j) const { return a[i][j]; }

    int row_index(const std::string& lbl) const {
        for (int i = 0; i < nrows(); ++i)
            if (row_labels[i] == lbl) return i;
        return -1;
    }
    int col_index(const std::string& lbl) const {
        for (int j = 0; j < ncols(); ++j)
            if (col_labels[j] == lbl) return j;
        return -1;
    }
};

inline PMatrix pm_make(PartialFieldPtr field, std::vector<std::string> rows,
                       std::vector<std::string> cols,
                       std::vector<std::vector<PfElement>> entries) {
    PMatrix m;
    m.field = std::move(field);
    m.row_labels = std::move(rows);
    m.col_labels = std::move(cols);
    m.a = std::move(entries);
    std::set<std::string> seen;
    for (const auto& l : m.row_labels)
        if (!seen.insert(l).second) throw OverlappingSets("duplicate row label '" + l + "'");
    for (const auto& l : m.col_labels)
        if (!seen.insert(l).second)
            throw OverlappingSets("column label '" + l + "' collides with another label");
    if ((int)m.a.size() != m.nrows()) throw DimensionMismatch("entry rows != row labels");
    for (auto& r : m.a) {
        if ((int)r.size() != m.ncols()) throw DimensionMismatch("entry row width != col labels");
        for (auto& e : r) check_same_field(m.field, e);
    }
    return m;
}

// Convenience: build from small integers (value must lie in the field).
inline PMatrix pm_from_ints(const PartialFieldPtr& f, std::vector<std::string> rows,
                            std::vector<std::string> cols,
                            const std::vector<std::vector<long long>>& ints) {
    std::vector<std::vector<PfElement>> es;
    for (auto& r : ints) {
        std::vector<PfElement> row;
        for (auto v : r) row.push_back(pf_from_int(f, v));
        es.push_back(std::move(row));
    }
    return pm_make(f, std::move(rows), std::move(cols), std::move(es));
}

inline std::vector<std::string> default_row_labels(int m) {
    std::vector<std::string> v;
    for (int i = 1; i <= m; ++i) v.push_back("x" + std::to_string(i));
    return v;
}
inline std::vector<std::string> default_col_labels(int n) {
    std::vector<std::string> v;
    for (int j = 1; j <= n; ++j) v.push_back("y" + std::to_string(j));
    return v;
}

// ---------------------------------------------------------------------------
// Ring-level determinants, memoized by bit masks over the full matrix.

namespace detail {

inline RingElement ring_subdet_masked(const PMatrix& m, std::uint32_t rmask, std::uint32_t cmask) {
    if (rmask == 0) return re_one(m.field->ring);
    auto key = std::make_pair(rmask, cmask);
    auto it = m.state->dets.find(key);
    if (it != m.state->dets.end()) return it->second;
    int i = 0;
    while (!(rmask >> i & 1)) ++i;
    std::uint32_t rrest = rmask & ~(1u << i);
    RingElement acc = re_zero(m.field->ring);
    int sign = 1;
    for (int j = 0; j < m.ncols(); ++j) {
        if (!(cmask >> j & 1)) continue;
        if (!r_is_zero(m.a[i][j].value)) {
            RingElement sub = ring_subdet_masked(m, rrest, cmask & ~(1u << j));
            RingElement term = r_mul(m.a[i][j].value, sub);
            acc = sign > 0 ? r_add(acc, term) : r_sub(acc, term);
        }
        sign = -sign;
    }
    m.state->dets.emplace(key, acc);
    return acc;
}

inline std::uint32_t mask_of(const std::vector<int>& idxs, int limit, const char* what) {
    std::uint32_t m = 0;
    for (int i : idxs) {
        if (i < 0 || i >= limit) throw DimensionMismatch(std::string(what) + " index out of range");
        if (m >> i & 1) throw DimensionMismatch(std::string(what) + " index repeated");
        m |= 1u << i;
    }
    return m;
}

}  // namespace detail

// Ring determinant of the square submatrix on the given index sets.
inline RingElement pm_ring_subdet(const PMatrix& m, const std::vector<int>& rows,
                                  const std::vector<int>& cols) {
    if (rows.size() != cols.size()) throw DimensionMismatch("subdeterminant needs a square selection");
    auto rmask = detail::mask_of(rows, m.nrows(), "row");
    auto cmask = detail::mask_of(cols, m.ncols(), "col");
    return detail::ring_subdet_masked(m, rmask, cmask);
}

// ---------------------------------------------------------------------------
// Partial-field determinant by the pivot recursion.

namespace detail {

// dense local copy; labels no longer matter here
inline PfElement pivot_det(const PartialFieldPtr& f, std::vector<std::vector<PfElement>> w) {
    size_t n = w.size();
    if (n == 0) return pf_one(f);
    if (n <= 3) {
        // cofactor expansion over the ring; only the final value is
        // membership-checked (sums are evaluated in the ring)
        RingElement acc = re_zero(f->ring);
        std::vector<int> idx(n);
        for (size_t i = 0; i < n; ++i) idx[i] = (int)i;
        // Leibniz over n <= 3 (at most 6 terms)
        std::vector<int> p(idx);
        do {
            int sgn = 1;
            {
                auto q = p;
                for (size_t i = 0; i < n; ++i)
                    while ((size_t)q[i] != i) {
                        std::swap(q[i], q[q[i]]);
                        sgn = -sgn;
                    }
            }
            RingElement term = re_one(f->ring);
            for (size_t i = 0; i < n; ++i) term = r_mul(term, w[i][p[i]].value);
            acc = sgn > 0 ? r_add(acc, term) : r_sub(acc, term);
        } while (std::next_permutation(p.begin(), p.end()));
        auto mr = pf_member(f, acc);
        if (mr.kind == Membership::NotMember)
            throw UndefinedDeterminant(acc, "cofactor expansion of a " + std::to_string(n) + "x" +
                                                std::to_string(n) + " block");
        return pf_try_from_ring(f, acc).value();
    }
    // pivot on the first row, first nonzero column
    size_t j = 0;
    while (j < n && pf_is_zero(w[0][j])) ++j;
    if (j == n) return pf_zero(f);
    PfElement piv = w[0][j];
    PfElement inv = pf_inv(piv);
    std::vector<std::vector<PfElement>> sub;
    for (size_t u = 1; u < n; ++u) {
        std::vector<PfElement> row;
        for (size_t v = 0; v < n; ++v) {
            if (v == j) continue;
            // w[u][v] - piv^-1 * w[u][j] * w[0][v], evaluated in the ring,
            // then membership-checked
            RingElement val = r_sub(w[u][v].value,
                                    r_mul(inv.value, r_mul(w[u][j].value, w[0][v].value)));
            auto e = pf_try_from_ring(f, val);
            if (!e) throw UndefinedDeterminant(val, "schur complement entry during pivoting");
            row.push_back(*e);
        }
        sub.push_back(std::move(row));
    }
    PfElement rest = pivot_det(f, std::move(sub));
    PfElement prod = pf_mul(piv, rest);
    return (j % 2 == 1) ? pf_neg(prod) : prod;
}

}  // namespace detail

// Determinant of the square submatrix on the given index sets, as a
// partial-field element. Throws UndefinedDeterminant when an intermediate
// value leaves the partial field (never on a valid matrix).
inline PfElement pm_subdet(const PMatrix& m, const std::vector<int>& rows,
                           const std::vector<int>& cols) {
    if (rows.size() != cols.size()) throw DimensionMismatch("subdeterminant needs a square selection");
    detail::mask_of(rows, m.nrows(), "row");
    detail::mask_of(cols, m.ncols(), "col");
    std::vector<std::vector<PfElement>> w;
    for (int i : rows) {
        std::vector<PfElement> r;
        for (int j : cols) r.push_back(m.a[i][j]);
        w.push_back(std::move(r));
    }
    return detail::pivot_det(m.field, std::move(w));
}

inline PfElement pm_det(const PMatrix& m) {
    if (m.nrows() != m.ncols()) throw DimensionMismatch("determinant of a non-square matrix");
    std::vector<int> rows(m.nrows()), cols(m.ncols());
    for (int i = 0; i < m.nrows(); ++i) rows[i] = i;
    for (int j = 0; j < m.ncols(); ++j) cols[j] = j;
    return pm_subdet(m, rows, cols);
}

// ---------------------------------------------------------------------------
// Validity: every square submatrix must have its ring determinant inside the
// partial field. Result, not exception; the first failure is the witness
// (submatrices enumerated by ascending size, then mask order).

struct ValidationResult {
    bool valid;
    std::optional<ValidityWitness> witness;
};

inline ValidationResult pm_validate(const PMatrix& m) {
    if (m.state->validity == Validity::Valid) return {true, std::nullopt};
    if (m.state->validity == Validity::Invalid) return {false, m.state->witness};
    int nr = m.nrows(), nc = m.ncols();
    if (nr + nc > 24) throw TooLarge("validity check limited to |rows|+|cols| <= 24");
    int kmax = std::min(nr, nc);
    // enumerate masks by popcount
    std::vector<std::vector<std::uint32_t>> rmasks(kmax + 1), cmasks(kmax + 1);
    for (std::uint32_t rm = 1; rm < (1u << nr); ++rm) {
        int pc = __builtin_popcount(rm);
        if (pc <= kmax) rmasks[pc].push_back(rm);
    }
    for (std::uint32_t cm = 1; cm < (1u << nc); ++cm) {
        int pc = __builtin_popcount(cm);
        if (pc <= kmax) cmasks[pc].push_back(cm);
    }
    for (int k = 1; k <= kmax; ++k) {
        for (auto rm : rmasks[k])
            for (auto cm : cmasks[k]) {
                RingElement d = detail::ring_subdet_masked(m, rm, cm);
                if (pf_member(m.field, d).kind == Membership::NotMember) {
                    ValidityWitness w;
                    for (int i = 0; i < nr; ++i)
                        if (rm >> i & 1) w.rows.push_back(m.row_labels[i]);
                    for (int j = 0; j < nc; ++j)
                        if (cm >> j & 1) w.cols.push_back(m.col_labels[j]);
                    w.det = d;
                    m.state->validity = Validity::Invalid;
                    m.state->witness = w;
                    return {false, w};
                }
            }
    }
    m.state->validity = Validity::Valid;
    return {true, std::nullopt};
}

inline void pm_require_valid(const PMatrix& m, const std::string& what) {
    auto v = pm_validate(m);
    if (!v.valid) {
        std::string msg = what + ": matrix is not valid over " + m.field->name +
                          " (submatrix rows {";
        for (size_t i = 0; i < v.witness->rows.size(); ++i)
            msg += (i ? "," : "") + v.witness->rows[i];
        msg += "} cols {";
        for (size_t i = 0; i < v.witness->cols.size(); ++i)
            msg += (i ? "," : "") + v.witness->cols[i];
        msg += "} has determinant " + r_raw_string(v.witness->det) + ")";
        throw InvalidMatrix(msg);
    }
}

// ---------------------------------------------------------------------------
// Minor operations.

inline PMatrix pm_pivot(const PMatrix& m, int i, int j) {
    if (i < 0 || i >= m.nrows() || j < 0 || j >= m.ncols())
        throw DimensionMismatch("pivot position out of range");
    const PfElement& piv = m.a[i][j];
    if (pf_is_zero(piv)) throw ZeroPivot("pivot entry at (" + m.row_labels[i] + "," +
                                         m.col_labels[j] + ") is zero");
    PfElement inv = pf_inv(piv);
    PMatrix r = m;
    r.state = std::make_shared<PMatrixState>();
    r.row_labels[i] = m.col_labels[j];
    r.col_labels[j] = m.row_labels[i];
    for (int u = 0; u < m.nrows(); ++u)
        for (int v = 0; v < m.ncols(); ++v) {
            if (u == i && v == j)
                r.a[u][v] = inv;
            else if (u == i)
                r.a[u][v] = pf_mul(inv, m.a[i][v]);
            else if (v == j)
                r.a[u][v] = pf_neg(pf_mul(inv, m.a[u][j]));
            else {
                RingElement val = r_sub(m.a[u][v].value,
                                        r_mul(inv.value, r_mul(m.a[u][j].value, m.a[i][v].value)));
                auto e = pf_try_from_ring(m.field, val);
                if (!e)
                    throw UndefinedEntry(val, "position (" + m.row_labels[u] + "," +
                                                  m.col_labels[v] + ")");
                r.a[u][v] = *e;
            }
        }
    return r;
}

inline PMatrix pm_pivot(const PMatrix& m, const std::string& x, const std::string& y) {
    int i = m.row_index(x), j = m.col_index(y);
    if (i < 0 || j < 0) throw DimensionMismatch("pivot labels not found: " + x + "," + y);
    return pm_pivot(m, i, j);
}

inline PMatrix pm_scale_row(const PMatrix& m, int i, const PfElement& u) {
    check_same_field(m.field, u);
    if (pf_is_zero(u)) throw NonUnit("row scaling factor must be a unit");
    PMatrix r = m;
    r.state = std::make_shared<PMatrixState>();
    for (int j = 0; j < m.ncols(); ++j) r.a[i][j] = pf_mul(u, m.a[i][j]);
    return r;
}

inline PMatrix pm_scale_col(const PMatrix& m, int j, const PfElement& u) {
    check_same_field(m.field, u);
    if (pf_is_zero(u)) throw NonUnit("column scaling factor must be a unit");
    PMatrix r = m;
    r.state = std::make_shared<PMatrixState>();
    for (int i = 0; i < m.nrows(); ++i) r.a[i][j] = pf_mul(u, m.a[i][j]);
    return r;
}

// Keep the listed rows/cols (by index), in the listed order.
inline PMatrix pm_submatrix(const PMatrix& m, const std::vector<int>& rows,
                            const std::vector<int>& cols) {
    PMatrix r;
    r.field = m.field;
    for (int i : rows) {
        if (i < 0 || i >= m.nrows()) throw DimensionMismatch("row index out of range");
        r.row_labels.push_back(m.row_labels[i]);
    }
    for (int j : cols) {
        if (j < 0 || j >= m.ncols()) throw DimensionMismatch("col index out of range");
        r.col_labels.push_back(m.col_labels[j]);
    }
    for (int i : rows) {
        std::vector<PfElement> row;
        for (int j : cols) row.push_back(m.a[i][j]);
        r.a.push_back(std::move(row));
    }
    return r;
}

inline PMatrix pm_delete_row(const PMatrix& m, int i) {
    std::vector<int> rows, cols;
    for (int u = 0; u < m.nrows(); ++u)
        if (u != i) rows.push_back(u);
    for (int v = 0; v < m.ncols(); ++v) cols.push_back(v);
    return pm_submatrix(m, rows, cols);
}

inline PMatrix pm_delete_col(const PMatrix& m, int j) {
    std::vector<int> rows, cols;
    for (int u = 0; u < m.nrows(); ++u) rows.push_back(u);
    for (int v = 0; v < m.ncols(); ++v)
        if (v != j) cols.push_back(v);
    return pm_submatrix(m, rows, cols);
}

inline PMatrix pm_transpose(const PMatrix& m) {
    PMatrix r;
    r.field = m.field;
    r.row_labels = m.col_labels;
    r.col_labels = m.row_labels;
    r.a.assign(m.ncols(), std::vector<PfElement>());
    for (int j = 0; j < m.ncols(); ++j)
        for (int i = 0; i < m.nrows(); ++i) r.a[j].push_back(m.a[i][j]);
    return r;
}

// ---------------------------------------------------------------------------
// Support graph and normalization.

inline BipGraph pm_graph(const PMatrix& m) {
    std::vector<std::vector<bool>> sup(m.nrows(), std::vector<bool>(m.ncols(), false));
    for (int i = 0; i < m.nrows(); ++i)
        for (int j = 0; j < m.ncols(); ++j) sup[i][j] = !pf_is_zero(m.a[i][j]);
    return make_bip_graph(sup);
}

// an edge of the support graph named by labels
struct EdgeRef {
    std::string row, col;
};

namespace detail {

inline std::pair<int, int> edge_indices(const PMatrix& m, const EdgeRef& e) {
    int i = m.row_index(e.row), j = m.col_index(e.col);
    if (i < 0 || j < 0) throw DimensionMismatch("edge labels not found: " + e.row + "," + e.col);
    return {i, j};
}

}  // namespace detail

// Scale rows and columns so that every edge of the spanning forest T carries
// entry 1. Deterministic: each tree is rooted at its least vertex (rows
// before columns, both in index order), whose scale is fixed to 1; the
// remaining scales follow uniquely along tree edges in BFS order.
// T must be a spanning forest of the support graph (NotAForest otherwise);
// its edges must be nonzero entries.
inline PMatrix pm_normalize(const PMatrix& m, const std::vector<EdgeRef>& tree) {
    int nr = m.nrows(), nc = m.ncols(), n = nr + nc;
    // adjacency restricted to T
    std::vector<std::vector<int>> tadj(n);
    std::set<std::pair<int, int>> tset;
    for (const auto& e : tree) {
        auto [i, j] = detail::edge_indices(m, e);
        if (pf_is_zero(m.a[i][j]))
            throw NotAForest("edge (" + e.row + "," + e.col + ") is a zero entry");
        if (!tset.insert({i, nr + j}).second)
            throw NotAForest("edge (" + e.row + "," + e.col + ") listed twice");
        tadj[i].push_back(nr + j);
        tadj[nr + j].push_back(i);
    }
    for (auto& l : tadj) std::sort(l.begin(), l.end());
    // BFS over T; a revisit means a cycle
    std::vector<PfElement> scale(n, pf_one(m.field));
    std::vector<int> state(n, 0);  // 0 unseen, 1 done
    size_t used = 0;
    for (int s = 0; s < n; ++s) {
        if (state[s]) continue;
        state[s] = 1;
        std::queue<int> q;
        q.push(s);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int w : tadj[u]) {
                if (state[w]) {
                    // parent edges come back once; count each edge once
                    continue;
                }
                ++used;
                // fix scale[w] so that scaled entry on (u,w) is 1
                int i = u < nr ? u : w;
                int j = u < nr ? w - nr : u - nr;
                PfElement cur = pf_mul(scale[i], pf_mul(scale[nr + j], m.a[i][j]));
                scale[w] = pf_mul(scale[w], pf_inv(cur));
                state[w] = 1;
                q.push(w);
            }
        }
    }
    if (used != tree.size()) throw NotAForest("edge set contains a cycle");
    PMatrix r = m;
    r.state = std::make_shared<PMatrixState>();
    for (int i = 0; i < nr; ++i)
        for (int j = 0; j < nc; ++j) r.a[i][j] = pf_mul(scale[i], pf_mul(scale[nr + j], m.a[i][j]));
    return r;
}

// Default spanning forest of the support graph (least-label roots, BFS).
inline std::vector<EdgeRef> pm_default_forest(const PMatrix& m) {
    auto g = pm_graph(m);
    auto f = bfs_forest(g);
    std::vector<EdgeRef> t;
    for (auto [u, w] : f.tree_edges) {
        int i = u < g.nrows ? u : w;
        int j = u < g.nrows ? w - g.nrows : u - g.nrows;
        t.push_back({m.row_labels[i], m.col_labels[j]});
    }
    return t;
}

inline PMatrix pm_normalize(const PMatrix& m) { return pm_normalize(m, pm_default_forest(m)); }

// ---------------------------------------------------------------------------
// Cycle signatures and cross ratios.

// cycle: closed vertex label sequence v0 v1 ... v_{k-1} (v_k = v0 implied),
// alternating between row and column labels, each edge a nonzero entry.
// sigma(C) = (-1)^{k/2} prod over directed edges (v,w): entry if v is a row,
// inverse entry if v is a column.
inline PfElement pm_cycle_signature(const PMatrix& m, const std::vector<std::string>& cycle) {
    size_t k = cycle.size();
    if (k < 4 || k % 2 != 0) throw NotACycle("cycle must alternate and have even length >= 4");
    std::set<std::string> seen;
    PfElement prod = pf_one(m.field);
    for (size_t t = 0; t < k; ++t) {
        const std::string& v = cycle[t];
        const std::string& w = cycle[(t + 1) % k];
        if (!seen.insert(v).second) throw NotACycle("vertex '" + v + "' repeated");
        int iv = m.row_index(v), jw = m.col_index(w);
        if (iv >= 0 && jw >= 0) {
            if (pf_is_zero(m.a[iv][jw]))
                throw NotACycle("edge (" + v + "," + w + ") is a zero entry");
            prod = pf_mul(prod, m.a[iv][jw]);
        } else {
            int jv = m.col_index(v), iw = m.row_index(w);
            if (jv < 0 || iw < 0)
                throw NotACycle("consecutive vertices '" + v + "','" + w +
                                "' do not alternate row/column");
            if (pf_is_zero(m.a[iw][jv]))
                throw NotACycle("edge (" + v + "," + w + ") is a zero entry");
            prod = pf_mul(prod, pf_inv(m.a[iw][jv]));
        }
    }
    if ((k / 2) % 2 == 1) prod = pf_neg(prod);
    return prod;
}

// All chordless cycles of the support graph, as label sequences.
inline std::vector<std::vector<std::string>> pm_induced_cycles(const PMatrix& m,
                                                               size_t cap = 100000) {
    auto g = pm_graph(m);
    auto cycles = chordless_cycles(g, cap);
    std::vector<std::vector<std::string>> out;
    for (auto& c : cycles) {
        std::vector<std::string> lbl;
        for (int v : c)
            lbl.push_back(v < g.nrows ? m.row_labels[v] : m.col_labels[v - g.nrows]);
        out.push_back(std::move(lbl));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Pivot closure walks (shared by cross ratios and the lift machinery).

// Canonical key: labels plus entries of the default-forest normalization.
// Matrices that differ by row/column scaling get the same key.
inline std::string pm_scaling_key(const PMatrix& m) {
    PMatrix n = pm_normalize(m);
    std::string k;
    for (const auto& l : n.row_labels) k += l + "|";
    k += "/";
    for (const auto& l : n.col_labels) k += l + "|";
    for (int i = 0; i < n.nrows(); ++i)
        for (int j = 0; j < n.ncols(); ++j) k += ";" + r_raw_string(n.a[i][j].value);
    return k;
}

// Canonical key up to row/column scaling AND row/column order: sort the
// labels, permute the entries to match, then take the scaling key. Pivot
// sequences that land on the same basis differ only by such permutations
// and scalings, so closure walks keyed this way visit each basis once
// instead of once per reachable label arrangement.
inline std::string pm_unordered_key(const PMatrix& m) {
    std::vector<int> ri(m.nrows()), ci(m.ncols());
    std::iota(ri.begin(), ri.end(), 0);
    std::iota(ci.begin(), ci.end(), 0);
    std::sort(ri.begin(), ri.end(),
              [&](int x, int y) { return m.row_labels[x] < m.row_labels[y]; });
    std::sort(ci.begin(), ci.end(),
              [&](int x, int y) { return m.col_labels[x] < m.col_labels[y]; });
    PMatrix s = m;
    for (int i = 0; i < m.nrows(); ++i) {
        s.row_labels[i] = m.row_labels[ri[i]];
        for (int j = 0; j < m.ncols(); ++j) s.a[i][j] = m.a[ri[i]][ci[j]];
    }
    for (int j = 0; j < m.ncols(); ++j) s.col_labels[j] = m.col_labels[ci[j]];
    s.state = std::make_shared<PMatrixState>();
    return pm_scaling_key(s);
}

struct ClosurePlan {
    int depth;       // -1 = unbounded (full closure)
    bool full() const { return depth < 0; }
};

// Default policy: full closure for small matrices, depth 3 otherwise.
inline ClosurePlan pm_closure_plan(const PMatrix& m, std::optional<int> requested = std::nullopt) {
    if (requested) return {*requested};
    if (m.nrows() + m.ncols() <= 12) return {-1};
    return {3};
}

// Breadth-first pivot closure up to the plan's depth; visit() is called on
// each distinct matrix (up to scaling). Returns true when the closure was
// exhausted within the depth bound.
template <class Visit>
inline bool pm_walk_closure(const PMatrix& start, const ClosurePlan& plan, Visit visit) {
    std::set<std::string> seen;
    std::vector<PMatrix> frontier{start};
    seen.insert(pm_unordered_key(start));
    visit(start);
    int depth = 0;
    while (!frontier.empty()) {
        if (!plan.full() && depth >= plan.depth) return false;
        ++depth;
        std::vector<PMatrix> next;
        for (const auto& m : frontier)
            for (int i = 0; i < m.nrows(); ++i)
                for (int j = 0; j < m.ncols(); ++j) {
                    if (pf_is_zero(m.a[i][j])) continue;
                    PMatrix p = pm_pivot(m, i, j);
                    auto key = pm_unordered_key(p);
                    if (!seen.insert(key).second) continue;
                    visit(p);
                    next.push_back(std::move(p));
                }
        frontier = std::move(next);
    }
    return true;
}

struct CrossRatioSet {
    std::vector<PfElement> values;  // sorted in display order, deduplicated
    bool complete;                  // closure exhausted?
    int depth;                      // requested depth (-1 = full)
};

// Cross ratios: values q*r/(p*s) of 2x2 submatrices [[p,q],[r,s]] with
// p,q,s units (r may be zero), collected over the pivot closure, in every
// orientation; plus the signatures of chordless cycles both ways.
inline CrossRatioSet pm_cross_ratios(const PMatrix& m, std::optional<int> depth = std::nullopt) {
    pm_require_valid(m, "cross ratios");
    auto plan = pm_closure_plan(m, depth);
    std::map<RingElement, PfElement, RvLess> vals;
    auto add = [&](const PfElement& e) { vals.emplace(e.value, e); };
    auto scan = [&](const PMatrix& node) {
        int nr = node.nrows(), nc = node.ncols();
        for (int i1 = 0; i1 < nr; ++i1)
            for (int i2 = i1 + 1; i2 < nr; ++i2)
                for (int j1 = 0; j1 < nc; ++j1)
                    for (int j2 = j1 + 1; j2 < nc; ++j2) {
                        const PfElement* e[2][2] = {{&node.a[i1][j1], &node.a[i1][j2]},
                                                    {&node.a[i2][j1], &node.a[i2][j2]}};
                        // orientations: (p,q,r,s) with p=a, q=b, r=c, s=d under
                        // row/col swaps
                        int ors[4][4][2] = {
                            {{0, 0}, {0, 1}, {1, 0}, {1, 1}},
                            {{0, 1}, {0, 0}, {1, 1}, {1, 0}},
                            {{1, 0}, {1, 1}, {0, 0}, {0, 1}},
                            {{1, 1}, {1, 0}, {0, 1}, {0, 0}},
                        };
                        for (auto& o : ors) {
                            const PfElement &p = *e[o[0][0]][o[0][1]], &q = *e[o[1][0]][o[1][1]],
                                            &r = *e[o[2][0]][o[2][1]], &s = *e[o[3][0]][o[3][1]];
                            if (pf_is_zero(p) || pf_is_zero(q) || pf_is_zero(s)) continue;
                            add(pf_div(pf_mul(q, r), pf_mul(p, s)));
                        }
                    }
        for (auto& c : pm_induced_cycles(node)) {
            PfElement s = pm_cycle_signature(node, c);
            add(s);
            add(pf_inv(s));
        }
    };
    bool complete = pm_walk_closure(m, plan, scan);
    CrossRatioSet out;
    for (auto& [rv, e] : vals) out.values.push_back(e);
    std::sort(out.values.begin(), out.values.end(),
              [&](const PfElement& a, const PfElement& b) { return pf_display_less(a, b); });
    out.complete = complete;
    out.depth = plan.depth;
    return out;
}

// ---------------------------------------------------------------------------
// Direct product of matrices with identical shape and labels, over the
// product of their fields.

inline PMatrix pm_tensor(const std::vector<PMatrix>& parts, const PartialFieldPtr& product_field) {
    if (parts.empty()) throw DimensionMismatch("empty matrix product");
    if (product_field->product_factors.size() != parts.size())
        throw DescriptorMismatch("part count does not match product field arity");
    const PMatrix& m0 = parts[0];
    for (const auto& p : parts) {
        if (p.row_labels != m0.row_labels || p.col_labels != m0.col_labels)
            throw ShapeMismatch("matrix parts must share labels and shape");
    }
    for (size_t t = 0; t < parts.size(); ++t)
        if (!parts[t].field->ring->equal(*product_field->product_factors[t]->ring))
            throw DescriptorMismatch("part " + std::to_string(t + 1) +
                                     " is over the wrong ring for the product field");
    std::vector<std::vector<PfElement>> es;
    for (int i = 0; i < m0.nrows(); ++i) {
        std::vector<PfElement> row;
        for (int j = 0; j < m0.ncols(); ++j) {
            std::vector<RingElement> comps;
            for (const auto& p : parts) comps.push_back(p.a[i][j].value);
            row.push_back(pf_from_ring(product_field, re_product(product_field->ring, comps)));
        }
        es.push_back(std::move(row));
    }
    return pm_make(product_field, m0.row_labels, m0.col_labels, std::move(es));
}

}  // namespace pfkit
