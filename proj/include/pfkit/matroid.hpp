#pragma once
// Matroids on small ground sets, given by their bases. Sources: explicit
// basis lists (validated against the exchange axiom) or a valid matrix over
// a partial field (rows = reference basis; a set B is a basis iff the
// square submatrix pairing the rows outside B with the columns inside B has
// nonzero determinant).

#include "pmatrix.hpp"

#include <cstdint>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace pfkit {

struct Matroid {
    std::vector<std::string> ground;   // ordered element labels
    int rank = 0;
    std::set<std::uint32_t> bases;     // bitmasks over ground indices
    // provenance, when built from a matrix
    std::shared_ptr<const PMatrix> matrix;

    int size() const { return (int)ground.size(); }
    int index_of(const std::string& lbl) const {
        for (int i = 0; i < size(); ++i)
            if (ground[i] == lbl) return i;
        return -1;
    }
};

namespace detail {

// f[T] = does some basis fit inside T? (subset-sum DP)
inline std::vector<char> basis_inside_table(int n, const std::set<std::uint32_t>& bases) {
    std::vector<char> f(1u << n, 0);
    for (auto b : bases) f[b] = 1;
    for (int i = 0; i < n; ++i)
        for (std::uint32_t t = 0; t < (1u << n); ++t)
            if (t >> i & 1)
                if (f[t & ~(1u << i)]) f[t] = 1;
    return f;
}

}  // namespace detail

// Basis-exchange axiom: for all bases B1, B2 and x in B1 \ B2 there is
// y in B2 \ B1 with B1 - x + y a basis. Throws NotABasis with a witness
// when violated.
inline void matroid_check_exchange(const std::vector<std::string>& ground, int rank,
                                   const std::set<std::uint32_t>& bases) {
    int n = (int)ground.size();
    if (n > 16) throw TooLarge("matroid ground set limited to 16 elements");
    if (bases.empty()) throw NotABasis("a matroid needs at least one basis");
    for (auto b : bases)
        if (__builtin_popcount(b) != rank)
            throw NotABasis("basis size differs from the declared rank");
    auto fits = detail::basis_inside_table(n, bases);
    std::uint32_t full = n == 32 ? ~0u : (1u << n) - 1;
    for (auto b1 : bases)
        for (int x = 0; x < n; ++x) {
            if (!(b1 >> x & 1)) continue;
            // extensions of B1 - x: all y (not in B1) with B1 - x + y a basis
            std::uint32_t ext = 0;
            for (int y = 0; y < n; ++y) {
                if (b1 >> y & 1) continue;
                if (bases.count((b1 & ~(1u << x)) | (1u << y))) ext |= 1u << y;
            }
            // violated iff some basis avoids {x} and ext entirely
            std::uint32_t forbidden = ext | (1u << x);
            if (fits[full & ~forbidden]) {
                // find the witness B2
                for (auto b2 : bases)
                    if (!(b2 & forbidden)) {
                        std::string msg = "exchange axiom fails for bases {";
                        for (int i = 0; i < n; ++i)
                            if (b1 >> i & 1) msg += ground[i] + " ";
                        msg += "} and {";
                        for (int i = 0; i < n; ++i)
                            if (b2 >> i & 1) msg += ground[i] + " ";
                        msg += "} at element " + ground[x];
                        throw NotABasis(msg);
                    }
            }
        }
}

inline Matroid matroid_make(std::vector<std::string> ground, std::set<std::uint32_t> bases) {
    std::set<std::string> seen;
    for (auto& l : ground)
        if (!seen.insert(l).second) throw OverlappingSets("duplicate ground element '" + l + "'");
    Matroid m;
    m.ground = std::move(ground);
    m.rank = bases.empty() ? 0 : __builtin_popcount(*bases.begin());
    m.bases = std::move(bases);
    matroid_check_exchange(m.ground, m.rank, m.bases);
    return m;
}

// Matroid of a valid matrix: ground = row labels then column labels; the
// rows form the reference basis. Uses the matrix's memoized ring
// determinants.
inline Matroid matroid_from(const PMatrix& a) {
    pm_require_valid(a, "matroid construction");
    int nr = a.nrows(), nc = a.ncols(), n = nr + nc;
    if (n > 16) throw TooLarge("matroid ground set limited to 16 elements");
    Matroid m;
    for (auto& l : a.row_labels) m.ground.push_back(l);
    for (auto& l : a.col_labels) m.ground.push_back(l);
    m.rank = nr;
    for (std::uint32_t s = 0; s < (1u << n); ++s) {
        if (__builtin_popcount(s) != nr) continue;
        std::uint32_t rmask = 0, cmask = 0;  // rows outside s, cols inside s
        for (int i = 0; i < nr; ++i)
            if (!(s >> i & 1)) rmask |= 1u << i;
        for (int j = 0; j < nc; ++j)
            if (s >> (nr + j) & 1) cmask |= 1u << j;
        if (__builtin_popcount(rmask) != __builtin_popcount(cmask)) continue;
        RingElement d = detail::ring_subdet_masked(a, rmask, cmask);
        if (!r_is_zero(d)) m.bases.insert(s);
    }
    m.matrix = std::make_shared<PMatrix>(a);
    // representable matroids satisfy the exchange axiom; the check is cheap
    // at this size and guards the determinant plumbing
    matroid_check_exchange(m.ground, m.rank, m.bases);
    return m;
}

inline bool matroid_is_basis(const Matroid& m, const std::vector<std::string>& labels) {
    std::uint32_t s = 0;
    for (auto& l : labels) {
        int i = m.index_of(l);
        if (i < 0) throw DimensionMismatch("unknown ground element '" + l + "'");
        s |= 1u << i;
    }
    return m.bases.count(s) != 0;
}

// rank of a subset = max intersection with a basis
inline int matroid_rank_of(const Matroid& m, std::uint32_t s) {
    int best = 0;
    for (auto b : m.bases) best = std::max(best, __builtin_popcount(b & s));
    return best;
}

// Minor M / contract \ delete, by the rank function. The two label sets
// must be disjoint subsets of the ground set.
inline Matroid matroid_minor(const Matroid& m, const std::vector<std::string>& del,
                             const std::vector<std::string>& con) {
    std::uint32_t dmask = 0, cmask = 0;
    for (auto& l : del) {
        int i = m.index_of(l);
        if (i < 0) throw DimensionMismatch("unknown ground element '" + l + "'");
        dmask |= 1u << i;
    }
    for (auto& l : con) {
        int i = m.index_of(l);
        if (i < 0) throw DimensionMismatch("unknown ground element '" + l + "'");
        if (dmask >> i & 1) throw OverlappingSets("element '" + l + "' both deleted and contracted");
        cmask |= 1u << i;
    }
    int n = m.size();
    std::vector<int> keep;
    for (int i = 0; i < n; ++i)
        if (!((dmask | cmask) >> i & 1)) keep.push_back(i);
    int rc = matroid_rank_of(m, cmask);
    auto minor_rank = [&](std::uint32_t s) { return matroid_rank_of(m, s | cmask) - rc; };
    std::uint32_t keep_mask = 0;
    for (int i : keep) keep_mask |= 1u << i;
    int rk = minor_rank(keep_mask);
    Matroid r;
    for (int i : keep) r.ground.push_back(m.ground[i]);
    r.rank = rk;
    int kn = (int)keep.size();
    for (std::uint32_t t = 0; t < (1u << kn); ++t) {
        if (__builtin_popcount(t) != rk) continue;
        std::uint32_t s = 0;
        for (int j = 0; j < kn; ++j)
            if (t >> j & 1) s |= 1u << keep[j];
        if (minor_rank(s) == rk) r.bases.insert(t);
    }
    return r;
}

// Matrix display of a minor, using provenance: contracted columns are
// pivoted into the rows first; loops (zero columns) contract by deletion,
// and deleting a zero row (a coloop) removes it directly.
inline PMatrix pm_minor(const PMatrix& a, const std::vector<std::string>& del,
                        const std::vector<std::string>& con) {
    for (auto& l : del)
        for (auto& l2 : con)
            if (l == l2) throw OverlappingSets("element '" + l + "' both deleted and contracted");
    PMatrix cur = a;
    auto row_is_zero = [](const PMatrix& m, int i) {
        for (int j = 0; j < m.ncols(); ++j)
            if (!pf_is_zero(m.a[i][j])) return false;
        return true;
    };
    auto col_is_zero = [](const PMatrix& m, int j) {
        for (int i = 0; i < m.nrows(); ++i)
            if (!pf_is_zero(m.a[i][j])) return false;
        return true;
    };
    auto drop = [&](const std::string& lbl, bool contract) {
        int i = cur.row_index(lbl), j = cur.col_index(lbl);
        if (i >= 0) {
            // basis element: contraction removes the row; deletion must
            // first pivot it out (impossible only for a coloop)
            if (!contract && !row_is_zero(cur, i)) {
                int jj = 0;
                while (pf_is_zero(cur.a[i][jj])) ++jj;
                cur = pm_pivot(cur, i, jj);
                cur = pm_delete_col(cur, jj);
            } else {
                cur = pm_delete_row(cur, i);
            }
        } else if (j >= 0) {
            // cobasis element: deletion removes the column; contraction
            // pivots it in first (a loop contracts by deletion)
            if (contract && !col_is_zero(cur, j)) {
                int ii = 0;
                while (pf_is_zero(cur.a[ii][j])) ++ii;
                cur = pm_pivot(cur, ii, j);
                cur = pm_delete_row(cur, ii);
            } else {
                cur = pm_delete_col(cur, j);
            }
        } else {
            throw DimensionMismatch("unknown element '" + lbl + "'");
        }
    };
    for (auto& l : con) drop(l, true);
    for (auto& l : del) drop(l, false);
    return cur;
}

// Fundamental graph of M with respect to a basis B: bipartite on B and
// E \ B, edge (x, y) iff B - x + y is a basis.
struct FundGraph {
    std::vector<std::string> basis_side, cobasis_side;
    BipGraph graph;
    bool connected = false, two_connected = false;
};

inline FundGraph matroid_fundamental_graph(const Matroid& m,
                                           const std::vector<std::string>& basis) {
    std::uint32_t b = 0;
    for (auto& l : basis) {
        int i = m.index_of(l);
        if (i < 0) throw DimensionMismatch("unknown ground element '" + l + "'");
        b |= 1u << i;
    }
    if (!m.bases.count(b)) throw NotABasis("the given set is not a basis");
    FundGraph fg;
    std::vector<int> bs, cs;
    for (int i = 0; i < m.size(); ++i)
        if (b >> i & 1) {
            bs.push_back(i);
            fg.basis_side.push_back(m.ground[i]);
        } else {
            cs.push_back(i);
            fg.cobasis_side.push_back(m.ground[i]);
        }
    std::vector<std::vector<bool>> sup(bs.size(), std::vector<bool>(cs.size(), false));
    for (size_t xi = 0; xi < bs.size(); ++xi)
        for (size_t yj = 0; yj < cs.size(); ++yj)
            sup[xi][yj] = m.bases.count((b & ~(1u << bs[xi])) | (1u << cs[yj])) != 0;
    fg.graph = make_bip_graph(sup);
    fg.connected = graph_connected(fg.graph);
    fg.two_connected = graph_two_connected(fg.graph);
    return fg;
}

// Same ground labels (as sets) and the same bases.
inline bool matroid_equal(const Matroid& a, const Matroid& b) {
    if (a.size() != b.size() || a.rank != b.rank) return false;
    std::vector<int> map(a.size(), -1);
    for (int i = 0; i < a.size(); ++i) {
        map[i] = b.index_of(a.ground[i]);
        if (map[i] < 0) return false;
    }
    std::set<std::uint32_t> remapped;
    for (auto s : a.bases) {
        std::uint32_t t = 0;
        for (int i = 0; i < a.size(); ++i)
            if (s >> i & 1) t |= 1u << map[i];
        remapped.insert(t);
    }
    return remapped == b.bases;
}

// Isomorphism search for ground sets up to 10 elements, with degree-sequence
// pruning (degree of e = number of bases containing e). Returns the label
// bijection when one exists.
inline std::optional<std::vector<std::pair<std::string, std::string>>> matroid_isomorphism(
    const Matroid& a, const Matroid& b) {
    if (a.size() > 10 || b.size() > 10)
        throw TooLarge("isomorphism search limited to 10 elements");
    if (a.size() != b.size() || a.rank != b.rank || a.bases.size() != b.bases.size())
        return std::nullopt;
    int n = a.size();
    auto degrees = [&](const Matroid& m) {
        std::vector<int> d(m.size(), 0);
        for (auto s : m.bases)
            for (int i = 0; i < m.size(); ++i)
                if (s >> i & 1) ++d[i];
        return d;
    };
    auto da = degrees(a), db = degrees(b);
    {
        auto sa = da, sb = db;
        std::sort(sa.begin(), sa.end());
        std::sort(sb.begin(), sb.end());
        if (sa != sb) return std::nullopt;
    }
    std::vector<int> map(n, -1);
    std::vector<char> used(n, 0);
    auto ok_full = [&]() {
        for (auto s : a.bases) {
            std::uint32_t t = 0;
            for (int i = 0; i < n; ++i)
                if (s >> i & 1) t |= 1u << map[i];
            if (!b.bases.count(t)) return false;
        }
        return true;
    };
    auto rec = [&](auto&& self, int i) -> bool {
        if (i == n) return ok_full();
        for (int j = 0; j < n; ++j) {
            if (used[j] || da[i] != db[j]) continue;
            map[i] = j;
            used[j] = 1;
            if (self(self, i + 1)) return true;
            used[j] = 0;
            map[i] = -1;
        }
        return false;
    };
    if (!rec(rec, 0)) return std::nullopt;
    std::vector<std::pair<std::string, std::string>> out;
    for (int i = 0; i < n; ++i) out.emplace_back(a.ground[i], b.ground[map[i]]);
    return out;
}

// ---------------------------------------------------------------------------
// Text form: header line, then one basis per line.

inline std::string matroid_to_string(const Matroid& m) {
    std::ostringstream os;
    os << "matroid r=" << m.rank << " E=";
    for (int i = 0; i < m.size(); ++i) os << (i ? " " : "") << m.ground[i];
    os << "\n";
    for (auto s : m.bases) {
        bool first = true;
        for (int i = 0; i < m.size(); ++i)
            if (s >> i & 1) {
                os << (first ? "" : " ") << m.ground[i];
                first = false;
            }
        os << "\n";
    }
    return os.str();
}

inline Matroid matroid_from_string(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    std::vector<std::string> ground;
    int rank = -1;
    std::set<std::uint32_t> bases;
    bool header = false;
    Matroid m;
    while (std::getline(is, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string tok;
        std::vector<std::string> toks;
        while (ls >> tok) toks.push_back(tok);
        if (toks.empty()) continue;
        if (!header) {
            if (toks.size() < 3 || toks[0] != "matroid" || toks[1].rfind("r=", 0) != 0 ||
                toks[2].rfind("E=", 0) != 0)
                throw ParseError("matroid header must read: matroid r=<rank> E=<elements>");
            rank = std::stoi(toks[1].substr(2));
            ground.push_back(toks[2].substr(2));
            for (size_t i = 3; i < toks.size(); ++i) ground.push_back(toks[i]);
            if (ground.size() > 16) throw TooLarge("matroid ground set limited to 16 elements");
            m.ground = ground;
            header = true;
            continue;
        }
        std::uint32_t s = 0;
        for (auto& t : toks) {
            int i = m.index_of(t);
            if (i < 0) throw ParseError("basis mentions unknown element '" + t + "'");
            if (s >> i & 1) throw ParseError("basis repeats element '" + t + "'");
            s |= 1u << i;
        }
        if ((int)toks.size() != rank) throw ParseError("basis size differs from declared rank");
        bases.insert(s);
    }
    if (!header) throw ParseError("missing matroid header");
    m.rank = rank;
    m.bases = std::move(bases);
    matroid_check_exchange(m.ground, m.rank, m.bases);
    return m;
}

}  // namespace pfkit
