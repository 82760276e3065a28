#pragma once
// Bipartite support graphs of labelled matrices. Vertices are numbered with
// rows first (0..nrows-1) then columns (nrows..nrows+ncols-1). All traversals
// are deterministic: vertices are visited in ascending number, neighbours in
// ascending number.

#include "errors.hpp"

#include <algorithm>
#include <optional>
#include <queue>
#include <vector>

namespace pfkit {

struct BipGraph {
    int nrows = 0, ncols = 0;
    std::vector<std::vector<int>> adj;        // sorted neighbour lists
    std::vector<std::pair<int, int>> edges;   // (row vertex, col vertex), lexicographic

    int size() const { return nrows + ncols; }
    bool is_row(int v) const { return v < nrows; }
    bool has_edge(int u, int v) const {
        const auto& l = adj[u];
        return std::binary_search(l.begin(), l.end(), v);
    }
};

inline BipGraph make_bip_graph(const std::vector<std::vector<bool>>& support) {
    BipGraph g;
    g.nrows = (int)support.size();
    g.ncols = g.nrows ? (int)support[0].size() : 0;
    g.adj.assign(g.size(), {});
    for (int i = 0; i < g.nrows; ++i)
        for (int j = 0; j < g.ncols; ++j)
            if (support[i][j]) {
                g.adj[i].push_back(g.nrows + j);
                g.adj[g.nrows + j].push_back(i);
                g.edges.emplace_back(i, g.nrows + j);
            }
    return g;
}

struct Forest {
    std::vector<int> parent;                 // -1 at roots
    std::vector<int> order;                  // BFS visit order over all components
    std::vector<int> comp;                   // component index per vertex
    std::vector<std::pair<int, int>> tree_edges;  // (parent, child)
    int n_components = 0;
};

// Deterministic spanning forest: roots are the least-numbered vertices of
// their components; breadth-first, neighbours ascending.
inline Forest bfs_forest(const BipGraph& g) {
    Forest f;
    int n = g.size();
    f.parent.assign(n, -1);
    f.comp.assign(n, -1);
    for (int s = 0; s < n; ++s) {
        if (f.comp[s] >= 0) continue;
        int c = f.n_components++;
        std::queue<int> q;
        q.push(s);
        f.comp[s] = c;
        f.order.push_back(s);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int w : g.adj[u]) {
                if (f.comp[w] >= 0) continue;
                f.comp[w] = c;
                f.parent[w] = u;
                f.tree_edges.emplace_back(u, w);
                f.order.push_back(w);
                q.push(w);
            }
        }
    }
    return f;
}

// Shortest path from s to t using only edges allowed by the predicate.
// Returns the vertex sequence s..t, or nullopt if disconnected.
template <class EdgeOk>
inline std::optional<std::vector<int>> shortest_path(const BipGraph& g, int s, int t,
                                                     EdgeOk edge_ok) {
    if (s == t) return std::vector<int>{s};
    std::vector<int> prev(g.size(), -2);
    prev[s] = -1;
    std::queue<int> q;
    q.push(s);
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int w : g.adj[u]) {
            if (prev[w] != -2 || !edge_ok(u, w)) continue;
            prev[w] = u;
            if (w == t) {
                std::vector<int> path{t};
                for (int v = u; v != -1; v = prev[v]) path.push_back(v);
                std::reverse(path.begin(), path.end());
                return path;
            }
            q.push(w);
        }
    }
    return std::nullopt;
}

inline bool graph_connected(const BipGraph& g) {
    if (g.size() == 0) return true;
    return bfs_forest(g).n_components == 1;
}

// 2-connectivity (no cut vertex) for small graphs, by vertex-removal probes.
inline bool graph_two_connected(const BipGraph& g) {
    int n = g.size();
    if (n <= 2) return graph_connected(g);
    if (!graph_connected(g)) return false;
    for (int x = 0; x < n; ++x) {
        // connectivity of g - x
        std::vector<int> comp(n, -1);
        int start = x == 0 ? 1 : 0;
        std::queue<int> q;
        q.push(start);
        comp[start] = 0;
        int seen = 1;
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int w : g.adj[u]) {
                if (w == x || comp[w] >= 0) continue;
                comp[w] = 0;
                ++seen;
                q.push(w);
            }
        }
        if (seen != n - 1) return false;
    }
    return true;
}

// All chordless cycles, each reported once as a closed vertex sequence
// starting at its least vertex, second vertex smaller than last. Bipartite
// graphs only have even cycles of length >= 4. Throws TooLarge beyond cap.
inline std::vector<std::vector<int>> chordless_cycles(const BipGraph& g, size_t cap = 100000) {
    std::vector<std::vector<int>> out;
    int n = g.size();
    std::vector<char> in_path(n, 0);
    std::vector<int> path;

    // extend the current induced path; path[0] = s is the least vertex
    auto dfs = [&](auto&& self) -> void {
        int s = path[0];
        int u = path.back();
        for (int w : g.adj[u]) {
            if (w <= s || in_path[w]) continue;
            bool adj_s = g.has_edge(w, s);
            // chordless: w may touch the path only at u (and s when closing)
            bool chord = false;
            for (size_t k = 1; k + 1 < path.size() && !chord; ++k)
                if (g.has_edge(w, path[k])) chord = true;
            if (chord) continue;
            if (adj_s) {
                if (path.size() >= 3 && path[1] < w) {
                    out.push_back(path);
                    out.back().push_back(w);
                    if (out.size() > cap) throw TooLarge("chordless cycle cap exceeded");
                }
                continue;  // cannot extend past a neighbour of s without a chord
            }
            in_path[w] = 1;
            path.push_back(w);
            self(self);
            path.pop_back();
            in_path[w] = 0;
        }
    };

    for (int s = 0; s < n; ++s) {
        for (int a : g.adj[s]) {
            if (a <= s) continue;
            path = {s, a};
            in_path[s] = in_path[a] = 1;
            dfs(dfs);
            in_path[s] = in_path[a] = 0;
        }
    }
    return out;
}

}  // namespace pfkit
