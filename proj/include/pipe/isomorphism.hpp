#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "pipe/graph.hpp"
#include "pipe/spectral.hpp"
#include "pipe/wl.hpp"

namespace ppe {

namespace detail {

// Cheap per-vertex invariants: (degree, triangle count, closed 4-walks,
// sorted neighbor degrees). Refined jointly so classes are comparable.
inline std::vector<std::vector<long long>> iso_vertex_invariants(const Graph& g) {
    const int n = g.n;
    std::vector<std::vector<long long>> inv(n);
    std::vector<std::vector<int>> a2(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int u : g.adj[i])
            for (int w : g.adj[u]) ++a2[i][w];
    for (int v = 0; v < n; ++v) {
        long long tri = 0, walk4 = 0;
        for (int u : g.adj[v]) tri += a2[v][u];
        for (int w = 0; w < n; ++w) walk4 += static_cast<long long>(a2[v][w]) * a2[v][w];
        std::vector<long long> nbrdeg;
        for (int u : g.adj[v]) nbrdeg.push_back(g.degree(u));
        std::sort(nbrdeg.begin(), nbrdeg.end());
        inv[v] = {g.degree(v), tri, walk4};
        inv[v].insert(inv[v].end(), nbrdeg.begin(), nbrdeg.end());
    }
    return inv;
}

inline bool iso_backtrack(const Graph& g1, const Graph& g2, const NodeColors& c1,
                          const NodeColors& c2, std::vector<int>& map12,
                          std::vector<bool>& used, const std::vector<int>& order, size_t pos) {
    if (pos == order.size()) return true;
    int v = order[pos];
    for (int w = 0; w < g2.n; ++w) {
        if (used[w] || c1[v] != c2[w]) continue;
        bool ok = true;
        for (int u : g1.adj[v]) {
            if (map12[u] >= 0 && !g2.has_edge(w, map12[u])) {
                ok = false;
                break;
            }
        }
        if (ok) {
            // also reject extra edges in g2 between mapped images
            for (int x = 0; ok && x < g1.n; ++x)
                if (map12[x] >= 0 && !g1.has_edge(v, x) && g2.has_edge(w, map12[x])) ok = false;
        }
        if (!ok) continue;
        map12[v] = w;
        used[w] = true;
        if (iso_backtrack(g1, g2, c1, c2, map12, used, order, pos + 1)) return true;
        map12[v] = -1;
        used[w] = false;
    }
    return false;
}

}  // namespace detail

/// Exact isomorphism test by backtracking over invariant-refined candidate
/// maps. Intended for small graphs; orders above n_max are rejected with an
/// exception rather than risking an unverified answer.
inline bool are_isomorphic(const Graph& g1, const Graph& g2, int n_max = 12) {
    if (g1.n != g2.n || g1.edge_count() != g2.edge_count()) return false;
    if (g1.n > n_max)
        throw std::invalid_argument("are_isomorphic: order " + std::to_string(g1.n) +
                                    " exceeds limit " + std::to_string(n_max));
    if (g1.n == 0) return true;

    // invariant pruning: degree sequence, then eigenvalue multiset
    {
        std::vector<int> d1, d2;
        for (int v = 0; v < g1.n; ++v) d1.push_back(g1.degree(v));
        for (int v = 0; v < g2.n; ++v) d2.push_back(g2.degree(v));
        std::sort(d1.begin(), d1.end());
        std::sort(d2.begin(), d2.end());
        if (d1 != d2) return false;
        auto e1 = eigh(normalized_laplacian(g1)).values;
        auto e2 = eigh(normalized_laplacian(g2)).values;
        for (int i = 0; i < g1.n; ++i)
            if (std::fabs(e1[i] - e2[i]) > 1e-6) return false;
    }

    // joint refinement of cheap structural invariants, then 1-WL on top
    auto inv1 = detail::iso_vertex_invariants(g1);
    auto inv2 = detail::iso_vertex_invariants(g2);
    auto key = [](const std::vector<long long>& v) {
        std::string s;
        for (long long x : v) s += std::to_string(x) + ",";
        return s;
    };
    std::vector<std::vector<std::string>> keys(2);
    for (int v = 0; v < g1.n; ++v) keys[0].push_back(key(inv1[v]));
    for (int v = 0; v < g2.n; ++v) keys[1].push_back(key(inv2[v]));
    auto init = detail::canonical_ids(keys);
    auto cols = wl1_joint({&g1, &g2}, {init[0], init[1]});
    if (histogram(cols[0]) != histogram(cols[1])) return false;

    // search rarest color classes first, preferring vertices attached to the
    // already-mapped part
    std::vector<int> order;
    {
        std::vector<bool> placed(g1.n, false);
        ColorHistogram h = histogram(cols[0]);
        for (int step = 0; step < g1.n; ++step) {
            int best = -1;
            long long best_key = -1;
            for (int v = 0; v < g1.n; ++v) {
                if (placed[v]) continue;
                int attached = 0;
                for (int u : g1.adj[v]) attached += placed[u] ? 1 : 0;
                long long k = static_cast<long long>(attached) * 1000000 -
                              h.counts[cols[0][v]] * 100 + g1.degree(v);
                if (best < 0 || k > best_key) {
                    best = v;
                    best_key = k;
                }
            }
            order.push_back(best);
            placed[best] = true;
        }
    }
    std::vector<int> map12(g1.n, -1);
    std::vector<bool> used(g2.n, false);
    return detail::iso_backtrack(g1, g2, cols[0], cols[1], map12, used, order, 0);
}

}  // namespace ppe
