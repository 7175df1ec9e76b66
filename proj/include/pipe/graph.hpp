#pragma once

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ppe {

/// Immutable simple undirected graph on vertices 0..n-1. Edges are stored as
/// sorted (u, v) pairs with u < v; adjacency lists are sorted. Construct via
/// build_graph() so the invariants hold.
struct Graph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;
    std::vector<std::vector<int>> adj;

    int degree(int v) const { return static_cast<int>(adj[v].size()); }
    int edge_count() const { return static_cast<int>(edges.size()); }

    bool has_edge(int u, int v) const {
        if (u == v) return false;
        const auto& a = adj[u];
        return std::binary_search(a.begin(), a.end(), v);
    }

    bool operator==(const Graph& o) const { return n == o.n && edges == o.edges; }
};

inline Graph build_graph(int n, const std::vector<std::pair<int, int>>& edge_list) {
    if (n < 0) throw std::invalid_argument("build_graph: negative vertex count");
    Graph g;
    g.n = n;
    g.adj.resize(n);
    std::set<std::pair<int, int>> seen;
    for (auto [u, v] : edge_list) {
        if (u == v)
            throw std::invalid_argument("build_graph: self-loop at vertex " + std::to_string(u));
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw std::invalid_argument("build_graph: vertex out of range in edge (" +
                                        std::to_string(u) + "," + std::to_string(v) + ")");
        auto e = std::minmax(u, v);
        if (!seen.insert(e).second)
            throw std::invalid_argument("build_graph: duplicate edge (" + std::to_string(e.first) +
                                        "," + std::to_string(e.second) + ")");
    }
    g.edges.assign(seen.begin(), seen.end());
    for (auto [u, v] : g.edges) {
        g.adj[u].push_back(v);
        g.adj[v].push_back(u);
    }
    for (auto& a : g.adj) std::sort(a.begin(), a.end());
    return g;
}

enum class Family { cycle, path, complete, hypercube };

/// Standard graph families with deterministic labeling: cycle i-(i+1 mod n),
/// path i-(i+1), complete all pairs, hypercube on bit strings (vertices are
/// adjacent iff their labels differ in exactly one bit).
inline Graph family(Family f, int param) {
    std::vector<std::pair<int, int>> e;
    switch (f) {
        case Family::cycle:
            if (param < 3) throw std::invalid_argument("family: cycle needs param >= 3");
            for (int i = 0; i < param; ++i) e.emplace_back(i, (i + 1) % param);
            return build_graph(param, e);
        case Family::path:
            if (param < 1) throw std::invalid_argument("family: path needs param >= 1");
            for (int i = 0; i + 1 < param; ++i) e.emplace_back(i, i + 1);
            return build_graph(param, e);
        case Family::complete:
            if (param < 1) throw std::invalid_argument("family: complete needs param >= 1");
            for (int i = 0; i < param; ++i)
                for (int j = i + 1; j < param; ++j) e.emplace_back(i, j);
            return build_graph(param, e);
        case Family::hypercube: {
            if (param < 1) throw std::invalid_argument("family: hypercube needs param >= 1");
            int n = 1 << param;
            for (int v = 0; v < n; ++v)
                for (int b = 0; b < param; ++b)
                    if (v < (v ^ (1 << b))) e.emplace_back(v, v ^ (1 << b));
            return build_graph(n, e);
        }
    }
    throw std::invalid_argument("family: unknown family");
}

inline Graph cycle(int n) { return family(Family::cycle, n); }
inline Graph path(int n) { return family(Family::path, n); }
inline Graph complete(int n) { return family(Family::complete, n); }
inline Graph hypercube(int d) { return family(Family::hypercube, d); }

/// Disjoint union; vertex offsets are assigned in list order.
inline Graph disjoint_union(const std::vector<Graph>& gs) {
    if (gs.empty()) throw std::invalid_argument("disjoint_union: empty list");
    int n = 0;
    std::vector<std::pair<int, int>> e;
    for (const auto& g : gs) {
        for (auto [u, v] : g.edges) e.emplace_back(u + n, v + n);
        n += g.n;
    }
    return build_graph(n, e);
}

inline Graph disjoint_copies(const Graph& g, int count) {
    return disjoint_union(std::vector<Graph>(count, g));
}

namespace detail {

struct UnionFind {
    std::vector<int> parent;

    explicit UnionFind(int n) : parent(n) {
        for (int i = 0; i < n; ++i) parent[i] = i;
    }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    // returns false if already joined
    bool unite(int a, int b) {
        a = find(a); b = find(b);
        if (a == b) return false;
        if (a > b) std::swap(a, b);
        parent[b] = a;  // smaller root survives
        return true;
    }
};

}  // namespace detail

struct BettiPair {
    int beta0 = 0;
    int beta1 = 0;
    bool operator==(const BettiPair&) const = default;
};

/// beta0 via union-find over edges; beta1 = |E| - |V| + beta0.
inline BettiPair betti(const Graph& g) {
    detail::UnionFind uf(g.n);
    int merges = 0;
    for (auto [u, v] : g.edges) merges += uf.unite(u, v) ? 1 : 0;
    BettiPair b;
    b.beta0 = g.n - merges;
    b.beta1 = g.edge_count() - g.n + b.beta0;
    return b;
}

/// Connected component id per vertex (ids are 0.. in order of smallest member).
inline std::vector<int> component_ids(const Graph& g) {
    detail::UnionFind uf(g.n);
    for (auto [u, v] : g.edges) uf.unite(u, v);
    std::vector<int> id(g.n, -1);
    int next = 0;
    for (int v = 0; v < g.n; ++v) {
        int r = uf.find(v);
        if (id[r] < 0) id[r] = next++;
        id[v] = id[r];
    }
    return id;
}

/// Relabel: vertex v becomes perm[v].
inline Graph permute(const Graph& g, const std::vector<int>& perm) {
    if (static_cast<int>(perm.size()) != g.n)
        throw std::invalid_argument("permute: permutation size mismatch");
    std::vector<bool> hit(g.n, false);
    for (int p : perm) {
        if (p < 0 || p >= g.n || hit[p]) throw std::invalid_argument("permute: not a bijection");
        hit[p] = true;
    }
    std::vector<std::pair<int, int>> e;
    e.reserve(g.edges.size());
    for (auto [u, v] : g.edges) e.emplace_back(perm[u], perm[v]);
    return build_graph(g.n, e);
}

inline std::vector<int> identity_permutation(int n) {
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    return p;
}

}  // namespace ppe
