#pragma once

#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <vector>

#include "pipe/graph.hpp"

namespace ppe {

/// Vertex colors are real vectors; scalars are vectors of length one.
using Color = std::vector<double>;
using ColorAssignment = std::vector<Color>;

inline ColorAssignment scalar_colors(const std::vector<double>& xs) {
    ColorAssignment c;
    c.reserve(xs.size());
    for (double x : xs) c.push_back({x});
    return c;
}

inline ColorAssignment int_colors(const std::vector<int>& xs) {
    ColorAssignment c;
    c.reserve(xs.size());
    for (int x : xs) c.push_back({static_cast<double>(x)});
    return c;
}

inline ColorAssignment degree_colors(const Graph& g) {
    ColorAssignment c;
    c.reserve(g.n);
    for (int v = 0; v < g.n; ++v) c.push_back({static_cast<double>(g.degree(v))});
    return c;
}

/// Filtering function over vertex colors: the identity on scalar colors, an
/// injective lookup table, or sigmoid(w . c + b) for vector colors.
struct FiltrationSpec {
    enum class Kind { identity, tabulated, affine_sigmoid } kind = Kind::identity;
    std::map<Color, double> table;
    std::vector<double> weights;
    double bias = 0.0;

    static FiltrationSpec identity() { return {}; }

    static FiltrationSpec tabulated(std::map<Color, double> t) {
        std::map<double, int> seen;
        for (auto& [c, x] : t)
            if (++seen[x] > 1) throw std::invalid_argument("FiltrationSpec: table not injective");
        FiltrationSpec f;
        f.kind = Kind::tabulated;
        f.table = std::move(t);
        return f;
    }

    static FiltrationSpec affine_sigmoid(std::vector<double> w, double b) {
        FiltrationSpec f;
        f.kind = Kind::affine_sigmoid;
        f.weights = std::move(w);
        f.bias = b;
        return f;
    }
};

inline std::vector<double> filtration_values(const ColorAssignment& colors,
                                             const FiltrationSpec& spec) {
    std::vector<double> out;
    out.reserve(colors.size());
    for (const Color& c : colors) {
        switch (spec.kind) {
            case FiltrationSpec::Kind::identity:
                if (c.size() != 1)
                    throw std::invalid_argument("filtration_values: identity needs scalar colors");
                out.push_back(c[0]);
                break;
            case FiltrationSpec::Kind::tabulated: {
                auto it = spec.table.find(c);
                if (it == spec.table.end())
                    throw std::invalid_argument("filtration_values: color missing from table");
                out.push_back(it->second);
                break;
            }
            case FiltrationSpec::Kind::affine_sigmoid: {
                if (c.size() != spec.weights.size())
                    throw std::invalid_argument("filtration_values: weight/color size mismatch");
                double z = spec.bias;
                for (size_t i = 0; i < c.size(); ++i) z += spec.weights[i] * c[i];
                out.push_back(1.0 / (1.0 + std::exp(-z)));
                break;
            }
        }
    }
    return out;
}

/// One persistence tuple with provenance. Every birth and finite death is
/// some vertex's filtration value; the indices record which vertex so that
/// gradients can be routed back without re-deriving the pairing.
struct PersistencePair {
    double birth = 0.0;
    double death = 0.0;       // ignored when essential
    bool essential = false;   // death at infinity
    int vertex = -1;          // dim 0: the vertex this tuple belongs to
    int edge_u = -1, edge_v = -1;  // merging edge (dim 0) or the edge itself (dim 1)
    int birth_source = -1;    // vertex whose value is the birth
    int death_source = -1;    // vertex whose value is the death (-1 when essential)
};

struct PersistenceDiagram {
    int dim = 0;
    std::vector<PersistencePair> pairs;

    int essential_count() const {
        int c = 0;
        for (const auto& p : pairs) c += p.essential ? 1 : 0;
        return c;
    }
};

namespace detail {

struct EdgeEvent {
    double value;
    int u, v;            // endpoints, u < v
    int max_vertex;      // endpoint attaining the edge value
    long long tie = 0;   // relabeling-invariant order among equal values
};

inline std::vector<EdgeEvent> sorted_edge_events(const Graph& g,
                                                 const std::vector<double>& values,
                                                 const std::vector<int>* tiebreak) {
    std::vector<EdgeEvent> ev;
    ev.reserve(g.edges.size());
    for (auto [u, v] : g.edges) {
        EdgeEvent e;
        e.u = u;
        e.v = v;
        // on exact value ties the higher-index endpoint is the chosen
        // subgradient source
        e.max_vertex = values[u] > values[v] ? u : v;
        e.value = values[e.max_vertex];
        if (tiebreak) {
            long long a = (*tiebreak)[u], b = (*tiebreak)[v];
            e.tie = std::min(a, b) * 1000000 + std::max(a, b);
        }
        ev.push_back(e);
    }
    std::stable_sort(ev.begin(), ev.end(), [](const EdgeEvent& a, const EdgeEvent& b) {
        if (a.value != b.value) return a.value < b.value;
        if (a.tie != b.tie) return a.tie < b.tie;
        return std::pair(a.u, a.v) < std::pair(b.u, b.v);
    });
    return ev;
}

}  // namespace detail

/// 0-dimensional sublevel persistence of vertex values: vertex v enters at
/// values[v], edge (u,v) at the larger endpoint value. Union-find with the
/// elder rule: the component with the earlier birth survives a merge, ties
/// broken in favor of the smaller elder vertex index. Each vertex owns
/// exactly one tuple; components that never die are essential.
///
/// Ties change only which vertex a tuple is assigned to, never the tuple
/// multiset. Callers that need the assignment itself to be relabeling-
/// invariant (the model does) pass per-vertex tiebreak keys computed from
/// structure; keys take precedence over vertex indices at equal births.
inline PersistenceDiagram diagram0(const Graph& g, const std::vector<double>& values,
                                   const std::vector<int>* tiebreak = nullptr) {
    if (static_cast<int>(values.size()) != g.n)
        throw std::invalid_argument("diagram0: value count mismatch");
    std::vector<int> parent(g.n), elder(g.n);
    for (int v = 0; v < g.n; ++v) parent[v] = elder[v] = v;
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    PersistenceDiagram d;
    d.dim = 0;
    d.pairs.resize(g.n);
    for (int v = 0; v < g.n; ++v) {
        d.pairs[v].birth = values[v];
        d.pairs[v].vertex = v;
        d.pairs[v].birth_source = v;
        d.pairs[v].essential = true;  // until merged away
    }
    for (const auto& e : detail::sorted_edge_events(g, values, tiebreak)) {
        int ru = find(e.u), rv = find(e.v);
        if (ru == rv) continue;
        int eu = elder[ru], ev2 = elder[rv];
        bool u_survives;
        if (values[eu] != values[ev2])
            u_survives = values[eu] < values[ev2];
        else if (tiebreak && (*tiebreak)[eu] != (*tiebreak)[ev2])
            u_survives = (*tiebreak)[eu] < (*tiebreak)[ev2];
        else
            u_survives = eu < ev2;
        int rs = u_survives ? ru : rv;
        int rd = u_survives ? rv : ru;
        int dying = elder[rd];
        d.pairs[dying].essential = false;
        d.pairs[dying].death = e.value;
        d.pairs[dying].edge_u = e.u;
        d.pairs[dying].edge_v = e.v;
        d.pairs[dying].death_source = e.max_vertex;
        parent[rd] = rs;
    }
    return d;
}

/// 1-dimensional persistence: edges in ascending filtration order (ties by
/// edge id); an edge closing a cycle yields an essential tuple at its value,
/// every other edge yields a dummy tuple (value, value). |pairs| = |E|.
inline PersistenceDiagram diagram1(const Graph& g, const std::vector<double>& values,
                                   const std::vector<int>* tiebreak = nullptr) {
    if (static_cast<int>(values.size()) != g.n)
        throw std::invalid_argument("diagram1: value count mismatch");
    detail::UnionFind uf(g.n);
    PersistenceDiagram d;
    d.dim = 1;
    d.pairs.reserve(g.edges.size());
    for (const auto& e : detail::sorted_edge_events(g, values, tiebreak)) {
        PersistencePair p;
        p.birth = e.value;
        p.edge_u = e.u;
        p.edge_v = e.v;
        p.birth_source = e.max_vertex;
        if (uf.unite(e.u, e.v)) {
            p.death = e.value;
            p.death_source = e.max_vertex;
        } else {
            p.essential = true;
        }
        d.pairs.push_back(p);
    }
    return d;
}

/// Multiset equality of (birth, death) tuples within tol; infinity matches
/// only infinity; provenance is ignored.
inline bool diagrams_equal(const PersistenceDiagram& d1, const PersistenceDiagram& d2,
                           double tol) {
    if (d1.dim != d2.dim) throw std::invalid_argument("diagrams_equal: dimension mismatch");
    if (d1.pairs.size() != d2.pairs.size()) return false;
    auto split = [](const PersistenceDiagram& d) {
        std::vector<double> ess;
        std::vector<std::pair<double, double>> fin;
        for (const auto& p : d.pairs) {
            if (p.essential)
                ess.push_back(p.birth);
            else
                fin.emplace_back(p.birth, p.death);
        }
        std::sort(ess.begin(), ess.end());
        std::sort(fin.begin(), fin.end());
        return std::pair(std::move(ess), std::move(fin));
    };
    auto [e1, f1] = split(d1);
    auto [e2, f2] = split(d2);
    if (e1.size() != e2.size()) return false;
    for (size_t i = 0; i < e1.size(); ++i)
        if (std::fabs(e1[i] - e2[i]) > tol) return false;
    for (size_t i = 0; i < f1.size(); ++i)
        if (std::fabs(f1[i].first - f2[i].first) > tol ||
            std::fabs(f1[i].second - f2[i].second) > tol)
            return false;
    return true;
}

/// Multiset of per-component color sets, canonically sorted.
inline std::vector<std::vector<Color>> component_wise_colors(const Graph& g,
                                                             const ColorAssignment& colors) {
    if (static_cast<int>(colors.size()) != g.n)
        throw std::invalid_argument("component_wise_colors: color count mismatch");
    auto comp = component_ids(g);
    int ncomp = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
    std::vector<std::vector<Color>> sets(ncomp);
    for (int v = 0; v < g.n; ++v) sets[comp[v]].push_back(colors[v]);
    for (auto& s : sets) {
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
    }
    std::sort(sets.begin(), sets.end());
    return sets;
}

/// True iff deleting all vertices whose color lies in q leaves the two
/// graphs with different component-wise color multisets.
inline bool is_color_separating(const Graph& g1, const ColorAssignment& c1, const Graph& g2,
                                const ColorAssignment& c2, const std::vector<Color>& q) {
    auto restrict_graph = [&](const Graph& g, const ColorAssignment& c) {
        std::vector<int> keep;
        for (int v = 0; v < g.n; ++v)
            if (std::find(q.begin(), q.end(), c[v]) == q.end()) keep.push_back(v);
        std::vector<int> newid(g.n, -1);
        for (size_t i = 0; i < keep.size(); ++i) newid[keep[i]] = static_cast<int>(i);
        std::vector<std::pair<int, int>> edges;
        for (auto [u, v] : g.edges)
            if (newid[u] >= 0 && newid[v] >= 0) edges.emplace_back(newid[u], newid[v]);
        Graph h = build_graph(static_cast<int>(keep.size()), edges);
        ColorAssignment hc;
        hc.reserve(keep.size());
        for (int v : keep) hc.push_back(c[v]);
        return std::pair(std::move(h), std::move(hc));
    };
    auto [h1, hc1] = restrict_graph(g1, c1);
    auto [h2, hc2] = restrict_graph(g2, c2);
    return component_wise_colors(h1, hc1) != component_wise_colors(h2, hc2);
}

}  // namespace ppe
