#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "pipe/graph.hpp"

namespace ppe {

using NodeColors = std::vector<int>;

struct ColorHistogram {
    std::map<int, int> counts;
    bool operator==(const ColorHistogram&) const = default;
};

inline ColorHistogram histogram(const NodeColors& colors) {
    ColorHistogram h;
    for (int c : colors) ++h.counts[c];
    return h;
}

namespace detail {

// Assign dense ids to serialized keys by sorted key order, shared across all
// graphs of one comparison. Rank-of-content ids are both comparable between
// the graphs and invariant under vertex relabeling.
inline std::vector<NodeColors> canonical_ids(const std::vector<std::vector<std::string>>& keys) {
    std::map<std::string, int> ids;
    for (const auto& ks : keys)
        for (const auto& k : ks) ids.emplace(k, 0);
    int next = 0;
    for (auto& [k, id] : ids) id = next++;
    std::vector<NodeColors> out(keys.size());
    for (size_t i = 0; i < keys.size(); ++i) {
        out[i].resize(keys[i].size());
        for (size_t j = 0; j < keys[i].size(); ++j) out[i][j] = ids[keys[i][j]];
    }
    return out;
}

inline int distinct_count(const std::vector<NodeColors>& cols) {
    std::set<int> s;
    for (const auto& c : cols) s.insert(c.begin(), c.end());
    return static_cast<int>(s.size());
}

inline std::string wl1_key(int own, std::vector<int> nbr) {
    std::sort(nbr.begin(), nbr.end());
    std::string k = std::to_string(own) + "|";
    for (int c : nbr) k += std::to_string(c) + ",";
    return k;
}

}  // namespace detail

/// 1-WL color refinement run jointly on a set of graphs with shared color
/// ids; init[i] are the starting colors of graph i (empty means constant).
/// Iterates c'(v) = relabel(c(v), multiset of neighbor colors) to a fixpoint.
inline std::vector<NodeColors> wl1_joint(const std::vector<const Graph*>& gs,
                                         std::vector<NodeColors> init) {
    std::vector<NodeColors> cols(gs.size());
    {
        std::vector<std::vector<std::string>> keys(gs.size());
        for (size_t gi = 0; gi < gs.size(); ++gi) {
            NodeColors c;
            if (init.size() > gi && !init[gi].empty()) {
                if (static_cast<int>(init[gi].size()) != gs[gi]->n)
                    throw std::invalid_argument("wl1: init color count mismatch");
                c = init[gi];
            } else {
                c.assign(gs[gi]->n, 0);
            }
            for (int x : c) keys[gi].push_back("i" + std::to_string(x));
        }
        cols = detail::canonical_ids(keys);
    }
    int total = 0;
    for (auto* g : gs) total += g->n;
    int distinct = detail::distinct_count(cols);
    for (int round = 0; round < total + 1; ++round) {
        std::vector<std::vector<std::string>> keys(gs.size());
        for (size_t gi = 0; gi < gs.size(); ++gi) {
            const Graph& g = *gs[gi];
            keys[gi].resize(g.n);
            for (int v = 0; v < g.n; ++v) {
                std::vector<int> nbr;
                nbr.reserve(g.adj[v].size());
                for (int u : g.adj[v]) nbr.push_back(cols[gi][u]);
                keys[gi][v] = detail::wl1_key(cols[gi][v], std::move(nbr));
            }
        }
        cols = detail::canonical_ids(keys);
        int nd = detail::distinct_count(cols);
        if (nd == distinct) break;  // refinement is monotone, equal count means stable
        distinct = nd;
    }
    return cols;
}

/// Stable 1-WL coloring and histogram of a single graph.
inline std::pair<NodeColors, ColorHistogram> wl1(const Graph& g, const NodeColors& init = {}) {
    auto cols = wl1_joint({&g}, {init});
    return {cols[0], histogram(cols[0])};
}

inline bool wl1_distinguish(const Graph& g1, const Graph& g2, const NodeColors& init1 = {},
                            const NodeColors& init2 = {}) {
    auto cols = wl1_joint({&g1, &g2}, {init1, init2});
    return histogram(cols[0]) != histogram(cols[1]);
}

/// Stable coloring of V^k tuples under folklore k-WL refinement.
struct TupleColoring {
    int k = 0;
    int n = 0;
    std::vector<int> colors;  // indexed by tuple rank in base n
    int rounds = 0;

    int color(const std::vector<int>& tuple) const {
        long long idx = 0;
        for (int t : tuple) idx = idx * n + t;
        return colors[static_cast<size_t>(idx)];
    }
};

namespace detail {

inline void kfwl_check_budget(const Graph& g, int k, int budget_n) {
    if (k < 2 || k > 3) throw std::invalid_argument("kfwl: k must be 2 or 3");
    if (g.n > budget_n)
        throw std::invalid_argument("kfwl: graph order " + std::to_string(g.n) +
                                    " exceeds budget " + std::to_string(budget_n) +
                                    " for k=" + std::to_string(k));
}

inline int kfwl_default_budget(int k) { return k == 2 ? 12 : 10; }

// Initial tuple color: equality and adjacency pattern of the ordered tuple,
// i.e. the labeled isomorphism type of the induced ordered subgraph.
inline std::string kfwl_init_key(const Graph& g, const std::vector<int>& t) {
    std::string key;
    int k = static_cast<int>(t.size());
    key.reserve(static_cast<size_t>(k) * k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            if (i == j) continue;
            key += (t[i] == t[j]) ? 'e' : (g.has_edge(t[i], t[j]) ? 'a' : '-');
        }
    return key;
}

}  // namespace detail

/// Folklore k-WL refinement run jointly on two graphs so tuple color ids are
/// comparable. The update replaces each tuple position with every vertex w
/// and aggregates the k resulting colors as a multiset over w.
inline std::pair<TupleColoring, TupleColoring> kfwl_pair(const Graph& g1, const Graph& g2, int k,
                                                         int budget_n = -1) {
    if (budget_n < 0) budget_n = detail::kfwl_default_budget(k);
    detail::kfwl_check_budget(g1, k, budget_n);
    detail::kfwl_check_budget(g2, k, budget_n);
    const Graph* gs[2] = {&g1, &g2};
    size_t sizes[2];
    std::vector<std::vector<int>> tuples[2];
    std::vector<NodeColors> cols;
    {
        std::vector<std::vector<std::string>> keys(2);
        for (int gi = 0; gi < 2; ++gi) {
            const Graph& g = *gs[gi];
            size_t total = 1;
            for (int i = 0; i < k; ++i) total *= static_cast<size_t>(g.n);
            sizes[gi] = total;
            tuples[gi].resize(total);
            keys[gi].resize(total);
            std::vector<int> t(k, 0);
            for (size_t idx = 0; idx < total; ++idx) {
                size_t rem = idx;
                for (int i = k - 1; i >= 0; --i) {
                    t[i] = static_cast<int>(rem % g.n);
                    rem /= g.n;
                }
                tuples[gi][idx] = t;
                keys[gi][idx] = detail::kfwl_init_key(g, t);
            }
        }
        cols = detail::canonical_ids(keys);
    }
    int rounds = 0;
    int distinct = detail::distinct_count(cols);
    for (size_t round = 0; round < sizes[0] + sizes[1] + 1; ++round) {
        std::vector<std::vector<std::string>> keys(2);
        for (int gi = 0; gi < 2; ++gi) {
            const Graph& g = *gs[gi];
            keys[gi].resize(sizes[gi]);
            for (size_t idx = 0; idx < sizes[gi]; ++idx) {
                const auto& t = tuples[gi][idx];
                std::vector<std::vector<int>> ms;
                ms.reserve(static_cast<size_t>(g.n));
                for (int w = 0; w < g.n; ++w) {
                    std::vector<int> entry(k);
                    for (int j = 0; j < k; ++j) {
                        long long nidx = 0;
                        for (int i = 0; i < k; ++i) nidx = nidx * g.n + (i == j ? w : t[i]);
                        entry[j] = cols[gi][static_cast<size_t>(nidx)];
                    }
                    ms.push_back(std::move(entry));
                }
                std::sort(ms.begin(), ms.end());
                std::string key = std::to_string(cols[gi][idx]) + "#";
                for (const auto& e : ms) {
                    for (int c : e) key += std::to_string(c) + ",";
                    key += ";";
                }
                keys[gi][idx] = std::move(key);
            }
        }
        cols = detail::canonical_ids(keys);
        ++rounds;
        int nd = detail::distinct_count(cols);
        if (nd == distinct) break;
        distinct = nd;
    }
    TupleColoring a{k, g1.n, std::move(cols[0]), rounds};
    TupleColoring b{k, g2.n, std::move(cols[1]), rounds};
    return {std::move(a), std::move(b)};
}

/// Stable k-FWL coloring of one graph (ids local to this run).
inline TupleColoring kfwl(const Graph& g, int k, int budget_n = -1) {
    return kfwl_pair(g, g, k, budget_n).first;
}

inline ColorHistogram tuple_histogram(const TupleColoring& tc) {
    ColorHistogram h;
    for (int c : tc.colors) ++h.counts[c];
    return h;
}

/// True iff the stable k-FWL color histograms of the two graphs differ.
inline bool kfwl_distinguish(const Graph& g1, const Graph& g2, int k, int budget_n = -1) {
    auto [a, b] = kfwl_pair(g1, g2, k, budget_n);
    return tuple_histogram(a) != tuple_histogram(b);
}

namespace detail {

inline std::vector<std::string> projection_keys(const Graph& g, const TupleColoring& tc) {
    std::vector<std::set<int>> sets(g.n);
    std::vector<int> t(tc.k, 0);
    size_t total = tc.colors.size();
    for (size_t idx = 0; idx < total; ++idx) {
        size_t rem = idx;
        for (int i = tc.k - 1; i >= 0; --i) {
            t[i] = static_cast<int>(rem % tc.n);
            rem /= tc.n;
        }
        for (int i = 0; i < tc.k; ++i) sets[t[i]].insert(tc.colors[idx]);
    }
    std::vector<std::string> keys(g.n);
    for (int v = 0; v < g.n; ++v) {
        std::string key;
        for (int c : sets[v]) key += std::to_string(c) + ",";
        keys[v] = std::move(key);
    }
    return keys;
}

}  // namespace detail

/// Project stable tuple colorings of two comparison partners down to nodes:
/// a node's color is the hash of the set of stable tuple colors over all
/// tuples containing it. Both tuple colorings must come from one kfwl_pair
/// run, and the hash space is shared so node colors are comparable across
/// the two graphs.
inline std::pair<NodeColors, NodeColors> kfwl_node_projection_pair(const Graph& g1,
                                                                   const TupleColoring& tc1,
                                                                   const Graph& g2,
                                                                   const TupleColoring& tc2) {
    auto k1 = detail::projection_keys(g1, tc1);
    auto k2 = detail::projection_keys(g2, tc2);
    std::map<std::string, int> ids;
    for (const auto& k : k1) ids.emplace(k, 0);
    for (const auto& k : k2) ids.emplace(k, 0);
    int next = 0;
    for (auto& [key, id] : ids) id = next++;
    NodeColors c1(g1.n), c2(g2.n);
    for (int v = 0; v < g1.n; ++v) c1[v] = ids[k1[v]];
    for (int v = 0; v < g2.n; ++v) c2[v] = ids[k2[v]];
    return {std::move(c1), std::move(c2)};
}

/// Single-graph projection; ids are only meaningful within this graph.
inline NodeColors kfwl_node_projection(const Graph& g, const TupleColoring& tc) {
    return kfwl_node_projection_pair(g, tc, g, tc).first;
}

/// Content-addressed 2-FWL fingerprint of a single graph: colors are 64-bit
/// hashes of their refinement history, so equal fingerprints are comparable
/// across graphs without a joint run. Used for bulk candidate screening.
inline uint64_t fwl2_fingerprint(const Graph& g) {
    auto h64 = [](const std::string& s) {
        uint64_t h = 1469598103934665603ULL;
        for (unsigned char c : s) {
            h ^= c;
            h *= 1099511628211ULL;
        }
        return h;
    };
    const int n = g.n;
    std::vector<uint64_t> col(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::string key = i == j ? "e" : (g.has_edge(i, j) ? "a" : "-");
            col[static_cast<size_t>(i) * n + j] = h64(key);
        }
    auto count_distinct = [&] {
        std::set<uint64_t> s(col.begin(), col.end());
        return s.size();
    };
    size_t distinct = count_distinct();
    for (int round = 0; round < n * n + 1; ++round) {
        std::vector<uint64_t> out(col.size());
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                std::vector<std::pair<uint64_t, uint64_t>> ms;
                ms.reserve(static_cast<size_t>(n));
                for (int w = 0; w < n; ++w)
                    ms.emplace_back(col[static_cast<size_t>(w) * n + j],
                                    col[static_cast<size_t>(i) * n + w]);
                std::sort(ms.begin(), ms.end());
                std::string key = std::to_string(col[static_cast<size_t>(i) * n + j]) + "#";
                for (auto& p : ms)
                    key += std::to_string(p.first) + "," + std::to_string(p.second) + ";";
                out[static_cast<size_t>(i) * n + j] = h64(key);
            }
        col = std::move(out);
        size_t nd = count_distinct();
        if (nd == distinct) break;
        distinct = nd;
    }
    std::vector<uint64_t> sorted(col);
    std::sort(sorted.begin(), sorted.end());
    std::string all;
    for (uint64_t c : sorted) all += std::to_string(c) + ",";
    return h64(all);
}

}  // namespace ppe
