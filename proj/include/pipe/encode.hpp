#pragma once

#include <cmath>
#include <functional>
#include <queue>
#include <stdexcept>
#include <vector>

#include "pipe/graph.hpp"
#include "pipe/spectral.hpp"

namespace ppe {

enum class PEMethod { lap, rw, distance };
enum class PEPolicy { raw, eigenspace_projection };
enum class DistanceMode { rw_vector, pagerank, shortest_path };

/// Per-node positional encoding rows plus the metadata needed to compare two
/// encodings correctly. For raw Laplacian rows, col_groups marks runs of
/// columns that belong to one eigenvalue, where basis rotations and sign
/// flips make entrywise comparison ambiguous.
struct PEMatrix {
    PEMethod method = PEMethod::rw;
    int k = 0;
    PEPolicy policy = PEPolicy::raw;
    std::vector<std::vector<double>> rows;
    std::vector<std::pair<int, int>> col_groups;  // inclusive column ranges

    int width() const { return rows.empty() ? 0 : static_cast<int>(rows[0].size()); }
};

/// Laplacian positional encoding from the k smallest eigenpairs of the
/// normalized Laplacian (trivial ones included; pass skip_trivial to drop the
/// very first eigenpair).
///
/// raw: p_v = (u_1[v], ..., u_k[v]) with each eigenvector's sign fixed so its
/// largest-magnitude entry (lowest index on ties) is positive.
///
/// eigenspace_projection: one column per eigenvalue group touching the first
/// k indices; the entry is the squared norm of the projection of e_v onto the
/// group's full eigenspace. Unlike raw rows this is basis-unambiguous.
inline PEMatrix lap_pe(const Graph& g, int k, PEPolicy policy = PEPolicy::raw,
                       bool skip_trivial = false) {
    const int offset = skip_trivial ? 1 : 0;
    if (k < 1 || k + offset > g.n) throw std::invalid_argument("lap_pe: k out of range");
    EigenDecomposition d = eigh(normalized_laplacian(g));
    PEMatrix pe;
    pe.method = PEMethod::lap;
    pe.k = k;
    pe.policy = policy;
    pe.rows.assign(g.n, {});
    if (policy == PEPolicy::raw) {
        Matrix cols(g.n, k);
        for (int c = 0; c < k; ++c) {
            int src = offset + c;
            int argmax = 0;
            for (int v = 1; v < g.n; ++v)
                if (std::fabs(d.vectors(v, src)) > std::fabs(d.vectors(argmax, src))) argmax = v;
            double sign = d.vectors(argmax, src) < 0 ? -1.0 : 1.0;
            for (int v = 0; v < g.n; ++v) cols(v, c) = sign * d.vectors(v, src);
        }
        for (int v = 0; v < g.n; ++v) {
            pe.rows[v].resize(k);
            for (int c = 0; c < k; ++c) pe.rows[v][c] = cols(v, c);
        }
        for (auto [lo, hi] : d.groups) {
            int a = std::max(lo, offset) - offset;
            int b = std::min(hi, offset + k - 1) - offset;
            if (a <= b) pe.col_groups.emplace_back(a, b);
        }
    } else {
        std::vector<std::pair<int, int>> used;
        for (auto [lo, hi] : d.groups)
            if (lo <= offset + k - 1 && hi >= offset) used.emplace_back(lo, hi);
        for (int v = 0; v < g.n; ++v) pe.rows[v].resize(used.size());
        for (size_t c = 0; c < used.size(); ++c) {
            auto [lo, hi] = used[c];
            for (int v = 0; v < g.n; ++v) {
                double s = 0.0;
                for (int i = lo; i <= hi; ++i) s += d.vectors(v, i) * d.vectors(v, i);
                pe.rows[v][c] = s;
            }
            pe.col_groups.emplace_back(static_cast<int>(c), static_cast<int>(c));
        }
    }
    return pe;
}

/// Random-walk encoding: p_v = k-step diagonal return probabilities.
inline PEMatrix rw_pe(const Graph& g, int k) {
    if (k < 1) throw std::invalid_argument("rw_pe: k must be >= 1");
    PEMatrix pe;
    pe.method = PEMethod::rw;
    pe.k = k;
    pe.policy = PEPolicy::raw;
    pe.rows.assign(g.n, std::vector<double>(k, 0.0));
    Matrix r = rw_matrix(g);
    Matrix p = r;
    for (int step = 1; step <= k; ++step) {
        if (step > 1) p = p * r;
        for (int v = 0; v < g.n; ++v) pe.rows[v][step - 1] = p(v, v);
    }
    for (int c = 0; c < k; ++c) pe.col_groups.emplace_back(c, c);
    return pe;
}

/// Distance encoding: p_v sums phi(d_G(v, s)) over the anchor set, where the
/// per-anchor quantity is a k-vector of random-walk powers, a PageRank-style
/// polynomial in the walk matrix, or the hop distance (unreachable encoded as
/// n). phi is the identity here.
inline PEMatrix distance_pe(const Graph& g, const std::vector<int>& anchors, int k,
                            DistanceMode mode, const std::vector<double>& gammas = {}) {
    if (anchors.empty()) throw std::invalid_argument("distance_pe: empty anchor set");
    for (int s : anchors)
        if (s < 0 || s >= g.n) throw std::invalid_argument("distance_pe: anchor out of range");
    PEMatrix pe;
    pe.method = PEMethod::distance;
    pe.k = k;
    pe.policy = PEPolicy::raw;
    if (mode == DistanceMode::rw_vector || mode == DistanceMode::pagerank) {
        if (k < 1) throw std::invalid_argument("distance_pe: k must be >= 1");
        if (mode == DistanceMode::pagerank && gammas.size() != static_cast<size_t>(k))
            throw std::invalid_argument("distance_pe: pagerank needs k coefficients");
        std::vector<Matrix> powers;
        Matrix r = rw_matrix(g);
        powers.push_back(r);
        for (int i = 1; i < k; ++i) powers.push_back(powers.back() * r);
        int width = mode == DistanceMode::rw_vector ? k : 1;
        pe.rows.assign(g.n, std::vector<double>(width, 0.0));
        for (int v = 0; v < g.n; ++v)
            for (int s : anchors)
                for (int i = 0; i < k; ++i) {
                    double x = powers[i](v, s);
                    if (mode == DistanceMode::rw_vector)
                        pe.rows[v][i] += x;
                    else
                        pe.rows[v][0] += gammas[i] * x;
                }
    } else {
        pe.rows.assign(g.n, std::vector<double>(1, 0.0));
        for (int s : anchors) {
            std::vector<int> dist(g.n, -1);
            std::queue<int> q;
            dist[s] = 0;
            q.push(s);
            while (!q.empty()) {
                int v = q.front();
                q.pop();
                for (int u : g.adj[v])
                    if (dist[u] < 0) {
                        dist[u] = dist[v] + 1;
                        q.push(u);
                    }
            }
            for (int v = 0; v < g.n; ++v)
                pe.rows[v][0] += dist[v] < 0 ? static_cast<double>(g.n) : dist[v];
        }
    }
    for (int c = 0; c < pe.width(); ++c) pe.col_groups.emplace_back(c, c);
    return pe;
}

namespace detail {

inline bool rows_equal_sorted(std::vector<std::vector<double>> a,
                              std::vector<std::vector<double>> b, double tol) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a[i].size(); ++j)
            if (std::fabs(a[i][j] - b[i][j]) > tol) return false;
    return true;
}

// perfect matching between rows over entrywise tolerance compatibility;
// complete where the sorted pairing can misalign rows whose gaps sit at the
// noise floor
inline bool rows_equal_assignment(const std::vector<std::vector<double>>& a,
                                  const std::vector<std::vector<double>>& b, double tol) {
    const int n = static_cast<int>(a.size());
    std::vector<std::vector<int>> compat(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            bool ok = true;
            for (size_t c = 0; c < a[i].size() && ok; ++c)
                ok = std::fabs(a[i][c] - b[j][c]) <= tol;
            if (ok) compat[i].push_back(j);
        }
    std::vector<int> match(n, -1);
    std::function<bool(int, std::vector<char>&)> augment = [&](int i, std::vector<char>& seen) {
        for (int j : compat[i]) {
            if (seen[j]) continue;
            seen[j] = 1;
            if (match[j] < 0 || augment(match[j], seen)) {
                match[j] = i;
                return true;
            }
        }
        return false;
    };
    for (int i = 0; i < n; ++i) {
        std::vector<char> seen(n, 0);
        if (!augment(i, seen)) return false;
    }
    return true;
}

inline bool rows_multiset_equal(const std::vector<std::vector<double>>& a,
                                const std::vector<std::vector<double>>& b, double tol) {
    if (rows_equal_sorted(a, b, tol)) return true;
    if (tol == 0.0) return false;  // sorted pairing is exact at zero tolerance
    return rows_equal_assignment(a, b, tol);
}

}  // namespace detail

/// Multiset equality of encoding rows under greedy sorted-lexicographic
/// pairing with per-entry tolerance. For raw Laplacian encodings the check
/// additionally quantifies over per-column sign flips and over column
/// permutations within equal-eigenvalue groups, since those degrees of
/// freedom are solver artifacts, not graph structure.
inline bool pe_multiset_equal(const PEMatrix& p1, const PEMatrix& p2, double tol) {
    if (p1.method != p2.method || p1.k != p2.k || p1.policy != p2.policy)
        throw std::invalid_argument("pe_multiset_equal: method/k/policy mismatch");
    if (p1.rows.size() != p2.rows.size() || p1.width() != p2.width())
        throw std::invalid_argument("pe_multiset_equal: shape mismatch");
    const int w = p1.width();
    if (!(p1.method == PEMethod::lap && p1.policy == PEPolicy::raw))
        return detail::rows_multiset_equal(p1.rows, p2.rows, tol);

    // enumerate permutations within each column group of p1
    std::vector<std::vector<std::vector<int>>> group_perms;
    for (auto [lo, hi] : p1.col_groups) {
        std::vector<int> base;
        for (int c = lo; c <= hi; ++c) base.push_back(c);
        std::vector<std::vector<int>> perms;
        std::sort(base.begin(), base.end());
        do {
            perms.push_back(base);
        } while (std::next_permutation(base.begin(), base.end()));
        group_perms.push_back(std::move(perms));
    }
    std::vector<size_t> pick(group_perms.size(), 0);
    while (true) {
        std::vector<int> colmap(w);
        {
            for (size_t gi = 0; gi < group_perms.size(); ++gi) {
                auto [lo, hi] = p1.col_groups[gi];
                const auto& perm = group_perms[gi][pick[gi]];
                for (int c = lo; c <= hi; ++c) colmap[c] = perm[c - lo];
            }
        }
        for (int mask = 0; mask < (1 << w); ++mask) {
            std::vector<std::vector<double>> rows = p1.rows;
            for (auto& r : rows) {
                std::vector<double> nr(w);
                for (int c = 0; c < w; ++c) {
                    double x = r[colmap[c]];
                    nr[c] = (mask >> c & 1) ? -x : x;
                }
                r = std::move(nr);
            }
            if (detail::rows_multiset_equal(rows, p2.rows, tol)) return true;
        }
        size_t gi = 0;
        while (gi < pick.size() && ++pick[gi] == group_perms[gi].size()) pick[gi++] = 0;
        if (gi == pick.size()) break;
    }
    return false;
}

}  // namespace ppe
