#pragma once

#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "pipe/encode.hpp"
#include "pipe/graph.hpp"
#include "pipe/persist.hpp"
#include "pipe/rng.hpp"
#include "pipe/wl.hpp"

namespace ppe {

/// Layer-stack configuration. pe_dim must equal base_k: every base encoding
/// is produced (or zero-padded) at that width.
struct PiPEConfig {
    int layers = 2;
    int pe_dim = 4;
    int hidden = 8;
    PEMethod base_pe = PEMethod::rw;
    int base_k = 4;
    int filtration_count = 2;
    int x0_dim = 1;
    uint64_t seed = 0;
};

namespace detail {

struct Affine {
    Matrix w;  // out x in
    std::vector<double> b;

    std::vector<double> apply(const std::vector<double>& x) const {
        std::vector<double> y(b);
        for (int i = 0; i < w.rows; ++i) {
            double s = 0.0;
            for (int j = 0; j < w.cols; ++j) s += w(i, j) * x[j];
            y[i] += s;
        }
        return y;
    }

    // x-cotangent from y-cotangent
    std::vector<double> backward(const std::vector<double>& dy) const {
        std::vector<double> dx(w.cols, 0.0);
        for (int i = 0; i < w.rows; ++i)
            for (int j = 0; j < w.cols; ++j) dx[j] += w(i, j) * dy[i];
        return dx;
    }
};

inline Affine random_affine(int out, int in, Rng& rng) {
    Affine a;
    a.w = Matrix(out, in);
    a.b.assign(out, 0.0);
    double s = 1.0 / std::sqrt(static_cast<double>(in));
    for (int i = 0; i < out; ++i)
        for (int j = 0; j < in; ++j) a.w(i, j) = rng.uniform(-s, s);
    for (int i = 0; i < out; ++i) a.b[i] = rng.uniform(-s, s);
    return a;
}

inline double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

}  // namespace detail

/// All learnable tensors, reproducible from (config, seed).
struct PiPEParams {
    PiPEConfig cfg;
    detail::Affine embed;  // x0 colors -> hidden
    struct Layer {
        std::vector<std::vector<double>> filt_w;  // [filtration][pe_dim]
        std::vector<double> filt_b;               // [filtration]
        detail::Affine psi0;                      // 3F -> hidden, tanh
        detail::Affine psi1;                      // 3F -> hidden, tanh
        detail::Affine upd_p;                     // 2*(2h+d) -> d, relu
        detail::Affine upd_x;                     // (h+d+2h) -> h, relu
    };
    std::vector<Layer> layers;
    detail::Affine readout;  // (h + d + 2h) -> h
};

/// Deterministic parameter draw: uniform in [-1/sqrt(fan_in), +1/sqrt(fan_in)]
/// from the splitmix64-seeded xoshiro256++ stream, in fixed order.
inline PiPEParams init_params(const PiPEConfig& cfg) {
    if (cfg.layers < 1 || cfg.pe_dim < 1 || cfg.hidden < 1 || cfg.base_k < 1 ||
        cfg.filtration_count < 1 || cfg.x0_dim < 1)
        throw std::invalid_argument("init_params: all dimensions must be >= 1");
    if (cfg.pe_dim != cfg.base_k)
        throw std::invalid_argument("init_params: pe_dim must equal base_k");
    Rng rng(cfg.seed);
    PiPEParams p;
    p.cfg = cfg;
    const int d = cfg.pe_dim, h = cfg.hidden, F = cfg.filtration_count;
    p.embed = detail::random_affine(h, cfg.x0_dim, rng);
    double fs = 1.0 / std::sqrt(static_cast<double>(d));
    for (int l = 0; l < cfg.layers; ++l) {
        PiPEParams::Layer lay;
        lay.filt_w.assign(F, std::vector<double>(d));
        lay.filt_b.assign(F, 0.0);
        for (int f = 0; f < F; ++f) {
            for (int j = 0; j < d; ++j) lay.filt_w[f][j] = rng.uniform(-fs, fs);
            lay.filt_b[f] = rng.uniform(-fs, fs);
        }
        lay.psi0 = detail::random_affine(h, 3 * F, rng);
        lay.psi1 = detail::random_affine(h, 3 * F, rng);
        lay.upd_p = detail::random_affine(d, 2 * (2 * h + d), rng);
        lay.upd_x = detail::random_affine(h, h + d + 2 * h, rng);
        p.layers.push_back(std::move(lay));
    }
    p.readout = detail::random_affine(h, h + d + 2 * h, rng);
    return p;
}

/// Base encoding rows at width pe_dim. Laplacian rows use the eigenspace
/// projection (basis-free, hence permutation-equivariant) zero-padded to
/// pe_dim; distance rows aggregate walk vectors over all vertices as anchors.
inline std::vector<std::vector<double>> base_pe_rows(const Graph& g, const PiPEConfig& cfg) {
    PEMatrix pe;
    switch (cfg.base_pe) {
        case PEMethod::lap:
            pe = lap_pe(g, std::min(cfg.base_k, g.n), PEPolicy::eigenspace_projection);
            break;
        case PEMethod::rw:
            pe = rw_pe(g, cfg.base_k);
            break;
        case PEMethod::distance: {
            std::vector<int> anchors(g.n);
            for (int v = 0; v < g.n; ++v) anchors[v] = v;
            pe = distance_pe(g, anchors, cfg.base_k, DistanceMode::rw_vector);
            break;
        }
    }
    std::vector<std::vector<double>> rows(g.n, std::vector<double>(cfg.pe_dim, 0.0));
    for (int v = 0; v < g.n; ++v)
        for (int j = 0; j < std::min(pe.width(), cfg.pe_dim); ++j) rows[v][j] = pe.rows[v][j];
    return rows;
}

namespace detail {

inline std::vector<double> concat(std::initializer_list<const std::vector<double>*> parts) {
    std::vector<double> out;
    for (auto* p : parts) out.insert(out.end(), p->begin(), p->end());
    return out;
}

// Snap values that differ only at solver-noise scale onto one
// representative. Without this, relabeling a graph perturbs eigenvector
// arithmetic by ~1e-16 and near-ties order differently across labelings.
inline void snap_values(std::vector<double>& a, double tol) {
    std::vector<int> order(a.size());
    for (size_t i = 0; i < a.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int x, int y) { return a[x] < a[y]; });
    double rep = 0.0;
    bool have = false;
    for (int idx : order) {
        if (!have || a[idx] - rep > tol) {
            rep = a[idx];
            have = true;
        }
        a[idx] = rep;
    }
}

// relabeling-invariant tiebreak keys for tuple assignment under equal
// filtration values: refine ranks of the values by 1-WL
inline std::vector<int> assignment_tiebreak_keys(const Graph& g, const std::vector<double>& a) {
    std::map<double, int> rank;
    for (double x : a) rank.emplace(x, 0);
    int next = 0;
    for (auto& [x, r] : rank) r = next++;
    NodeColors init(g.n);
    for (int v = 0; v < g.n; ++v) init[v] = rank[a[v]];
    return wl1_joint({&g}, {init})[0];
}

}  // namespace detail

/// Vectorization inputs of one filtration: per-vertex dim-0 tuples and
/// per-edge dim-1 tuples as (birth, death-or-0, essential-flag) triples.
///
/// Which vertex or edge owns a tuple is ambiguous exactly on tie classes
/// (equal filtration value and equal refinement key); any hard choice there
/// depends on vertex labels. Death and flag entries are therefore averaged
/// over each tie class, which is label-free, leaves singleton classes (the
/// generic case) untouched, and preserves class-level totals.
struct TopoFeatures {
    std::vector<int> vclass;                 // per-vertex tie class
    std::vector<std::vector<int>> vmembers;  // class -> vertices
    std::vector<int> eclass;                 // per-edge tie class
    std::vector<std::vector<int>> emembers;  // class -> edges
    std::vector<int> pair_of_edge;           // edge -> index into d1.pairs
    std::vector<std::array<double, 3>> vfeat;
    std::vector<std::array<double, 3>> efeat;
};

inline TopoFeatures topo_features(const Graph& g, const std::vector<double>& a,
                                  const std::vector<int>& keys, const PersistenceDiagram& d0,
                                  const PersistenceDiagram& d1,
                                  const std::map<std::pair<int, int>, int>& edge_index) {
    const int n = g.n, m = g.edge_count();
    TopoFeatures t;
    t.vclass.assign(n, -1);
    t.eclass.assign(m, -1);
    t.pair_of_edge.assign(m, -1);
    t.vfeat.assign(n, {});
    t.efeat.assign(m, {});
    {
        std::map<std::pair<double, int>, int> cid;
        for (int v = 0; v < n; ++v) {
            auto key = std::pair(a[v], keys[v]);
            auto [it, fresh] = cid.emplace(key, static_cast<int>(t.vmembers.size()));
            if (fresh) t.vmembers.emplace_back();
            t.vclass[v] = it->second;
            t.vmembers[it->second].push_back(v);
        }
    }
    {
        std::map<std::tuple<double, int, int>, int> cid;
        for (int e = 0; e < m; ++e) {
            auto [u, v] = g.edges[e];
            double val = std::max(a[u], a[v]);
            int lo = std::min(keys[u], keys[v]), hi = std::max(keys[u], keys[v]);
            auto key = std::tuple(val, lo, hi);
            auto [it, fresh] = cid.emplace(key, static_cast<int>(t.emembers.size()));
            if (fresh) t.emembers.emplace_back();
            t.eclass[e] = it->second;
            t.emembers[it->second].push_back(e);
        }
    }
    for (size_t i = 0; i < d1.pairs.size(); ++i)
        t.pair_of_edge[edge_index.at({d1.pairs[i].edge_u, d1.pairs[i].edge_v})] =
            static_cast<int>(i);
    for (const auto& members : t.vmembers) {
        double death = 0.0, flag = 0.0;
        for (int v : members) {
            const auto& p = d0.pairs[v];
            death += p.essential ? 0.0 : p.death;
            flag += p.essential ? 1.0 : 0.0;
        }
        death /= static_cast<double>(members.size());
        flag /= static_cast<double>(members.size());
        for (int v : members) t.vfeat[v] = {a[v], death, flag};
    }
    for (const auto& members : t.emembers) {
        double death = 0.0, flag = 0.0;
        for (int e : members) {
            const auto& p = d1.pairs[t.pair_of_edge[e]];
            death += p.essential ? 0.0 : p.death;
            flag += p.essential ? 1.0 : 0.0;
        }
        death /= static_cast<double>(members.size());
        flag /= static_cast<double>(members.size());
        for (int e : members) {
            auto [u, v] = g.edges[e];
            t.efeat[e] = {std::max(a[u], a[v]), death, flag};
        }
    }
    return t;
}

/// Everything one forward pass produced, including the intermediates the
/// backward pass needs.
struct ForwardTrace {
    struct LayerTrace {
        std::vector<std::vector<double>> p;         // input positional rows
        std::vector<std::vector<double>> filt_a;    // [F][n] snapped values
        std::vector<PersistenceDiagram> d0, d1;     // per filtration
        std::vector<TopoFeatures> topo;             // per filtration
        std::vector<std::vector<double>> psi0_pre;  // [n][h]
        std::vector<std::vector<double>> r0;        // [n][h]
        std::vector<std::vector<double>> psi1_pre;  // [m][h] per edge
        std::vector<std::vector<double>> r1;        // [n][h]
        std::vector<std::vector<double>> p_pre;     // [n][d]
        std::vector<std::vector<double>> x;         // input node rows [n][h]
        std::vector<std::vector<double>> x_pre;     // [n][h]
    };
    std::vector<LayerTrace> layers;
    std::vector<std::vector<double>> p_final;
    std::vector<std::vector<double>> x_final;
    std::vector<double> embedding;
};

/// Forward pass of the persistence-informed stack. Per layer: filter the
/// current positional rows, build dim-0/1 diagrams, vectorize them (dim 0
/// through the vertex-tuple pairing, dim 1 summed over incident edges with
/// dummies included), then update positional rows and GIN-style node rows
/// (epsilon = 0). Readout: sum over final node and positional rows,
/// concatenated with the mean over all layers of the topological rows, then
/// one affine map. with_topology=false masks the whole topological branch,
/// which yields the plain learnable-PE baseline.
inline ForwardTrace forward_pass(const Graph& g, const std::optional<ColorAssignment>& x0,
                                 const PiPEParams& params, bool with_topology) {
    const PiPEConfig& cfg = params.cfg;
    const int n = g.n, d = cfg.pe_dim, h = cfg.hidden, F = cfg.filtration_count;
    const int m = g.edge_count();
    std::map<std::pair<int, int>, int> edge_index;
    for (int e = 0; e < m; ++e) edge_index[g.edges[e]] = e;

    ForwardTrace tr;
    std::vector<std::vector<double>> x(n), p = base_pe_rows(g, cfg);
    for (int v = 0; v < n; ++v) {
        std::vector<double> c(cfg.x0_dim, 1.0);
        if (x0) {
            if (static_cast<int>((*x0)[v].size()) != cfg.x0_dim)
                throw std::invalid_argument("forward: x0 width mismatch");
            c = (*x0)[v];
        }
        x[v] = params.embed.apply(c);
    }

    for (int l = 0; l < cfg.layers; ++l) {
        const auto& lay = params.layers[l];
        ForwardTrace::LayerTrace lt;
        lt.p = p;
        lt.x = x;
        lt.filt_a.assign(F, std::vector<double>(n, 0.0));
        if (with_topology) {
            for (int f = 0; f < F; ++f) {
                for (int v = 0; v < n; ++v) {
                    double z = lay.filt_b[f];
                    for (int j = 0; j < d; ++j) z += lay.filt_w[f][j] * p[v][j];
                    lt.filt_a[f][v] = detail::sigmoid(z);
                }
                detail::snap_values(lt.filt_a[f], 1e-10);
                auto keys = detail::assignment_tiebreak_keys(g, lt.filt_a[f]);
                lt.d0.push_back(diagram0(g, lt.filt_a[f], &keys));
                lt.d1.push_back(diagram1(g, lt.filt_a[f], &keys));
                lt.topo.push_back(
                    topo_features(g, lt.filt_a[f], keys, lt.d0[f], lt.d1[f], edge_index));
            }
        }
        lt.psi0_pre.assign(n, std::vector<double>(h, 0.0));
        lt.r0.assign(n, std::vector<double>(h, 0.0));
        lt.psi1_pre.assign(m, std::vector<double>(h, 0.0));
        lt.r1.assign(n, std::vector<double>(h, 0.0));
        if (with_topology) {
            for (int v = 0; v < n; ++v) {
                std::vector<double> in(3 * F);
                for (int f = 0; f < F; ++f)
                    for (int t = 0; t < 3; ++t) in[3 * f + t] = lt.topo[f].vfeat[v][t];
                lt.psi0_pre[v] = lay.psi0.apply(in);
                for (int i = 0; i < h; ++i) lt.r0[v][i] = std::tanh(lt.psi0_pre[v][i]);
            }
            for (int e = 0; e < m; ++e) {
                std::vector<double> in(3 * F);
                for (int f = 0; f < F; ++f)
                    for (int t = 0; t < 3; ++t) in[3 * f + t] = lt.topo[f].efeat[e][t];
                lt.psi1_pre[e] = lay.psi1.apply(in);
                auto [u, v] = g.edges[e];
                for (int i = 0; i < h; ++i) {
                    double y = std::tanh(lt.psi1_pre[e][i]);
                    lt.r1[u][i] += y;
                    lt.r1[v][i] += y;
                }
            }
        }
        // positional update
        const int q = 2 * h + d;
        std::vector<std::vector<double>> cat(n), nbr_sum(n, std::vector<double>(q, 0.0));
        for (int v = 0; v < n; ++v) cat[v] = detail::concat({&lt.r0[v], &lt.r1[v], &p[v]});
        for (int v = 0; v < n; ++v)
            for (int u : g.adj[v])
                for (int j = 0; j < q; ++j) nbr_sum[v][j] += cat[u][j];
        lt.p_pre.assign(n, {});
        std::vector<std::vector<double>> p_next(n);
        for (int v = 0; v < n; ++v) {
            auto in = detail::concat({&cat[v], &nbr_sum[v]});
            lt.p_pre[v] = lay.upd_p.apply(in);
            p_next[v].resize(d);
            for (int j = 0; j < d; ++j) p_next[v][j] = std::max(0.0, lt.p_pre[v][j]);
        }
        // node update (GIN with epsilon = 0)
        std::vector<std::vector<double>> hcat(n);
        for (int v = 0; v < n; ++v) hcat[v] = detail::concat({&x[v], &p[v], &lt.r0[v], &lt.r1[v]});
        lt.x_pre.assign(n, {});
        std::vector<std::vector<double>> x_next(n);
        for (int v = 0; v < n; ++v) {
            std::vector<double> gin = hcat[v];
            for (int u : g.adj[v])
                for (size_t j = 0; j < gin.size(); ++j) gin[j] += hcat[u][j];
            lt.x_pre[v] = lay.upd_x.apply(gin);
            x_next[v].resize(h);
            for (int i = 0; i < h; ++i) x_next[v][i] = std::max(0.0, lt.x_pre[v][i]);
        }
        tr.layers.push_back(std::move(lt));
        p = std::move(p_next);
        x = std::move(x_next);
    }

    std::vector<double> sx(h, 0.0), sp(d, 0.0), topo(2 * h, 0.0);
    for (int v = 0; v < n; ++v) {
        for (int i = 0; i < h; ++i) sx[i] += x[v][i];
        for (int j = 0; j < d; ++j) sp[j] += p[v][j];
    }
    if (with_topology) {
        for (const auto& lt : tr.layers)
            for (int v = 0; v < n; ++v)
                for (int i = 0; i < h; ++i) {
                    topo[i] += lt.r0[v][i];
                    topo[h + i] += lt.r1[v][i];
                }
        double denom = static_cast<double>(cfg.layers) * n;
        for (auto& t : topo) t /= denom;
    }
    tr.p_final = std::move(p);
    tr.x_final = std::move(x);
    tr.embedding = params.readout.apply(detail::concat({&sx, &sp, &topo}));
    return tr;
}

inline ForwardTrace pipe_forward(const Graph& g, const PiPEParams& params,
                                 const std::optional<ColorAssignment>& x0 = std::nullopt) {
    return forward_pass(g, x0, params, true);
}

/// Baseline without topological features: the same message-passing stack with
/// every topological row masked to zero and readout on node and positional
/// sums only.
inline ForwardTrace lspe_forward(const Graph& g, const PiPEParams& params,
                                 const std::optional<ColorAssignment>& x0 = std::nullopt) {
    return forward_pass(g, x0, params, false);
}

inline double embedding_gap(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::fabs(a[i] - b[i]));
    return m;
}

/// Upstream cotangent for one persistence tuple.
struct TupleCotangent {
    double birth = 0.0;
    double death = 0.0;
};

/// Route per-tuple cotangents back to per-vertex filtration values: every
/// birth and every finite death is exactly one vertex's value (recorded as
/// provenance when the diagram was built); infinite deaths contribute
/// nothing. Exact ties were already resolved by the recorded provenance.
inline std::vector<double> diagram_value_grads(const PersistenceDiagram& d,
                                               const std::vector<TupleCotangent>& upstream,
                                               int n) {
    if (upstream.size() != d.pairs.size())
        throw std::invalid_argument("diagram_value_grads: cotangent count mismatch");
    std::vector<double> grad(n, 0.0);
    for (size_t i = 0; i < d.pairs.size(); ++i) {
        const auto& p = d.pairs[i];
        grad[p.birth_source] += upstream[i].birth;
        if (!p.essential) grad[p.death_source] += upstream[i].death;
    }
    return grad;
}

/// Gradients of the squared-embedding loss with respect to every filtration
/// weight and bias, by reverse-mode traversal of the stored trace.
struct FiltrationGrads {
    std::vector<std::vector<std::vector<double>>> w;  // [layer][filtration][pe_dim]
    std::vector<std::vector<double>> b;               // [layer][filtration]
};

inline FiltrationGrads filtration_gradients(const Graph& g, const PiPEParams& params,
                                            const ForwardTrace& tr) {
    const PiPEConfig& cfg = params.cfg;
    const int n = g.n, d = cfg.pe_dim, h = cfg.hidden, F = cfg.filtration_count;
    const int m = g.edge_count();

    FiltrationGrads grads;
    grads.w.assign(cfg.layers, std::vector<std::vector<double>>(F, std::vector<double>(d, 0.0)));
    grads.b.assign(cfg.layers, std::vector<double>(F, 0.0));

    // d(loss)/d(embedding) for loss = sum of squares
    std::vector<double> demb(tr.embedding.size());
    for (size_t i = 0; i < demb.size(); ++i) demb[i] = 2.0 * tr.embedding[i];
    std::vector<double> dcat_in = params.readout.backward(demb);
    std::vector<double> dsx(dcat_in.begin(), dcat_in.begin() + h);
    std::vector<double> dsp(dcat_in.begin() + h, dcat_in.begin() + h + d);
    std::vector<double> dtopo(dcat_in.begin() + h + d, dcat_in.end());

    std::vector<std::vector<double>> dx(n, dsx), dp(n, dsp);
    double topo_denom = static_cast<double>(cfg.layers) * n;

    for (int l = cfg.layers - 1; l >= 0; --l) {
        const auto& lay = params.layers[l];
        const auto& lt = tr.layers[l];
        std::vector<std::vector<double>> dr0(n, std::vector<double>(h, 0.0));
        std::vector<std::vector<double>> dr1(n, std::vector<double>(h, 0.0));
        std::vector<std::vector<double>> dp_cur(n, std::vector<double>(d, 0.0));
        std::vector<std::vector<double>> dx_cur(n, std::vector<double>(h, 0.0));
        for (int v = 0; v < n; ++v)
            for (int i = 0; i < h; ++i) {
                dr0[v][i] += dtopo[i] / topo_denom;
                dr1[v][i] += dtopo[h + i] / topo_denom;
            }
        // node update backward
        {
            std::vector<std::vector<double>> dgin(n);
            for (int v = 0; v < n; ++v) {
                std::vector<double> dpre(h);
                for (int i = 0; i < h; ++i) dpre[i] = lt.x_pre[v][i] > 0.0 ? dx[v][i] : 0.0;
                dgin[v] = lay.upd_x.backward(dpre);
            }
            // gin[v] = hcat[v] + sum of neighbor hcats
            for (int v = 0; v < n; ++v) {
                std::vector<double> dh = dgin[v];
                for (int u : g.adj[v])
                    for (size_t j = 0; j < dh.size(); ++j) dh[j] += dgin[u][j];
                for (int i = 0; i < h; ++i) dx_cur[v][i] += dh[i];
                for (int j = 0; j < d; ++j) dp_cur[v][j] += dh[h + j];
                for (int i = 0; i < h; ++i) dr0[v][i] += dh[h + d + i];
                for (int i = 0; i < h; ++i) dr1[v][i] += dh[h + d + h + i];
            }
        }
        // positional update backward
        {
            const int q = 2 * h + d;
            std::vector<std::vector<double>> dcat(n, std::vector<double>(q, 0.0));
            std::vector<std::vector<double>> dnbr(n);
            for (int v = 0; v < n; ++v) {
                std::vector<double> dpre(d);
                for (int j = 0; j < d; ++j) dpre[j] = lt.p_pre[v][j] > 0.0 ? dp[v][j] : 0.0;
                std::vector<double> din = lay.upd_p.backward(dpre);
                for (int j = 0; j < q; ++j) dcat[v][j] += din[j];
                dnbr[v].assign(din.begin() + q, din.end());
            }
            for (int v = 0; v < n; ++v)
                for (int u : g.adj[v])
                    for (int j = 0; j < q; ++j) dcat[u][j] += dnbr[v][j];
            for (int v = 0; v < n; ++v) {
                for (int i = 0; i < h; ++i) dr0[v][i] += dcat[v][i];
                for (int i = 0; i < h; ++i) dr1[v][i] += dcat[v][h + i];
                for (int j = 0; j < d; ++j) dp_cur[v][j] += dcat[v][2 * h + j];
            }
        }
        // vectorization backward into per-filtration value cotangents; the
        // class-averaged death/flag entries spread their cotangent uniformly
        // over the class before the provenance scatter
        std::vector<std::vector<double>> da(F, std::vector<double>(n, 0.0));
        {
            std::vector<std::vector<double>> din0(n);
            for (int v = 0; v < n; ++v) {
                std::vector<double> dpre(h);
                for (int i = 0; i < h; ++i) {
                    double t = std::tanh(lt.psi0_pre[v][i]);
                    dpre[i] = dr0[v][i] * (1.0 - t * t);
                }
                din0[v] = lay.psi0.backward(dpre);
            }
            for (int f = 0; f < F; ++f) {
                const auto& topo = lt.topo[f];
                std::vector<double> dclass_death(topo.vmembers.size(), 0.0);
                for (int v = 0; v < n; ++v) {
                    da[f][v] += din0[v][3 * f];  // birth entry reads a[v] itself
                    dclass_death[topo.vclass[v]] += din0[v][3 * f + 1];
                }
                for (size_t c = 0; c < topo.vmembers.size(); ++c) {
                    double share = dclass_death[c] / static_cast<double>(topo.vmembers[c].size());
                    if (share == 0.0) continue;
                    for (int v : topo.vmembers[c]) {
                        const auto& pr = lt.d0[f].pairs[v];
                        if (!pr.essential) da[f][pr.death_source] += share;
                    }
                }
            }
        }
        {
            std::vector<std::vector<double>> din1(m);
            for (int e = 0; e < m; ++e) {
                auto [u, v] = g.edges[e];
                std::vector<double> dpre(h);
                for (int i = 0; i < h; ++i) {
                    double t = std::tanh(lt.psi1_pre[e][i]);
                    dpre[i] = (dr1[u][i] + dr1[v][i]) * (1.0 - t * t);
                }
                din1[e] = lay.psi1.backward(dpre);
            }
            for (int f = 0; f < F; ++f) {
                const auto& topo = lt.topo[f];
                std::vector<double> dclass_death(topo.emembers.size(), 0.0);
                for (int e = 0; e < m; ++e) {
                    const auto& pr = lt.d1[f].pairs[topo.pair_of_edge[e]];
                    da[f][pr.birth_source] += din1[e][3 * f];
                    dclass_death[topo.eclass[e]] += din1[e][3 * f + 1];
                }
                for (size_t c = 0; c < topo.emembers.size(); ++c) {
                    double share = dclass_death[c] / static_cast<double>(topo.emembers[c].size());
                    if (share == 0.0) continue;
                    for (int e : topo.emembers[c]) {
                        const auto& pr = lt.d1[f].pairs[topo.pair_of_edge[e]];
                        if (!pr.essential) da[f][pr.death_source] += share;
                    }
                }
            }
        }
        // filtration backward
        for (int f = 0; f < F; ++f)
            for (int v = 0; v < n; ++v) {
                double a = lt.filt_a[f][v];
                double dz = da[f][v] * a * (1.0 - a);
                grads.b[l][f] += dz;
                for (int j = 0; j < d; ++j) {
                    grads.w[l][f][j] += dz * lt.p[v][j];
                    dp_cur[v][j] += dz * lay.filt_w[f][j];
                }
            }
        dx = std::move(dx_cur);
        dp = std::move(dp_cur);
    }
    return grads;
}

inline double loss_sum_squares(const std::vector<double>& emb) {
    double s = 0.0;
    for (double x : emb) s += x * x;
    return s;
}

/// Central finite differences of the squared-embedding loss against the
/// analytic filtration gradients. Degenerate traces (near-tied filtration
/// values or rectifier pre-activations inside the step size) reseed the
/// parameters, up to ten attempts. Exact value ties between vertices with
/// identical positional rows are stable under the probe and allowed.
inline double grad_check(const Graph& g, PiPEConfig cfg, uint64_t seed, double eps) {
    for (int attempt = 0; attempt < 10; ++attempt) {
        cfg.seed = seed + attempt;
        PiPEParams params = init_params(cfg);
        ForwardTrace tr = pipe_forward(g, params);
        bool degenerate = false;
        for (const auto& lt : tr.layers) {
            for (const auto& a : lt.filt_a) {
                std::vector<int> order(g.n);
                for (int v = 0; v < g.n; ++v) order[v] = v;
                std::sort(order.begin(), order.end(),
                          [&](int x, int y) { return a[x] < a[y]; });
                for (int i = 1; i < g.n; ++i) {
                    double gap = a[order[i]] - a[order[i - 1]];
                    if (gap == 0.0) {
                        if (lt.p[order[i]] != lt.p[order[i - 1]]) degenerate = true;
                    } else if (gap <= 10.0 * eps) {
                        degenerate = true;
                    }
                }
            }
            for (const auto& pre : lt.p_pre)
                for (double z : pre)
                    if (std::fabs(z) <= 100.0 * eps) degenerate = true;
            for (const auto& pre : lt.x_pre)
                for (double z : pre)
                    if (std::fabs(z) <= 100.0 * eps) degenerate = true;
        }
        if (degenerate) continue;
        FiltrationGrads an = filtration_gradients(g, params, tr);
        double max_rel = 0.0;
        auto probe = [&](double* slot, double analytic) {
            double orig = *slot;
            *slot = orig + eps;
            double lp = loss_sum_squares(pipe_forward(g, params).embedding);
            *slot = orig - eps;
            double lm = loss_sum_squares(pipe_forward(g, params).embedding);
            *slot = orig;
            double fd = (lp - lm) / (2.0 * eps);
            double denom = std::max(std::fabs(fd), std::fabs(analytic));
            if (denom < 1e-8) return;  // disconnected channel; both vanish
            max_rel = std::max(max_rel, std::fabs(fd - analytic) / std::max(denom, 1e-6));
        };
        for (int l = 0; l < cfg.layers; ++l)
            for (int f = 0; f < cfg.filtration_count; ++f) {
                for (int j = 0; j < cfg.pe_dim; ++j)
                    probe(&params.layers[l].filt_w[f][j], an.w[l][f][j]);
                probe(&params.layers[l].filt_b[f], an.b[l][f]);
            }
        return max_rel;
    }
    throw std::runtime_error("grad_check: degenerate filtration values after 10 reseeds");
}

}  // namespace ppe
