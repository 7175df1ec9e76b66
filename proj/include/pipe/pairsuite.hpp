#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "pipe/encode.hpp"
#include "pipe/graph.hpp"
#include "pipe/model.hpp"
#include "pipe/persist.hpp"
#include "pipe/registry.hpp"
#include "pipe/report.hpp"

namespace ppe {

/// Per-method outcome over a corpus of graph pairs.
struct PairMethodResult {
    std::string method;
    std::vector<bool> distinguished;  // per pair
    int inconclusive = 0;

    int count() const {
        int c = 0;
        for (bool b : distinguished) c += b ? 1 : 0;
        return c;
    }
};

struct PairSuiteResult {
    int pairs = 0;
    std::vector<PairMethodResult> methods;
    bool monotone = true;  // distinguished sets nest in method order

    const PairMethodResult* find(const std::string& name) const {
        for (const auto& m : methods)
            if (m.method == name) return &m;
        return nullptr;
    }
};

namespace detail {

inline bool ph_distinguish(const Graph& a, const Graph& b, const ColorAssignment& ca,
                           const ColorAssignment& cb) {
    for (bool asc : {true, false}) {
        FiltrationSpec f = union_table(ca, cb, asc);
        auto va = filtration_values(ca, f);
        auto vb = filtration_values(cb, f);
        if (!diagrams_equal(diagram0(a, va), diagram0(b, vb), 1e-8)) return true;
        if (!diagrams_equal(diagram1(a, va), diagram1(b, vb), 1e-8)) return true;
    }
    return false;
}

}  // namespace detail

/// Evaluate distinguishing power over consecutive pairs of graphs.
/// Methods: "ph" compares dim-0/1 diagrams under the degree filtration,
/// "ph_lpe" under spectral-projection colors, "pipe" compares seeded
/// persistence-informed embeddings under the five-seed rule. Verdicts are
/// symmetric in pair order and invariant under relabeling.
inline PairSuiteResult pair_suite(const std::vector<Graph>& graphs,
                                  const std::vector<std::string>& methods, uint64_t seed) {
    if (graphs.size() % 2 != 0)
        throw std::invalid_argument("pair_suite: odd number of graphs; expected pairs");
    PairSuiteResult res;
    res.pairs = static_cast<int>(graphs.size() / 2);
    for (const std::string& method : methods) {
        PairMethodResult mr;
        mr.method = method;
        for (int i = 0; i < res.pairs; ++i) {
            const Graph& a = graphs[2 * i];
            const Graph& b = graphs[2 * i + 1];
            bool dist = false;
            if (a.n != b.n || a.edge_count() != b.edge_count()) {
                // different sizes are trivially separable by every method here
                dist = true;
            } else if (method == "ph") {
                dist = detail::ph_distinguish(a, b, degree_colors(a), degree_colors(b));
            } else if (method == "ph_lpe") {
                int k = std::min(2, std::min(a.n, b.n));
                ColorAssignment ca = lap_pe(a, k, PEPolicy::eigenspace_projection).rows;
                ColorAssignment cb = lap_pe(b, k, PEPolicy::eigenspace_projection).rows;
                if (ca[0].size() != cb[0].size())
                    dist = true;  // different eigenvalue group structure
                else
                    dist = detail::ph_distinguish(a, b, ca, cb);
            } else if (method == "pipe") {
                PiPEConfig cfg;
                cfg.layers = 2;
                cfg.base_pe = PEMethod::lap;
                cfg.base_k = 2;
                cfg.pe_dim = 2;
                cfg.hidden = 8;
                cfg.filtration_count = 2;
                double gap = 0.0;
                auto verdict = detail::embedding_separation(
                    a, b, cfg, seed,
                    [](const Graph& g, const PiPEParams& p) { return pipe_forward(g, p); },
                    &gap);
                dist = verdict == detail::Separation::distinguished;
                if (verdict == detail::Separation::inconclusive) ++mr.inconclusive;
            } else {
                throw std::invalid_argument("pair_suite: unknown method " + method);
            }
            mr.distinguished.push_back(dist);
        }
        res.methods.push_back(std::move(mr));
    }
    // inclusion of distinguished sets along the canonical method order
    std::vector<std::string> order = {"ph", "ph_lpe", "pipe"};
    for (size_t i = 0; i + 1 < order.size(); ++i) {
        const auto* lo = res.find(order[i]);
        const auto* hi = res.find(order[i + 1]);
        if (!lo || !hi) continue;
        for (int p = 0; p < res.pairs; ++p)
            if (lo->distinguished[p] && !hi->distinguished[p]) res.monotone = false;
    }
    return res;
}

inline Report pair_suite_report(const PairSuiteResult& res, uint64_t seed) {
    Report r;
    r.seed = seed;
    for (const auto& m : res.methods) {
        ClaimResult c;
        c.claim = "fraction distinguished by " + m.method;
        c.asserted = false;
        c.pass = true;
        c.measured = std::to_string(m.count()) + "/" + std::to_string(res.pairs);
        if (m.inconclusive > 0)
            c.measured += " (" + std::to_string(m.inconclusive) + " inconclusive)";
        r.add("pairs", c);
    }
    ClaimResult mono;
    mono.claim = "distinguished sets nest: ph within ph_lpe within pipe";
    mono.asserted = true;
    mono.pass = res.monotone;
    r.add("pairs", mono);
    return r;
}

}  // namespace ppe
