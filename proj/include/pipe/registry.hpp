#pragma once

#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "pipe/encode.hpp"
#include "pipe/graph.hpp"
#include "pipe/graph6.hpp"
#include "pipe/isomorphism.hpp"
#include "pipe/model.hpp"
#include "pipe/persist.hpp"
#include "pipe/reconstruct.hpp"
#include "pipe/report.hpp"
#include "pipe/wl.hpp"

namespace ppe {

/// Graphs that exist in the literature only as drawings are pinned down here
/// as graph6 strings, reconstructed by exhaustive search against tabulated
/// encoding matrices (see targets below). The search that regenerates this
/// cache lives in reconstruct.hpp and is exercised by the test suite.
namespace cache {
// six vertices: two squares sharing an edge / a square inscribed in a
// pentagon sharing three consecutive vertices
inline constexpr const char* kSixVertexA = "EFj?";
inline constexpr const char* kSixVertexB = "ELr?";
// ten vertices, degrees 3,3,2x8: two hexagons sharing an edge / two
// pentagons joined by a bridge edge
inline constexpr const char* kTenVertexA = "IsP@?_I@O";
inline constexpr const char* kTenVertexB = "IsP@?cG@G";
// the cospectral 4-regular pair on ten vertices
inline constexpr const char* kQuarticA = "I}hPGoJ@w";
inline constexpr const char* kQuarticB = "I}opGgJAw";
}  // namespace cache

/// Tabulated reference encodings (rounded to two decimals) that the cached
/// graphs are reconstructed from. The third walk column of the quartic pair
/// is known to be off by a factor of ten in its source and is matched by
/// value pattern only, never literally.
namespace targets {
inline const std::vector<std::vector<double>> kSixLapA = {
    {-0.50, -0.32}, {-0.50, 0.32}, {0, 0.53}, {0, -0.53}, {0.50, -0.32}, {0.50, 0.32}};
inline const std::vector<std::vector<double>> kSixLapB = {
    {-0.37, 0}, {-0.17, 0.62}, {-0.37, 0}, {-0.17, -0.62}, {0.58, -0.35}, {0.58, 0.35}};
inline const std::vector<std::vector<double>> kSixRwA = {
    {0, 0.41}, {0, 0.41}, {0, 0.44}, {0, 0.44}, {0, 0.41}, {0, 0.41}};
inline const std::vector<std::vector<double>> kSixRwB = {
    {0, 0.33}, {0, 0.50}, {0, 0.33}, {0, 0.50}, {0, 0.41}, {0, 0.41}};
inline const std::vector<std::vector<double>> kTenLapA = {
    {-0.42, -0.18}, {-0.42, 0.18}, {-0.26, 0.39}, {0.00, 0.34},   {0.26, 0.39},
    {0.42, 0.18},   {0.42, -0.18}, {0.26, -0.39}, {-0.00, -0.34}, {-0.26, -0.39}};
inline const std::vector<std::vector<double>> kTenLapB = {
    {-0.37, 0.35}, {-0.37, 0.35}, {-0.29, -0.05}, {-0.19, -0.49}, {-0.29, -0.05},
    {0.19, -0.49}, {0.29, -0.05}, {0.37, 0.35},   {0.37, 0.35},   {0.29, -0.05}};
inline const std::vector<std::vector<double>> kTenRwA = {
    {0, 0.50, 0, 0.35, 0}, {0, 0.50, 0, 0.35, 0}, {0, 0.41, 0, 0.28, 0},
    {0, 0.44, 0, 0.31, 0}, {0, 0.41, 0, 0.28, 0}, {0, 0.50, 0, 0.35, 0},
    {0, 0.50, 0, 0.35, 0}, {0, 0.41, 0, 0.28, 0}, {0, 0.44, 0, 0.31, 0},
    {0, 0.41, 0, 0.28, 0}};
inline const std::vector<std::vector<double>> kTenRwB = {
    {0, 0.50, 0, 0.35, 0.04}, {0, 0.50, 0, 0.35, 0.04}, {0, 0.41, 0, 0.28, 0.04},
    {0, 0.44, 0, 0.31, 0.04}, {0, 0.41, 0, 0.28, 0.04}, {0, 0.44, 0, 0.31, 0.04},
    {0, 0.41, 0, 0.28, 0.04}, {0, 0.50, 0, 0.35, 0.04}, {0, 0.50, 0, 0.35, 0.04},
    {0, 0.41, 0, 0.28, 0.04}};
inline const std::vector<std::vector<double>> kQuarticRw = {
    {0, 0.25, 0.62, 0.14}, {0, 0.25, 0.62, 0.14}, {0, 0.25, 0.62, 0.14},
    {0, 0.25, 0.93, 0.14}, {0, 0.25, 0.93, 0.14}, {0, 0.25, 0.62, 0.14},
    {0, 0.25, 0.62, 0.14}, {0, 0.25, 0.93, 0.14}, {0, 0.25, 0.62, 0.14},
    {0, 0.25, 0.93, 0.14}};
}  // namespace targets

namespace detail {

inline Graph random_graph_for_registry(Rng& rng, int n, double p) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.uniform() < p) edges.emplace_back(i, j);
    return build_graph(n, edges);
}

inline std::string fmt(double x) {
    std::ostringstream os;
    os.precision(10);
    os << x;
    return os.str();
}

inline ClaimResult claim(std::string text, bool asserted, bool pass, std::string measured) {
    return {std::move(text), asserted, pass, std::move(measured)};
}

inline ColorAssignment pe_colors(const PEMatrix& pe) { return pe.rows; }

// injective table over the union of distinct vector colors of both graphs,
// ascending or descending in lexicographic color order
inline FiltrationSpec union_table(const ColorAssignment& c1, const ColorAssignment& c2,
                                  bool ascending) {
    std::set<Color> uni(c1.begin(), c1.end());
    uni.insert(c2.begin(), c2.end());
    std::map<Color, double> table;
    int i = 0;
    int m = static_cast<int>(uni.size());
    for (const Color& c : uni) {
        table[c] = ascending ? 1.0 + i : 1.0 + (m - 1 - i);
        ++i;
    }
    return FiltrationSpec::tabulated(table);
}

inline bool diagrams0_equal_both_orders(const Graph& g1, const ColorAssignment& c1,
                                        const Graph& g2, const ColorAssignment& c2,
                                        double tol) {
    for (bool asc : {true, false}) {
        FiltrationSpec f = union_table(c1, c2, asc);
        if (!diagrams_equal(diagram0(g1, filtration_values(c1, f)),
                            diagram0(g2, filtration_values(c2, f)), tol))
            return false;
    }
    return true;
}

inline std::string degree_multiset(const Graph& g) {
    std::vector<int> d;
    for (int v = 0; v < g.n; ++v) d.push_back(g.degree(v));
    std::sort(d.begin(), d.end());
    std::string s;
    for (int x : d) s += std::to_string(x) + " ";
    return s;
}

enum class Separation { distinguished, undistinguished, inconclusive };

inline const char* to_string(Separation s) {
    switch (s) {
        case Separation::distinguished: return "distinguished";
        case Separation::undistinguished: return "undistinguished";
        default: return "inconclusive";
    }
}

/// Five-seed separation rule: distinguished if any seed separates the graph
/// embeddings by more than 1e-6, undistinguished if every seed agrees within
/// 1e-9, inconclusive otherwise.
template <typename Forward>
Separation embedding_separation(const Graph& g1, const Graph& g2, PiPEConfig cfg, uint64_t seed,
                                Forward&& forward, double* max_gap_out = nullptr) {
    SplitMix64 sm(seed ^ 0x5eedULL);
    double max_gap = 0.0;
    bool any_big = false, all_tiny = true;
    for (int trial = 0; trial < 5; ++trial) {
        cfg.seed = sm.next();
        PiPEParams params = init_params(cfg);
        double gap = embedding_gap(forward(g1, params).embedding, forward(g2, params).embedding);
        max_gap = std::max(max_gap, gap);
        if (gap > 1e-6) any_big = true;
        if (gap > 1e-9) all_tiny = false;
    }
    if (max_gap_out) *max_gap_out = max_gap;
    if (any_big) return Separation::distinguished;
    if (all_tiny) return Separation::undistinguished;
    return Separation::inconclusive;
}

inline PiPEConfig walk_model_config(int k) {
    PiPEConfig cfg;
    cfg.layers = 2;
    cfg.pe_dim = k;
    cfg.base_k = k;
    cfg.hidden = 8;
    cfg.filtration_count = 2;
    cfg.base_pe = PEMethod::rw;
    return cfg;
}

}  // namespace detail

struct Construction {
    std::string id;
    std::string summary;
    bool scalable = false;
};

inline const std::vector<Construction>& registry() {
    static const std::vector<Construction> entries = {
        {"prop31_s1", "six-vertex pair: equal component and cycle counts, distinct Laplacian encodings", false},
        {"prop31_s23", "triangles plus isolated vertices versus isolated vertices: equal leading spectra, different topology", true},
        {"prop32_s1", "six-vertex pair: equal component and cycle counts, distinct walk encodings", false},
        {"prop34_lap", "Laplacian-encoding tie broken by vertex-color persistence", true},
        {"prop34_rw", "one ten-cycle versus two five-cycles: equal walk encodings, different components", true},
        {"prop35_de", "cube versus two squares: distance encodings tie, persistence separates", true},
        {"prop36", "degree-blind pair: equal degree-filtration diagrams, distinct spectral encodings", false},
        {"prop41", "four-cycles versus six-cycles: topology-blind stack ties, persistence-informed stack separates", true},
        {"prop42", "four-cycles versus paths: dim-0 persistence over equal encodings ties, message passing separates", true},
        {"prop43", "cospectral 4-regular pair: walk encodings and one filtration order tie, tuple refinement separates", false},
        {"prop44", "projected stable tuple colors yield an empty color-separating set on refinement-distinguished pairs", false},
        {"lemma33", "unequal encoding multisets force unequal birth multisets under any injective filtration", false},
    };
    return entries;
}

inline Graph cached_graph(const char* g6) { return parse_graph6(g6); }

/// Deterministic builder for each registered pair; scale multiplies the
/// construction where the underlying family is parameterized.
inline std::pair<Graph, Graph> construction_pair(const std::string& id, int scale = 1) {
    if (scale < 1) throw std::invalid_argument("construction_pair: scale must be >= 1");
    if (id == "prop31_s1" || id == "prop32_s1")
        return {cached_graph(cache::kSixVertexA), cached_graph(cache::kSixVertexB)};
    if (id == "prop31_s23" || id == "prop34_lap") {
        Graph unit = disjoint_union({build_graph(1, {}), complete(3)});
        return {disjoint_copies(unit, scale), disjoint_copies(build_graph(1, {}), 4 * scale)};
    }
    if (id == "prop34_rw")
        return {disjoint_copies(cycle(10), scale),
                disjoint_copies(disjoint_union({cycle(5), cycle(5)}), scale)};
    if (id == "prop35_de")
        return {disjoint_copies(hypercube(3), scale),
                disjoint_copies(disjoint_union({hypercube(2), hypercube(2)}), scale)};
    if (id == "prop36")
        return {cached_graph(cache::kTenVertexA), cached_graph(cache::kTenVertexB)};
    if (id == "prop41")
        return {disjoint_copies(cycle(4), 3 * scale),
                disjoint_copies(disjoint_union({cycle(6), cycle(6)}), scale)};
    if (id == "prop42")
        return {disjoint_copies(cycle(4), scale), disjoint_copies(path(4), scale)};
    if (id == "prop43") return {cached_graph(cache::kQuarticA), cached_graph(cache::kQuarticB)};
    if (id == "prop44" || id == "lemma33") {
        // representative pair of the seeded corpora these entries evaluate
        return {cycle(6), disjoint_union({cycle(3), cycle(3)})};
    }
    throw std::invalid_argument("construction_pair: unknown id " + id);
}

namespace detail {

inline void eval_prop31_s1(std::vector<ClaimResult>& out) {
    auto [a, b] = construction_pair("prop31_s1");
    BettiPair ba = betti(a), bb = betti(b);
    out.push_back(claim("component counts equal", true, ba.beta0 == 1 && bb.beta0 == 1,
                        std::to_string(ba.beta0) + " vs " + std::to_string(bb.beta0)));
    out.push_back(claim("cycle ranks equal", true, ba.beta1 == bb.beta1,
                        std::to_string(ba.beta1) + " vs " + std::to_string(bb.beta1)));
    out.push_back(claim("degree multisets equal", true,
                        degree_multiset(a) == degree_multiset(b), degree_multiset(a)));
    MatrixTarget ta{PEMethod::lap, 2, true, targets::kSixLapA, 0.02, {}};
    MatrixTarget tb{PEMethod::lap, 2, true, targets::kSixLapB, 0.02, {}};
    out.push_back(claim("spectral rows match tabulated matrices within 0.02", true,
                        graph_matches_target(a, ta) && graph_matches_target(b, tb), ""));
    bool raw_differ =
        !pe_multiset_equal(lap_pe(a, 2, PEPolicy::raw, true), lap_pe(b, 2, PEPolicy::raw, true), 1e-8);
    out.push_back(claim("spectral encoding multisets differ (raw, two nontrivial pairs)", true,
                        raw_differ, ""));
    bool proj_differ = !pe_multiset_equal(lap_pe(a, 2, PEPolicy::eigenspace_projection),
                                          lap_pe(b, 2, PEPolicy::eigenspace_projection), 1e-8);
    out.push_back(claim("spectral encoding multisets differ (eigenspace projection)", true,
                        proj_differ, ""));
}

inline void eval_prop31_s23(std::vector<ClaimResult>& out, int scale) {
    auto [a, b] = construction_pair("prop31_s23", scale);
    BettiPair ba = betti(a), bb = betti(b);
    out.push_back(claim("component counts differ", true, ba.beta0 != bb.beta0,
                        std::to_string(ba.beta0) + " vs " + std::to_string(bb.beta0)));
    out.push_back(claim("cycle ranks differ", true, ba.beta1 != bb.beta1,
                        std::to_string(ba.beta1) + " vs " + std::to_string(bb.beta1)));
    int k = 2 * scale;
    auto ea = eigh(normalized_laplacian(a)).values;
    auto eb = eigh(normalized_laplacian(b)).values;
    bool prefix_equal = true;
    for (int i = 0; i < k; ++i)
        prefix_equal = prefix_equal && std::fabs(ea[i] - eb[i]) <= 1e-8 && std::fabs(ea[i]) <= 1e-8;
    out.push_back(claim("the " + std::to_string(k) + " smallest eigenvalues coincide (all zero)",
                        true, prefix_equal, ""));
    // the eigenvector side of the encodings is not blind here: projections
    // onto the zero eigenspace read off component structure
    bool proj_equal = pe_multiset_equal(lap_pe(a, k, PEPolicy::eigenspace_projection),
                                        lap_pe(b, k, PEPolicy::eigenspace_projection), 1e-8);
    out.push_back(claim("projection encodings coincide", false, proj_equal,
                        proj_equal ? "equal" : "differ (component structure leaks through the zero eigenspace)"));
}

inline void eval_prop32_s1(std::vector<ClaimResult>& out) {
    auto [a, b] = construction_pair("prop32_s1");
    BettiPair ba = betti(a), bb = betti(b);
    out.push_back(claim("component counts equal", true, ba.beta0 == bb.beta0, ""));
    out.push_back(claim("cycle ranks equal", true, ba.beta1 == bb.beta1, ""));
    MatrixTarget ta{PEMethod::rw, 2, false, targets::kSixRwA, 0.02, {}};
    MatrixTarget tb{PEMethod::rw, 2, false, targets::kSixRwB, 0.02, {}};
    out.push_back(claim("walk rows match tabulated matrices within 0.02", true,
                        graph_matches_target(a, ta) && graph_matches_target(b, tb), ""));
    out.push_back(claim("walk encoding multisets differ", true,
                        !pe_multiset_equal(rw_pe(a, 2), rw_pe(b, 2), 1e-8), ""));
}

inline void eval_prop34_lap(std::vector<ClaimResult>& out, int scale) {
    auto [a, b] = construction_pair("prop34_lap", scale);
    int k = 2 * scale;
    auto ea = eigh(normalized_laplacian(a)).values;
    auto eb = eigh(normalized_laplacian(b)).values;
    bool prefix_equal = true;
    for (int i = 0; i < k; ++i) prefix_equal = prefix_equal && std::fabs(ea[i] - eb[i]) <= 1e-8;
    out.push_back(claim("leading eigenvalues coincide", true, prefix_equal, ""));
    ColorAssignment ca = pe_colors(lap_pe(a, k, PEPolicy::eigenspace_projection));
    ColorAssignment cb = pe_colors(lap_pe(b, k, PEPolicy::eigenspace_projection));
    bool differ = !diagrams0_equal_both_orders(a, ca, b, cb, 1e-8);
    out.push_back(claim("dim-0 diagrams over encoding colors differ for injective filtrations",
                        true, differ, ""));
    int ia = diagram0(a, filtration_values(ca, union_table(ca, cb, true))).essential_count();
    int ib = diagram0(b, filtration_values(cb, union_table(ca, cb, true))).essential_count();
    out.push_back(claim("essential counts equal component counts", true,
                        ia == betti(a).beta0 && ib == betti(b).beta0,
                        std::to_string(ia) + " vs " + std::to_string(ib)));
}

inline void eval_prop34_rw(std::vector<ClaimResult>& out, int scale) {
    auto [a, b] = construction_pair("prop34_rw", scale);
    PEMatrix pa = rw_pe(a, 4), pb = rw_pe(b, 4);
    bool rows_exact = true;
    for (const auto& row : pa.rows)
        rows_exact = rows_exact && row[0] * 16 == 0 && row[1] * 16 == 8 && row[2] * 16 == 0 &&
                     row[3] * 16 == 6;
    out.push_back(claim("walk rows are exactly (0, 1/2, 0, 3/8), checked at scale 16", true,
                        rows_exact, ""));
    out.push_back(
        claim("walk encoding multisets equal at zero tolerance", true,
              pe_multiset_equal(pa, pb, 0.0), ""));
    BettiPair ba = betti(a), bb = betti(b);
    out.push_back(claim("component counts differ", true, ba.beta0 != bb.beta0,
                        std::to_string(ba.beta0) + " vs " + std::to_string(bb.beta0)));
    out.push_back(claim("cycle ranks differ", true, ba.beta1 != bb.beta1, ""));
    bool differ = !diagrams0_equal_both_orders(a, pe_colors(pa), b, pe_colors(pb), 1e-8);
    out.push_back(claim("dim-0 diagrams over the shared walk colors differ", true, differ, ""));
}

inline void eval_prop35_de(std::vector<ClaimResult>& out, int scale) {
    auto [a, b] = construction_pair("prop35_de", scale);
    out.push_back(claim("component counts differ", true, betti(a).beta0 != betti(b).beta0, ""));
    std::vector<int> all_a(a.n), all_b(b.n);
    for (int v = 0; v < a.n; ++v) all_a[v] = v;
    for (int v = 0; v < b.n; ++v) all_b[v] = v;
    PEMatrix da = distance_pe(a, all_a, 2, DistanceMode::rw_vector);
    PEMatrix db = distance_pe(b, all_b, 2, DistanceMode::rw_vector);
    out.push_back(claim("distance encodings equal (walk vectors pooled over all single anchors)",
                        true, pe_multiset_equal(da, db, 1e-8), ""));
    PEMatrix ga = distance_pe(a, all_a, 2, DistanceMode::pagerank, {1.0, 0.5});
    PEMatrix gb = distance_pe(b, all_b, 2, DistanceMode::pagerank, {1.0, 0.5});
    out.push_back(claim("distance encodings equal (walk-polynomial scores pooled over anchors)",
                        true, pe_multiset_equal(ga, gb, 1e-8), ""));
    PEMatrix sa = distance_pe(a, all_a, 1, DistanceMode::shortest_path);
    PEMatrix sb = distance_pe(b, all_b, 1, DistanceMode::shortest_path);
    bool sp_equal = pe_multiset_equal(sa, sb, 1e-8);
    out.push_back(claim("hop-distance variant", false, sp_equal,
                        sp_equal ? "equal" : "differ (unreachable anchors are visible)"));
    // single-anchor reading, quantified over every anchor choice
    bool single_equal = true;
    for (int s = 0; s < a.n && single_equal; ++s)
        for (int t = 0; t < b.n && single_equal; ++t)
            single_equal = pe_multiset_equal(distance_pe(a, {s}, 2, DistanceMode::rw_vector),
                                             distance_pe(b, {t}, 2, DistanceMode::rw_vector), 1e-8);
    out.push_back(claim("single-anchor walk-vector variant", false, single_equal,
                        single_equal ? "equal for every anchor choice" : "differ for some anchor choice"));
    bool differ = !diagrams0_equal_both_orders(a, pe_colors(da), b, pe_colors(db), 1e-8);
    out.push_back(claim("dim-0 diagrams over the shared distance colors differ", true, differ, ""));
}

inline std::multiset<std::pair<double, double>> finite_multiset(const PersistenceDiagram& d) {
    std::multiset<std::pair<double, double>> m;
    for (const auto& p : d.pairs)
        if (!p.essential) m.emplace(p.birth, p.death);
    return m;
}

inline std::multiset<double> essential_births(const PersistenceDiagram& d) {
    std::multiset<double> m;
    for (const auto& p : d.pairs)
        if (p.essential) m.insert(p.birth);
    return m;
}

inline std::string diagram_to_string(const PersistenceDiagram& d) {
    std::ostringstream os;
    std::map<std::pair<double, double>, int> fin;
    std::map<double, int> ess;
    for (const auto& p : d.pairs) {
        if (p.essential)
            ++ess[p.birth];
        else
            ++fin[{p.birth, p.death}];
    }
    for (auto& [bd, c] : fin) os << c << "x(" << bd.first << "," << bd.second << ") ";
    for (auto& [b, c] : ess) os << c << "x(" << b << ",inf) ";
    return os.str();
}

inline void eval_prop36(std::vector<ClaimResult>& out) {
    auto [a, b] = construction_pair("prop36");
    out.push_back(claim("degree multisets equal", true,
                        degree_multiset(a) == degree_multiset(b), degree_multiset(a)));
    MatrixTarget la{PEMethod::lap, 2, true, targets::kTenLapA, 0.02, {}};
    MatrixTarget lb{PEMethod::lap, 2, true, targets::kTenLapB, 0.02, {}};
    MatrixTarget ra{PEMethod::rw, 5, false, targets::kTenRwA, 0.02, {}};
    MatrixTarget rb{PEMethod::rw, 5, false, targets::kTenRwB, 0.02, {}};
    out.push_back(claim("rows match the tabulated matrices within 0.02", true,
                        graph_matches_target(a, la) && graph_matches_target(b, lb) &&
                            graph_matches_target(a, ra) && graph_matches_target(b, rb),
                        ""));
    // degree filtrations in both value orders: gamma = f(2), alpha = f(3)
    for (bool low_degree_first : {false, true}) {
        double gamma = low_degree_first ? 0.25 : 0.75;
        double alpha = low_degree_first ? 0.75 : 0.25;
        auto spec = FiltrationSpec::tabulated({{{2.0}, gamma}, {{3.0}, alpha}});
        PersistenceDiagram d0a = diagram0(a, filtration_values(degree_colors(a), spec));
        PersistenceDiagram d0b = diagram0(b, filtration_values(degree_colors(b), spec));
        std::string order = low_degree_first ? "f(2) < f(3)" : "f(3) < f(2)";
        out.push_back(claim("degree-filtration dim-0 diagrams equal, " + order, true,
                            diagrams_equal(d0a, d0b, 0.0), diagram_to_string(d0a)));
        // tabulated shapes: one immediate death and one essential tuple in
        // the early class, the other eight tuples dying at their own value
        PersistenceDiagram expected;
        expected.dim = 0;
        auto push = [&](double birth, double death, bool essential) {
            PersistencePair p;
            p.birth = birth;
            p.death = death;
            p.essential = essential;
            expected.pairs.push_back(p);
        };
        if (!low_degree_first) {
            push(alpha, alpha, false);
            push(alpha, 0, true);
            for (int i = 0; i < 8; ++i) push(gamma, gamma, false);
        } else {
            for (int i = 0; i < 8; ++i) push(alpha, alpha, false);
            push(gamma, 0, true);
            push(gamma, gamma, false);
        }
        bool match = diagrams_equal(d0a, expected, 0.0);
        out.push_back(claim("diagram equals the tabulated multiset shape, " + order,
                            !low_degree_first, match,
                            match ? "" : "computed " + diagram_to_string(d0a) +
                                             "; tabulated " + diagram_to_string(expected)));
    }
    ColorAssignment ca = pe_colors(lap_pe(a, 2, PEPolicy::eigenspace_projection));
    ColorAssignment cb = pe_colors(lap_pe(b, 2, PEPolicy::eigenspace_projection));
    out.push_back(claim("dim-0 diagrams over spectral colors differ", true,
                        !diagrams0_equal_both_orders(a, ca, b, cb, 1e-8), ""));
    out.push_back(claim("five-step walk encodings differ", true,
                        !pe_multiset_equal(rw_pe(a, 5), rw_pe(b, 5), 1e-8), ""));
    bool four_equal = pe_multiset_equal(rw_pe(a, 4), rw_pe(b, 4), 1e-8);
    out.push_back(claim("four-step walk encodings", false, four_equal,
                        four_equal ? "equal (five steps are required)" : "differ"));
}

inline void eval_prop41(std::vector<ClaimResult>& out, int scale, uint64_t seed) {
    auto [a, b] = construction_pair("prop41", scale);
    out.push_back(claim("refinement histograms equal", true, !wl1_distinguish(a, b), ""));
    PEMatrix pa = rw_pe(a, 3), pb = rw_pe(b, 3);
    out.push_back(claim("walk encodings equal up to three steps", true,
                        pe_multiset_equal(pa, pb, 0.0), ""));
    auto ea = eigh(normalized_laplacian(a)).values;
    auto eb = eigh(normalized_laplacian(b)).values;
    bool prefix = std::fabs(ea[0] - eb[0]) <= 1e-8 && std::fabs(ea[1] - eb[1]) <= 1e-8;
    out.push_back(claim("two smallest eigenvalues coincide (both zero)", true, prefix, ""));
    bool proj_equal = pe_multiset_equal(lap_pe(a, 2, PEPolicy::eigenspace_projection),
                                        lap_pe(b, 2, PEPolicy::eigenspace_projection), 1e-8);
    out.push_back(claim("projection encodings", false, proj_equal,
                        proj_equal ? "equal" : "differ (zero-eigenspace projections see component size)"));
    out.push_back(claim("dim-0 diagrams over the walk colors differ", true,
                        !diagrams0_equal_both_orders(a, pe_colors(pa), b, pe_colors(pb), 1e-8),
                        ""));
    PiPEConfig cfg = walk_model_config(3);
    double lspe_gap = 0.0;
    Separation lspe = embedding_separation(a, b, cfg, seed,
                                           [](const Graph& g, const PiPEParams& p) {
                                               return lspe_forward(g, p);
                                           },
                                           &lspe_gap);
    out.push_back(claim("topology-blind embeddings agree within 1e-9 across five seeds", true,
                        lspe == Separation::undistinguished, "max gap " + fmt(lspe_gap)));
    double pipe_gap = 0.0;
    Separation pipe = embedding_separation(a, b, cfg, seed,
                                           [](const Graph& g, const PiPEParams& p) {
                                               return pipe_forward(g, p);
                                           },
                                           &pipe_gap);
    out.push_back(claim("persistence-informed embeddings separate by more than 1e-6", true,
                        pipe == Separation::distinguished, "max gap " + fmt(pipe_gap)));
}

inline void eval_prop42(std::vector<ClaimResult>& out, int scale, uint64_t seed) {
    auto [a, b] = construction_pair("prop42", scale);
    out.push_back(claim("component counts equal", true, betti(a).beta0 == betti(b).beta0, ""));
    PEMatrix pa = rw_pe(a, 1), pb = rw_pe(b, 1);
    out.push_back(claim("one-step walk encodings equal (all zero)", true,
                        pe_multiset_equal(pa, pb, 0.0), ""));
    out.push_back(claim("dim-0 diagrams over those colors equal", true,
                        diagrams0_equal_both_orders(a, pe_colors(pa), b, pe_colors(pb), 0.0),
                        ""));
    {
        FiltrationSpec f = union_table(pe_colors(pa), pe_colors(pb), true);
        bool d1_equal = diagrams_equal(diagram1(a, filtration_values(pe_colors(pa), f)),
                                       diagram1(b, filtration_values(pe_colors(pb), f)), 0.0);
        out.push_back(claim("dim-1 diagrams over those colors", false, d1_equal,
                            d1_equal ? "equal" : "differ (cycle tuples expose the four-cycles)"));
    }
    out.push_back(claim("degree multisets differ", true,
                        degree_multiset(a) != degree_multiset(b),
                        degree_multiset(a) + "vs " + degree_multiset(b)));
    PiPEConfig cfg = walk_model_config(1);
    double pipe_gap = 0.0;
    Separation pipe = embedding_separation(a, b, cfg, seed,
                                           [](const Graph& g, const PiPEParams& p) {
                                               return pipe_forward(g, p);
                                           },
                                           &pipe_gap);
    out.push_back(claim("persistence-informed embeddings separate by more than 1e-6", true,
                        pipe == Separation::distinguished, "max gap " + fmt(pipe_gap)));
    double lspe_gap = 0.0;
    Separation lspe = embedding_separation(a, b, cfg, seed,
                                           [](const Graph& g, const PiPEParams& p) {
                                               return lspe_forward(g, p);
                                           },
                                           &lspe_gap);
    out.push_back(claim("topology-blind embeddings", false, true,
                        std::string(to_string(lspe)) + " via node degrees, max gap " +
                            fmt(lspe_gap)));
}

inline void eval_prop43(std::vector<ClaimResult>& out, uint64_t seed) {
    auto [a, b] = construction_pair("prop43");
    bool regular = true;
    for (int v = 0; v < a.n; ++v) regular = regular && a.degree(v) == 4 && b.degree(v) == 4;
    out.push_back(claim("both graphs are 4-regular on ten vertices", true,
                        regular && a.n == 10 && b.n == 10, ""));
    out.push_back(claim("adjacency spectra coincide exactly", true,
                        adjacency_charpoly(a) == adjacency_charpoly(b), ""));
    out.push_back(claim("graphs are not isomorphic", true, !are_isomorphic(a, b), ""));
    out.push_back(claim("refinement histograms equal", true, !wl1_distinguish(a, b), ""));
    out.push_back(claim("two-dimensional tuple refinement distinguishes the pair", true,
                        kfwl_distinguish(a, b, 2), ""));
    PEMatrix pa = rw_pe(a, 4), pb = rw_pe(b, 4);
    out.push_back(claim("walk encoding multisets equal at zero tolerance", true,
                        pe_multiset_equal(pa, pb, 0.0), ""));
    MatrixTarget t{PEMethod::rw, 4, false, targets::kQuarticRw, 0.02, {0, 1, 3}};
    out.push_back(claim("walk rows match the tabulated matrix within 0.02 (columns 1, 2, 4)",
                        true, graph_matches_target(a, t) && graph_matches_target(b, t), ""));
    {
        std::set<double> third;
        for (const auto& r : pa.rows) third.insert(r[2]);
        std::string measured;
        for (double x : third) measured += fmt(x) + " ";
        out.push_back(claim("third tabulated column (0.62 / 0.93) against computed values", false,
                            false,
                            "computed " + measured + "- literal values mismatch by a factor of ten"));
    }
    // the two walk-color classes in both graphs, filtered in both orders
    bool equal_rich_first = true, equal_poor_first = true;
    std::string rich_measured;
    for (bool rich_first : {true, false}) {
        ColorAssignment ca = pe_colors(pa), cb = pe_colors(pb);
        FiltrationSpec f = union_table(ca, cb, !rich_first);  // rich row sorts last
        auto va = filtration_values(ca, f);
        auto vb = filtration_values(cb, f);
        bool eq = diagrams_equal(diagram0(a, va), diagram0(b, vb), 0.0) &&
                  diagrams_equal(diagram1(a, va), diagram1(b, vb), 0.0);
        if (rich_first) {
            equal_rich_first = eq;
            rich_measured = diagram_to_string(diagram0(a, va));
        } else {
            equal_poor_first = eq;
        }
    }
    out.push_back(claim(
        "dim-0 and dim-1 diagrams over walk colors equal when the triangle-rich class enters first",
        true, equal_rich_first, rich_measured));
    out.push_back(claim("diagram equality under the opposite filtration order", false,
                        equal_poor_first,
                        equal_poor_first ? "equal" : "differ (the triangle-poor class induces a "
                                                     "different component count in the two graphs)"));
    PiPEConfig cfg = walk_model_config(4);
    double gap = 0.0;
    Separation pipe = embedding_separation(a, b, cfg, seed,
                                           [](const Graph& g, const PiPEParams& p) {
                                               return pipe_forward(g, p);
                                           },
                                           &gap);
    out.push_back(claim("full walk-based embeddings across five seeds", false, true,
                        std::string(to_string(pipe)) + ", max gap " + fmt(gap)));
}

inline void eval_prop44(std::vector<ClaimResult>& out, uint64_t seed) {
    Rng rng(seed ^ 0x44ULL);
    int found = 0, separated = 0, tried = 0;
    while (found < 50 && tried < 4000) {
        ++tried;
        Graph g = random_graph_for_registry(rng, 8, 0.4);
        Graph h = random_graph_for_registry(rng, 8, 0.4);
        if (!kfwl_distinguish(g, h, 2)) continue;
        ++found;
        auto [tg, th] = kfwl_pair(g, h, 2);
        auto [pg, ph] = kfwl_node_projection_pair(g, tg, h, th);
        if (is_color_separating(g, int_colors(pg), h, int_colors(ph), {})) ++separated;
    }
    out.push_back(claim(
        "projected colors give an empty color-separating set for every distinguished pair", true,
        found == 50 && separated == found,
        std::to_string(separated) + " of " + std::to_string(found) + " pairs"));
}

inline void eval_lemma33(std::vector<ClaimResult>& out, uint64_t seed) {
    Rng rng(seed ^ 0x33ULL);
    int usable = 0, held = 0;
    while (usable < 20) {
        Graph g = random_graph_for_registry(rng, 5 + static_cast<int>(rng.below(3)), 0.4);
        Graph h = random_graph_for_registry(rng, g.n, 0.4);
        PEMatrix pg = rw_pe(g, 3), ph = rw_pe(h, 3);
        if (pe_multiset_equal(pg, ph, 1e-8)) continue;
        ++usable;
        bool all_differ = true;
        for (bool asc : {true, false}) {
            FiltrationSpec f = union_table(pe_colors(pg), pe_colors(ph), asc);
            auto dg = diagram0(g, filtration_values(pe_colors(pg), f));
            auto dh = diagram0(h, filtration_values(pe_colors(ph), f));
            std::multiset<double> bg, bh;
            for (const auto& p : dg.pairs) bg.insert(p.birth);
            for (const auto& p : dh.pairs) bh.insert(p.birth);
            all_differ = all_differ && bg != bh;
        }
        if (all_differ) ++held;
    }
    out.push_back(claim(
        "unequal encoding multisets give unequal dim-0 birth multisets under injective filtrations",
        true, held == usable, std::to_string(held) + " of " + std::to_string(usable) + " pairs"));
}

}  // namespace detail

/// Evaluate every claim of one registered construction. Failures are
/// verdicts, not errors; recorded (non-asserted) entries never gate.
inline std::vector<ClaimResult> reproduce(const std::string& id, int scale = 1,
                                          uint64_t seed = 0) {
    std::vector<ClaimResult> out;
    if (id == "prop31_s1")
        detail::eval_prop31_s1(out);
    else if (id == "prop31_s23")
        detail::eval_prop31_s23(out, scale);
    else if (id == "prop32_s1")
        detail::eval_prop32_s1(out);
    else if (id == "prop34_lap")
        detail::eval_prop34_lap(out, scale);
    else if (id == "prop34_rw")
        detail::eval_prop34_rw(out, scale);
    else if (id == "prop35_de")
        detail::eval_prop35_de(out, scale);
    else if (id == "prop36")
        detail::eval_prop36(out);
    else if (id == "prop41")
        detail::eval_prop41(out, scale, seed);
    else if (id == "prop42")
        detail::eval_prop42(out, scale, seed);
    else if (id == "prop43")
        detail::eval_prop43(out, seed);
    else if (id == "prop44")
        detail::eval_prop44(out, seed);
    else if (id == "lemma33")
        detail::eval_lemma33(out, seed);
    else
        throw std::invalid_argument("reproduce: unknown id " + id);
    return out;
}

inline Report reproduce_all(int scale = 1, uint64_t seed = 0) {
    Report r;
    r.seed = seed;
    for (const auto& c : registry())
        for (const auto& cr : reproduce(c.id, c.scalable ? scale : 1, seed)) r.add(c.id, cr);
    return r;
}

}  // namespace ppe
