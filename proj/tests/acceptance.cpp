// Acceptance suite: one line per criterion. Criteria marked "expected fail"
// reproduce tabulated values that are internally inconsistent in their
// source; they are implemented faithfully, report their true outcome, and
// the suite requires that outcome to stay exactly as documented.
#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "pipe/encode.hpp"
#include "pipe/graph6.hpp"
#include "pipe/model.hpp"
#include "pipe/pairsuite.hpp"
#include "pipe/persist.hpp"
#include "pipe/registry.hpp"
#include "pipe/wl.hpp"

using namespace ppe;

namespace {

int failures = 0;

void line(const std::string& name, bool pass, const std::string& detail = "",
          bool expected_fail = false) {
    const char* tag;
    if (expected_fail)
        tag = pass ? "FAIL(unexpected pass)" : "FAIL(expected)";
    else
        tag = pass ? "PASS" : "FAIL";
    std::printf("[%s] %s%s%s\n", tag, name.c_str(), detail.empty() ? "" : " - ",
                detail.c_str());
    if (expected_fail ? pass : !pass) ++failures;
}

Graph seeded_graph(Rng& rng, int n, double p) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.uniform() < p) edges.emplace_back(i, j);
    return build_graph(n, edges);
}

std::vector<int> seeded_permutation(Rng& rng, int n) {
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    for (int i = n - 1; i > 0; --i) std::swap(p[i], p[rng.below(i + 1)]);
    return p;
}

// independent threshold-sweep oracle for dim-0 death multisets
std::multiset<double> sweep_deaths(const Graph& g, const std::vector<double>& values) {
    std::set<double> levels(values.begin(), values.end());
    std::multiset<double> deaths;
    int live = 0;
    for (double w : levels) {
        std::vector<int> keep, id(g.n, -1);
        for (int v = 0; v < g.n; ++v)
            if (values[v] <= w) {
                id[v] = static_cast<int>(keep.size());
                keep.push_back(v);
            }
        std::vector<std::pair<int, int>> edges;
        for (auto [u, v] : g.edges)
            if (id[u] >= 0 && id[v] >= 0) edges.emplace_back(id[u], id[v]);
        int comps = betti(build_graph(static_cast<int>(keep.size()), edges)).beta0;
        int births = 0;
        for (int v = 0; v < g.n; ++v) births += values[v] == w ? 1 : 0;
        for (int k = 0; k < live + births - comps; ++k) deaths.insert(w);
        live = comps;
    }
    return deaths;
}

void criterion1() {
    auto start = std::chrono::steady_clock::now();
    Report report = reproduce_all(1, 0);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    int asserted = 0, passed = 0;
    for (const auto& e : report.entries) {
        if (e.verdict == "info") continue;
        ++asserted;
        passed += e.verdict == "pass" ? 1 : 0;
    }
    line("criterion 1: proposition suite passes every registered claim under 60 s",
         report.all_pass() && secs < 60.0,
         std::to_string(passed) + "/" + std::to_string(asserted) + " claims in " +
             std::to_string(secs) + " s");
}

void criterion2() {
    PEMatrix a = rw_pe(cycle(10), 4);
    bool exact = true;
    for (const auto& row : a.rows)
        exact = exact && row[0] * 16 == 0.0 && row[1] * 16 == 8.0 && row[2] * 16 == 0.0 &&
                row[3] * 16 == 6.0;
    PEMatrix b = rw_pe(disjoint_union({cycle(5), cycle(5)}), 4);
    bool multiset = pe_multiset_equal(a, b, 0.0);
    line("criterion 2: ten-cycle walk rows are exactly (0, .5, 0, .375); pair multiset ties at "
         "zero tolerance",
         exact && multiset);
}

void criterion3() {
    auto [a, b] = construction_pair("prop36");
    bool equal_both = true, lap_differ = false;
    bool shape1 = false, shape2 = false;
    for (bool low_first : {false, true}) {
        double gamma = low_first ? 0.25 : 0.75;  // value of degree-2 vertices
        double alpha = low_first ? 0.75 : 0.25;  // value of degree-3 vertices
        auto spec = FiltrationSpec::tabulated({{{2.0}, gamma}, {{3.0}, alpha}});
        PersistenceDiagram da = diagram0(a, filtration_values(degree_colors(a), spec));
        PersistenceDiagram db = diagram0(b, filtration_values(degree_colors(b), spec));
        equal_both = equal_both && diagrams_equal(da, db, 0.0);
        PersistenceDiagram expected;
        expected.dim = 0;
        auto push = [&](double birth, double death, bool essential) {
            PersistencePair p;
            p.birth = birth;
            p.death = death;
            p.essential = essential;
            expected.pairs.push_back(p);
        };
        if (!low_first) {
            push(alpha, alpha, false);
            push(alpha, 0, true);
            for (int i = 0; i < 8; ++i) push(gamma, gamma, false);
            shape1 = diagrams_equal(da, expected, 0.0);
        } else {
            for (int i = 0; i < 8; ++i) push(alpha, alpha, false);
            push(gamma, 0, true);
            push(gamma, gamma, false);
            shape2 = diagrams_equal(da, expected, 0.0);
        }
    }
    {
        ColorAssignment ca = lap_pe(a, 2, PEPolicy::eigenspace_projection).rows;
        ColorAssignment cb = lap_pe(b, 2, PEPolicy::eigenspace_projection).rows;
        lap_differ = !detail::diagrams0_equal_both_orders(a, ca, b, cb, 1e-8);
    }
    line("criterion 3a: degree-filtration dim-0 diagrams equal in both orderings; spectral-color "
         "diagrams differ",
         equal_both && lap_differ);
    line("criterion 3b: first ordering matches the tabulated multiset shape exactly", shape1);
    line("criterion 3c: second ordering matches the tabulated multiset shape exactly", shape2,
         "the tabulated shape needs eight birth values on the two degree-3 vertices; any "
         "degree-truthful diagram has eight births on the degree-2 vertices",
         /*expected_fail=*/true);
}

void criterion4() {
    Rng rng(4040);
    bool ok = true;
    for (int trial = 0; trial < 500 && ok; ++trial) {
        Graph g = seeded_graph(rng, 2 + static_cast<int>(rng.below(11)), 0.3);
        std::vector<double> values(g.n);
        for (auto& v : values) v = rng.uniform();
        BettiPair bp = betti(g);
        PersistenceDiagram d0 = diagram0(g, values);
        PersistenceDiagram d1 = diagram1(g, values);
        ok = ok && d0.essential_count() == bp.beta0 && d1.essential_count() == bp.beta1 &&
             bp.beta1 == g.edge_count() - g.n + bp.beta0;
        std::multiset<double> finite;
        for (const auto& p : d0.pairs)
            if (!p.essential) finite.insert(p.death);
        ok = ok && finite == sweep_deaths(g, values);
    }
    line("criterion 4: essential counts equal both betti numbers and dim-0 deaths match the "
         "threshold-sweep oracle on 500 seeded graphs",
         ok);
}

void criterion5() {
    bool basic = kfwl_distinguish(cycle(6), disjoint_union({cycle(3), cycle(3)}), 2) &&
                 !wl1_distinguish(cycle(6), disjoint_union({cycle(3), cycle(3)}));
    Rng rng(5050);
    int found = 0, separated = 0;
    while (found < 50) {
        Graph g = seeded_graph(rng, 8, 0.4);
        Graph h = seeded_graph(rng, 8, 0.4);
        if (!kfwl_distinguish(g, h, 2)) continue;
        ++found;
        auto [tg, th] = kfwl_pair(g, h, 2);
        auto [pg, ph] = kfwl_node_projection_pair(g, tg, h, th);
        if (is_color_separating(g, int_colors(pg), h, int_colors(ph), {})) ++separated;
    }
    line("criterion 5: tuple refinement separates the six-cycle pair that color refinement "
         "misses; projected colors separate all 50 distinguished pairs",
         basic && separated == 50, std::to_string(separated) + "/50");
}

void criterion6() {
    PiPEConfig cfg;
    cfg.layers = 2;
    cfg.pe_dim = 3;
    cfg.base_k = 3;
    cfg.hidden = 6;
    cfg.filtration_count = 2;
    cfg.base_pe = PEMethod::rw;
    Rng rng(6060);
    double worst = 0.0;
    int run = 0;
    while (run < 20) {
        Graph g = seeded_graph(rng, 8, 0.4);
        if (g.edge_count() < 4) continue;
        ++run;
        worst = std::max(worst, grad_check(g, cfg, 1000 + run, 1e-5));
    }
    line("criterion 6: analytic filtration gradients within 1e-4 of central differences on 20 "
         "seeded graphs",
         worst <= 1e-4, "max relative error " + std::to_string(worst));
}

void criterion7() {
    Rng rng(7070);
    double worst = 0.0;
    for (int gi = 0; gi < 20; ++gi) {
        PiPEConfig cfg;
        cfg.layers = 2;
        cfg.hidden = 6;
        cfg.filtration_count = 2;
        cfg.base_pe = gi % 2 == 0 ? PEMethod::rw : PEMethod::lap;
        cfg.base_k = cfg.pe_dim = 3;
        cfg.seed = 90 + gi;
        PiPEParams params = init_params(cfg);
        Graph g = seeded_graph(rng, 6 + static_cast<int>(rng.below(4)), 0.4);
        auto base = pipe_forward(g, params).embedding;
        for (int p = 0; p < 20; ++p) {
            Graph h = permute(g, seeded_permutation(rng, g.n));
            worst = std::max(worst, embedding_gap(base, pipe_forward(h, params).embedding));
        }
    }
    line("criterion 7: graph-level outputs agree within 1e-9 over 20 permutations of 20 graphs",
         worst <= 1e-9, "max gap " + std::to_string(worst));
}

void criterion8() {
    // built-in corpus: registry pairs plus isomorphic and random pairs
    Rng rng(8080);
    std::vector<Graph> corpus;
    for (const char* id : {"prop34_rw", "prop36", "prop41", "prop42", "prop43"}) {
        auto [a, b] = construction_pair(id);
        corpus.push_back(a);
        corpus.push_back(b);
    }
    corpus.push_back(cycle(6));
    corpus.push_back(disjoint_union({cycle(3), cycle(3)}));
    for (int i = 0; i < 3; ++i) {
        Graph g = seeded_graph(rng, 8, 0.35);
        corpus.push_back(g);
        corpus.push_back(permute(g, seeded_permutation(rng, 8)));
    }
    auto res = pair_suite(corpus, {"ph", "ph_lpe", "pipe"}, 0);
    bool nest = res.monotone;

    auto [g41a, g41b] = construction_pair("prop41");
    double lspe_gap = 0.0, pipe_gap = 0.0;
    PiPEConfig cfg = detail::walk_model_config(3);
    auto lspe = detail::embedding_separation(
        g41a, g41b, cfg, 0,
        [](const Graph& g, const PiPEParams& p) { return lspe_forward(g, p); }, &lspe_gap);
    auto pipe41 = detail::embedding_separation(
        g41a, g41b, cfg, 0,
        [](const Graph& g, const PiPEParams& p) { return pipe_forward(g, p); }, &pipe_gap);
    auto [g42a, g42b] = construction_pair("prop42");
    double pipe42_gap = 0.0;
    auto pipe42 = detail::embedding_separation(
        g42a, g42b, detail::walk_model_config(1), 0,
        [](const Graph& g, const PiPEParams& p) { return pipe_forward(g, p); }, &pipe42_gap);
    bool separations = lspe == detail::Separation::undistinguished &&
                       pipe41 == detail::Separation::distinguished &&
                       pipe42 == detail::Separation::distinguished;
    line("criterion 8: distinguished sets nest (ph within ph_lpe within pipe) and the "
         "persistence-informed stack separates what the topology-blind stack cannot",
         nest && separations,
         "gaps: blind " + std::to_string(lspe_gap) + ", informed " + std::to_string(pipe_gap) +
             " / " + std::to_string(pipe42_gap));
}

void criterion9() {
    Rng rng(9090);
    bool ok = true;
    for (int trial = 0; trial < 1000 && ok; ++trial) {
        Graph g = seeded_graph(rng, 1 + static_cast<int>(rng.below(24)), rng.uniform());
        std::string s = write_graph6(g);
        ok = parse_graph6(s) == g && write_graph6(parse_graph6(s)) == s;
    }
    line("criterion 9: graph6 round trip is the identity on 1000 seeded graphs", ok);
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    if (failures == 0) {
        std::printf("acceptance: all criteria in their documented state\n");
        return 0;
    }
    std::printf("acceptance: %d criteria out of their documented state\n", failures);
    return 1;
}
