#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "doctest.h"
#include "pipe/graph.hpp"
#include "pipe/persist.hpp"
#include "test_util.hpp"

using namespace ppe;

namespace {

// independent threshold-sweep oracle for dim-0 deaths: at each distinct
// value, deaths = (live tuples before + new births) - components after
std::multiset<double> sweep_death_multiset(const Graph& g, const std::vector<double>& values) {
    std::set<double> levels(values.begin(), values.end());
    for (auto [u, v] : g.edges) levels.insert(std::max(values[u], values[v]));
    std::multiset<double> deaths;
    int live = 0;
    for (double w : levels) {
        std::vector<int> keep;
        for (int v = 0; v < g.n; ++v)
            if (values[v] <= w) keep.push_back(v);
        std::vector<int> id(g.n, -1);
        for (size_t i = 0; i < keep.size(); ++i) id[keep[i]] = static_cast<int>(i);
        std::vector<std::pair<int, int>> edges;
        for (auto [u, v] : g.edges)
            if (id[u] >= 0 && id[v] >= 0 && std::max(values[u], values[v]) <= w)
                edges.emplace_back(id[u], id[v]);
        Graph sub = build_graph(static_cast<int>(keep.size()), edges);
        int comps = dfs_component_count(sub);
        int births = 0;
        for (int v = 0; v < g.n; ++v) births += values[v] == w ? 1 : 0;
        for (int k = 0; k < live + births - comps; ++k) deaths.insert(w);
        live = comps;
    }
    return deaths;
}

std::multiset<double> finite_death_multiset(const PersistenceDiagram& d) {
    std::multiset<double> out;
    for (const auto& p : d.pairs)
        if (!p.essential) out.insert(p.death);
    return out;
}

}  // namespace

TEST_CASE("dim-0 elder rule on a path") {
    PersistenceDiagram d = diagram0(path(3), {0, 1, 2});
    REQUIRE(d.pairs.size() == 3);
    CHECK(d.pairs[0].essential);
    CHECK(d.pairs[0].birth == 0.0);
    CHECK_FALSE(d.pairs[1].essential);
    CHECK(d.pairs[1].birth == 1.0);
    CHECK(d.pairs[1].death == 1.0);
    CHECK(d.pairs[2].birth == 2.0);
    CHECK(d.pairs[2].death == 2.0);
}

TEST_CASE("dim-0 with constant values") {
    Graph g = cycle(6);
    PersistenceDiagram d = diagram0(g, std::vector<double>(6, 0.25));
    CHECK(d.essential_count() == 1);
    for (const auto& p : d.pairs) {
        CHECK(p.birth == 0.25);
        if (!p.essential) CHECK(p.death == 0.25);
    }
}

TEST_CASE("dim-1 basics") {
    PersistenceDiagram tri = diagram1(cycle(3), {0, 0, 0});
    REQUIRE(tri.pairs.size() == 3);
    CHECK(tri.essential_count() == 1);
    for (const auto& p : tri.pairs) CHECK(p.birth == 0.0);

    PersistenceDiagram tree = diagram1(path(5), {1, 2, 3, 4, 5});
    CHECK(tree.essential_count() == 0);
    CHECK(tree.pairs.size() == 4);
    for (const auto& p : tree.pairs) CHECK(p.birth == p.death);
}

TEST_CASE("essential counts equal betti numbers on random graphs") {
    Rng rng(101);
    for (int trial = 0; trial < 200; ++trial) {
        Graph g = random_graph(rng, 2 + static_cast<int>(rng.below(11)), 0.3);
        std::vector<double> values(g.n);
        for (auto& v : values) v = rng.uniform();
        BettiPair b = betti(g);
        PersistenceDiagram d0 = diagram0(g, values);
        PersistenceDiagram d1 = diagram1(g, values);
        CHECK(d0.essential_count() == b.beta0);
        CHECK(d1.essential_count() == b.beta1);
        CHECK(static_cast<int>(d0.pairs.size()) == g.n);
        CHECK(static_cast<int>(d1.pairs.size()) == g.edge_count());
        for (const auto& p : d0.pairs)
            if (!p.essential) CHECK(p.birth <= p.death);
    }
}

TEST_CASE("dim-0 death multiset matches the threshold-sweep oracle") {
    Rng rng(202);
    for (int trial = 0; trial < 120; ++trial) {
        Graph g = random_graph(rng, 2 + static_cast<int>(rng.below(9)), 0.35);
        std::vector<double> values(g.n);
        for (auto& v : values) v = rng.uniform();
        if (trial % 3 == 0)
            for (auto& v : values) v = std::round(v * 4) / 4.0;  // force ties
        CHECK(finite_death_multiset(diagram0(g, values)) == sweep_death_multiset(g, values));
    }
}

TEST_CASE("diagram equality semantics") {
    Graph c10 = cycle(10);
    Graph two_c5 = disjoint_union({cycle(5), cycle(5)});
    std::vector<double> const10(10, 0.5);
    PersistenceDiagram a = diagram0(c10, const10);
    PersistenceDiagram b = diagram0(two_c5, const10);
    CHECK(diagrams_equal(a, a, 0.0));
    CHECK_FALSE(diagrams_equal(a, b, 0.0));  // one vs two essential tuples
    CHECK_THROWS_AS(diagrams_equal(a, diagram1(c10, const10), 0.0), std::invalid_argument);
}

TEST_CASE("diagrams are invariant under relabeling") {
    Rng rng(303);
    for (int trial = 0; trial < 50; ++trial) {
        Graph g = random_graph(rng, 3 + static_cast<int>(rng.below(8)), 0.4);
        std::vector<double> values(g.n);
        for (auto& v : values) v = rng.uniform();
        if (trial % 4 == 0) values.assign(g.n, 0.5);
        auto perm = random_permutation(rng, g.n);
        Graph h = permute(g, perm);
        std::vector<double> hv(g.n);
        for (int v = 0; v < g.n; ++v) hv[perm[v]] = values[v];
        CHECK(diagrams_equal(diagram0(g, values), diagram0(h, hv), 0.0));
        CHECK(diagrams_equal(diagram1(g, values), diagram1(h, hv), 0.0));
    }
}

TEST_CASE("dim-0 is stable under value jitter") {
    Rng rng(404);
    for (int trial = 0; trial < 30; ++trial) {
        Graph g = random_graph(rng, 6, 0.5);
        std::vector<double> values(g.n);
        for (auto& v : values) v = rng.uniform();
        double gap = 1.0;
        std::vector<double> sorted(values);
        std::sort(sorted.begin(), sorted.end());
        for (size_t i = 1; i < sorted.size(); ++i)
            gap = std::min(gap, sorted[i] - sorted[i - 1]);
        if (gap < 1e-6) continue;
        double eps = gap / 4.0;
        std::vector<double> jittered(values);
        for (auto& v : jittered) v += rng.uniform(-eps, eps);
        auto collect = [](const PersistenceDiagram& d) {
            std::vector<double> b, dd;
            for (const auto& p : d.pairs) {
                b.push_back(p.birth);
                if (!p.essential) dd.push_back(p.death);
            }
            std::sort(b.begin(), b.end());
            std::sort(dd.begin(), dd.end());
            return std::pair(b, dd);
        };
        auto [b1, d1] = collect(diagram0(g, values));
        auto [b2, d2] = collect(diagram0(g, jittered));
        REQUIRE(b1.size() == b2.size());
        REQUIRE(d1.size() == d2.size());
        for (size_t i = 0; i < b1.size(); ++i) CHECK(std::fabs(b1[i] - b2[i]) <= eps);
        for (size_t i = 0; i < d1.size(); ++i) CHECK(std::fabs(d1[i] - d2[i]) <= eps);
    }
}

TEST_CASE("filtration specs") {
    CHECK(filtration_values(scalar_colors({0, 1, 2}), FiltrationSpec::identity()) ==
          std::vector<double>{0, 1, 2});

    auto tab = FiltrationSpec::tabulated({{{2.0}, 0.7}, {{3.0}, 0.1}});
    CHECK(filtration_values(scalar_colors({3, 2}), tab) == std::vector<double>{0.1, 0.7});
    CHECK_THROWS_AS(filtration_values(scalar_colors({4}), tab), std::invalid_argument);
    CHECK_THROWS_AS(FiltrationSpec::tabulated({{{1.0}, 0.5}, {{2.0}, 0.5}}),
                    std::invalid_argument);

    auto sig = FiltrationSpec::affine_sigmoid({0.0, 0.0}, 0.0);
    auto vals = filtration_values({{3.0, -1.0}, {0.0, 9.0}}, sig);
    CHECK(vals[0] == doctest::Approx(0.5));
    CHECK(vals[1] == doctest::Approx(0.5));
    for (double v : vals) {
        CHECK(v > 0.0);
        CHECK(v < 1.0);
    }
    CHECK_THROWS_AS(filtration_values({{1.0}}, sig), std::invalid_argument);
    CHECK_THROWS_AS(filtration_values({{1.0, 2.0}}, FiltrationSpec::identity()),
                    std::invalid_argument);
}

TEST_CASE("component-wise colors") {
    Graph two_c3 = disjoint_union({cycle(3), cycle(3)});
    ColorAssignment const6 = scalar_colors({7, 7, 7, 7, 7, 7});
    auto cw = component_wise_colors(two_c3, const6);
    REQUIRE(cw.size() == 2);
    CHECK(cw[0] == std::vector<Color>{{7.0}});
    CHECK(cw[1] == std::vector<Color>{{7.0}});

    auto cw6 = component_wise_colors(cycle(6), const6);
    REQUIRE(cw6.size() == 1);

    Graph k1_k3 = disjoint_union({build_graph(1, {}), cycle(3)});
    auto cwd = component_wise_colors(k1_k3, degree_colors(k1_k3));
    REQUIRE(cwd.size() == 2);
    CHECK(cwd[0] == std::vector<Color>{{0.0}});
    CHECK(cwd[1] == std::vector<Color>{{2.0}});
}

TEST_CASE("color separating sets") {
    Graph two_c3 = disjoint_union({cycle(3), cycle(3)});
    Graph c6 = cycle(6);
    ColorAssignment const6 = scalar_colors(std::vector<double>(6, 1.0));
    CHECK(is_color_separating(two_c3, const6, c6, const6, {}));
    CHECK_FALSE(is_color_separating(c6, const6, c6, const6, {}));
    // deleting the lone distinct color can make two different graphs agree
    Graph p2 = path(2);
    ColorAssignment ca = scalar_colors({1.0, 2.0});
    ColorAssignment cb = scalar_colors({1.0, 3.0});
    CHECK(is_color_separating(p2, ca, p2, cb, {}));
    CHECK_FALSE(is_color_separating(p2, ca, p2, cb, {{2.0}, {3.0}}));
}

TEST_CASE("injective filtrations expose color multiset differences in birth times") {
    Rng rng(505);
    for (int trial = 0; trial < 40; ++trial) {
        Graph g = random_graph(rng, 5, 0.4);
        Graph h = random_graph(rng, 5, 0.4);
        std::vector<double> cg(5), ch(5);
        for (auto& x : cg) x = static_cast<double>(rng.below(3));
        for (auto& x : ch) x = static_cast<double>(rng.below(3));
        std::multiset<double> mg(cg.begin(), cg.end()), mh(ch.begin(), ch.end());
        if (mg == mh) continue;
        // any injective table over the union of colors keeps birth multisets apart
        std::set<double> uni(cg.begin(), cg.end());
        uni.insert(ch.begin(), ch.end());
        for (int variant = 0; variant < 3; ++variant) {
            std::map<Color, double> table;
            int i = 0;
            for (double c : uni) {
                double val = variant == 0   ? 1.0 + i
                             : variant == 1 ? 9.0 - i
                                            : 0.5 + 0.31 * ((i + variant) % 7) + 0.01 * i;
                table[{c}] = val;
                ++i;
            }
            auto spec = FiltrationSpec::tabulated(table);
            auto dg = diagram0(g, filtration_values(scalar_colors(cg), spec));
            auto dh = diagram0(h, filtration_values(scalar_colors(ch), spec));
            std::multiset<double> bg, bh;
            for (const auto& p : dg.pairs) bg.insert(p.birth);
            for (const auto& p : dh.pairs) bh.insert(p.birth);
            CHECK(bg != bh);
        }
    }
}
