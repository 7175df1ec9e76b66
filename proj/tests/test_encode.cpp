#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <functional>

#include "doctest.h"
#include "pipe/encode.hpp"
#include "pipe/graph.hpp"
#include "test_util.hpp"

using namespace ppe;

namespace {

// independent multiset matcher: bipartite matching over tolerance-compatible
// rows, used to cross-check the library's greedy sorted pairing
bool assignment_multiset_equal(const std::vector<std::vector<double>>& a,
                               const std::vector<std::vector<double>>& b, double tol) {
    const int n = static_cast<int>(a.size());
    std::vector<int> match(n, -1);
    std::function<bool(int, std::vector<bool>&)> aug = [&](int i, std::vector<bool>& seen) {
        for (int j = 0; j < n; ++j) {
            bool ok = true;
            for (size_t c = 0; c < a[i].size(); ++c)
                if (std::fabs(a[i][c] - b[j][c]) > tol) {
                    ok = false;
                    break;
                }
            if (!ok || seen[j]) continue;
            seen[j] = true;
            if (match[j] < 0 || aug(match[j], seen)) {
                match[j] = i;
                return true;
            }
        }
        return false;
    };
    for (int i = 0; i < n; ++i) {
        std::vector<bool> seen(n, false);
        if (!aug(i, seen)) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("walk encoding of cycles is exact") {
    // ten-cycle rows are (0, 1/2, 0, 3/8); scaled by 2^4 these are integers
    PEMatrix pe = rw_pe(cycle(10), 4);
    for (int v = 0; v < 10; ++v) {
        CHECK(pe.rows[v][0] * 16 == 0.0);
        CHECK(pe.rows[v][1] * 16 == 8.0);
        CHECK(pe.rows[v][2] * 16 == 0.0);
        CHECK(pe.rows[v][3] * 16 == 6.0);
    }
    // triangle: closed 3-walks = 2 of 8
    PEMatrix c3 = rw_pe(cycle(3), 3);
    for (int v = 0; v < 3; ++v) {
        CHECK(c3.rows[v][0] == 0.0);
        CHECK(c3.rows[v][1] == 0.5);
        CHECK(c3.rows[v][2] == 0.25);
    }
    // same multiset for one ten-cycle and two five-cycles, at zero tolerance
    PEMatrix other = rw_pe(disjoint_union({cycle(5), cycle(5)}), 4);
    CHECK(pe_multiset_equal(pe, other, 0.0));
}

TEST_CASE("walk encoding entries stay in [0,1]; odd steps vanish on bipartite graphs") {
    Rng rng(21);
    for (int trial = 0; trial < 30; ++trial) {
        Graph g = random_graph(rng, 3 + static_cast<int>(rng.below(8)), 0.4);
        PEMatrix pe = rw_pe(g, 5);
        for (const auto& row : pe.rows)
            for (double x : row) {
                CHECK(x >= 0.0);
                CHECK(x <= 1.0);
            }
    }
    for (int n : {4, 6, 8}) {
        PEMatrix pe = rw_pe(cycle(n), 5);
        for (const auto& row : pe.rows) {
            CHECK(row[0] == 0.0);
            CHECK(row[2] == 0.0);
            CHECK(row[4] == 0.0);
        }
    }
}

TEST_CASE("laplacian encoding policies") {
    // triangle is vertex transitive: projection rows all agree
    PEMatrix proj = lap_pe(cycle(3), 2, PEPolicy::eigenspace_projection);
    for (int v = 1; v < 3; ++v)
        for (int c = 0; c < proj.width(); ++c)
            CHECK(proj.rows[v][c] == doctest::Approx(proj.rows[0][c]).epsilon(1e-12));

    // raw rows have canonical sign: the largest-magnitude entry is positive
    Rng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        Graph g = random_graph(rng, 4 + static_cast<int>(rng.below(6)), 0.5);
        PEMatrix raw = lap_pe(g, std::min(3, g.n), PEPolicy::raw);
        for (int c = 0; c < raw.width(); ++c) {
            double best = 0.0;
            for (int v = 0; v < g.n; ++v)
                if (std::fabs(raw.rows[v][c]) > std::fabs(best)) best = raw.rows[v][c];
            CHECK(best >= 0.0);
        }
    }
    CHECK_THROWS_AS(lap_pe(cycle(3), 0), std::invalid_argument);
    CHECK_THROWS_AS(lap_pe(cycle(3), 4), std::invalid_argument);
}

TEST_CASE("projection columns sum to the group multiplicity") {
    Rng rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        Graph g = random_graph(rng, 4 + static_cast<int>(rng.below(7)), 0.4);
        auto d = eigh(normalized_laplacian(g));
        int k = std::min(3, g.n);
        PEMatrix pe = lap_pe(g, k, PEPolicy::eigenspace_projection);
        // column c corresponds to the c-th eigenvalue group touching 1..k
        int col = 0;
        for (auto [lo, hi] : d.groups) {
            if (lo > k - 1) break;
            double sum = 0.0;
            for (int v = 0; v < g.n; ++v) sum += pe.rows[v][col];
            CHECK(sum == doctest::Approx(hi - lo + 1).epsilon(1e-9));
            ++col;
        }
    }
}

TEST_CASE("distance encoding modes") {
    // a two-step walk from the non-anchor endpoint of an edge returns home
    PEMatrix k2 = distance_pe(complete(2), {0}, 2, DistanceMode::rw_vector);
    CHECK(k2.rows[1][0] == 1.0);
    CHECK(k2.rows[1][1] == 0.0);

    PEMatrix sp = distance_pe(path(4), {2}, 1, DistanceMode::shortest_path);
    CHECK(sp.rows[2][0] == 0.0);
    CHECK(sp.rows[0][0] == 2.0);

    // unreachable vertices are encoded as n
    PEMatrix far = distance_pe(build_graph(3, {{0, 1}}), {0}, 1, DistanceMode::shortest_path);
    CHECK(far.rows[2][0] == 3.0);

    PEMatrix pr = distance_pe(cycle(4), {0, 1, 2, 3}, 2, DistanceMode::pagerank, {0.5, 0.25});
    for (int v = 0; v < 4; ++v) CHECK(pr.rows[v][0] == doctest::Approx(0.75));

    CHECK_THROWS_AS(distance_pe(cycle(4), {}, 2, DistanceMode::rw_vector), std::invalid_argument);
    CHECK_THROWS_AS(distance_pe(cycle(4), {0}, 2, DistanceMode::pagerank), std::invalid_argument);
}

TEST_CASE("multiset comparison") {
    PEMatrix a = rw_pe(cycle(10), 4);
    CHECK(pe_multiset_equal(a, a, 0.0));

    PEMatrix b = rw_pe(cycle(5), 4);
    CHECK_THROWS_AS(pe_multiset_equal(a, b, 0.0), std::invalid_argument);  // shape mismatch

    PEMatrix c = rw_pe(cycle(10), 3);
    CHECK_THROWS_AS(pe_multiset_equal(a, c, 0.0), std::invalid_argument);  // k mismatch
}

TEST_CASE("greedy pairing agrees with an assignment oracle") {
    Rng rng(33);
    for (int trial = 0; trial < 60; ++trial) {
        Graph g = random_graph(rng, 4 + static_cast<int>(rng.below(6)), 0.4);
        Graph h = trial % 2 == 0 ? permute(g, random_permutation(rng, g.n))
                                 : random_graph(rng, g.n, 0.4);
        PEMatrix pg = rw_pe(g, 3), ph = rw_pe(h, 3);
        bool greedy = pe_multiset_equal(pg, ph, 1e-8);
        bool oracle = assignment_multiset_equal(pg.rows, ph.rows, 1e-8);
        CHECK(greedy == oracle);
    }
}

TEST_CASE("every encoding is invariant under vertex permutation") {
    Rng rng(55);
    for (int trial = 0; trial < 15; ++trial) {
        Graph g = random_graph(rng, 5 + static_cast<int>(rng.below(5)), 0.45);
        auto perm = random_permutation(rng, g.n);
        Graph h = permute(g, perm);
        CHECK(pe_multiset_equal(rw_pe(g, 4), rw_pe(h, 4), 1e-9));
        int k = std::min(3, g.n);
        CHECK(pe_multiset_equal(lap_pe(g, k, PEPolicy::eigenspace_projection),
                                lap_pe(h, k, PEPolicy::eigenspace_projection), 1e-8));
        // raw rows are only well-defined up to basis rotation inside an
        // eigenvalue group, so check them where the leading spectrum is
        // simple and the selection does not cut into a degenerate group
        auto groups = eigh(normalized_laplacian(g)).groups;
        bool simple = true;
        for (auto [lo, hi] : groups)
            if (lo <= k - 1) simple = simple && lo == hi && hi <= k - 1;
        if (simple)
            CHECK(pe_multiset_equal(lap_pe(g, k, PEPolicy::raw), lap_pe(h, k, PEPolicy::raw),
                                    1e-6));
        std::vector<int> all_g(g.n), all_h(g.n);
        for (int v = 0; v < g.n; ++v) all_g[v] = all_h[v] = v;
        CHECK(pe_multiset_equal(distance_pe(g, all_g, 3, DistanceMode::rw_vector),
                                distance_pe(h, all_h, 3, DistanceMode::rw_vector), 1e-9));
    }
}
