#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "pipe/pairsuite.hpp"
#include "pipe/registry.hpp"
#include "pipe/report.hpp"
#include "test_util.hpp"

using namespace ppe;

TEST_CASE("cached graphs are the intended structures") {
    // two squares sharing an edge (the 2x3 grid)
    Graph grid = build_graph(6, {{0, 1}, {1, 2}, {3, 4}, {4, 5}, {0, 3}, {1, 4}, {2, 5}});
    CHECK(are_isomorphic(cached_graph(cache::kSixVertexA), grid));
    // a square inscribed in a pentagon, sharing three consecutive vertices
    Graph inscribed = build_graph(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {2, 5}, {5, 0}});
    CHECK(are_isomorphic(cached_graph(cache::kSixVertexB), inscribed));
    // two hexagons sharing an edge
    Graph hexpair = build_graph(10, {{0, 1}, {0, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 1},
                                     {0, 6}, {6, 7}, {7, 8}, {8, 9}, {9, 1}});
    CHECK(are_isomorphic(cached_graph(cache::kTenVertexA), hexpair));
    // two pentagons joined by a bridge
    Graph dumbbell = build_graph(10, {{0, 1}, {0, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0},
                                      {1, 6}, {6, 7}, {7, 8}, {8, 9}, {9, 1}});
    CHECK(are_isomorphic(cached_graph(cache::kTenVertexB), dumbbell));

    Graph qa = cached_graph(cache::kQuarticA), qb = cached_graph(cache::kQuarticB);
    for (int v = 0; v < 10; ++v) {
        CHECK(qa.degree(v) == 4);
        CHECK(qb.degree(v) == 4);
    }
    CHECK(adjacency_charpoly(qa) == adjacency_charpoly(qb));
    CHECK_FALSE(are_isomorphic(qa, qb));
}

TEST_CASE("construction pairs") {
    auto [a, b] = construction_pair("prop34_rw", 1);
    CHECK(are_isomorphic(a, cycle(10)));
    CHECK(are_isomorphic(b, disjoint_union({cycle(5), cycle(5)})));

    auto [c, d] = construction_pair("prop41", 1);
    CHECK(c.n == 12);
    CHECK(d.n == 12);
    for (int v = 0; v < 12; ++v) {
        CHECK(c.degree(v) == 2);
        CHECK(d.degree(v) == 2);
    }

    auto [e, f] = construction_pair("prop42", 1);
    CHECK(e == cycle(4));
    CHECK(f == path(4));

    CHECK_THROWS_AS(construction_pair("nope"), std::invalid_argument);
    CHECK_THROWS_AS(construction_pair("prop41", 0), std::invalid_argument);
}

TEST_CASE("every registered construction passes its asserted claims") {
    for (const auto& c : registry()) {
        auto results = reproduce(c.id, 1, 0);
        CHECK(!results.empty());
        for (const auto& r : results) {
            INFO(c.id << ": " << r.claim << " [" << r.measured << "]");
            if (r.asserted) CHECK(r.pass);
        }
    }
}

TEST_CASE("reproduce is deterministic in the seed") {
    auto a = reproduce("prop41", 1, 7);
    auto b = reproduce("prop41", 1, 7);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].pass == b[i].pass);
        CHECK(a[i].measured == b[i].measured);
    }
}

TEST_CASE("scaled constructions keep their claims") {
    for (const char* id : {"prop31_s23", "prop34_rw", "prop41", "prop42"}) {
        auto results = reproduce(id, 2, 0);
        for (const auto& r : results) {
            INFO(id << " at scale 2: " << r.claim);
            if (r.asserted) CHECK(r.pass);
        }
    }
}

TEST_CASE("report emission") {
    Report r;
    r.seed = 5;
    r.add("x", {"first", true, true, "1"});
    r.add("x", {"second", false, false, "note"});
    Report back = parse_report_json(emit(r, ReportFormat::json));
    CHECK(back == r);

    std::string tsv = emit(r, ReportFormat::tsv);
    CHECK(tsv.find("x\tfirst\tpass\t1\n") != std::string::npos);
    CHECK(tsv.find("x\tsecond\tinfo\tnote\n") != std::string::npos);
    int rows = 0;
    for (char ch : tsv) rows += ch == '\n' ? 1 : 0;
    CHECK(rows == 3);  // header plus one row per claim

    Report empty;
    CHECK(parse_report_json(emit(empty, ReportFormat::json)) == empty);
    CHECK(empty.all_pass());
}

TEST_CASE("pair suite on isomorphic pairs finds nothing") {
    Rng rng(15);
    std::vector<Graph> corpus;
    for (int i = 0; i < 4; ++i) {
        Graph g = random_graph(rng, 7, 0.4);
        corpus.push_back(g);
        corpus.push_back(permute(g, random_permutation(rng, 7)));
    }
    auto res = pair_suite(corpus, {"ph", "ph_lpe", "pipe"}, 0);
    for (const auto& m : res.methods) CHECK(m.count() == 0);
    CHECK(res.monotone);
}

TEST_CASE("degree persistence distinguishes the six-cycle pair") {
    std::vector<Graph> corpus = {cycle(6), disjoint_union({cycle(3), cycle(3)})};
    auto res = pair_suite(corpus, {"ph"}, 0);
    CHECK(res.find("ph")->count() == 1);
}

TEST_CASE("pair suite is symmetric in pair order and invariant under relabeling") {
    Rng rng(16);
    std::vector<Graph> corpus = {cycle(6), disjoint_union({cycle(3), cycle(3)}),
                                 construction_pair("prop41").first,
                                 construction_pair("prop41").second};
    auto base = pair_suite(corpus, {"ph", "ph_lpe", "pipe"}, 3);
    std::vector<Graph> swapped = {corpus[1], corpus[0], corpus[3], corpus[2]};
    auto swapped_res = pair_suite(swapped, {"ph", "ph_lpe", "pipe"}, 3);
    std::vector<Graph> relabeled;
    for (const auto& g : corpus) relabeled.push_back(permute(g, random_permutation(rng, g.n)));
    auto relabeled_res = pair_suite(relabeled, {"ph", "ph_lpe", "pipe"}, 3);
    for (size_t m = 0; m < base.methods.size(); ++m) {
        CHECK(base.methods[m].distinguished == swapped_res.methods[m].distinguished);
        CHECK(base.methods[m].distinguished == relabeled_res.methods[m].distinguished);
    }
    CHECK_THROWS_AS(pair_suite({cycle(3)}, {"ph"}, 0), std::invalid_argument);
    CHECK_THROWS_AS(pair_suite(corpus, {"bogus"}, 0), std::invalid_argument);
}

TEST_CASE("distinguished sets nest on a mixed corpus") {
    Rng rng(17);
    std::vector<Graph> corpus;
    auto add_pair = [&](const std::string& id) {
        auto [a, b] = construction_pair(id);
        corpus.push_back(a);
        corpus.push_back(b);
    };
    add_pair("prop34_rw");
    add_pair("prop36");
    add_pair("prop41");
    add_pair("prop42");
    corpus.push_back(cycle(6));
    corpus.push_back(disjoint_union({cycle(3), cycle(3)}));
    for (int i = 0; i < 3; ++i) {
        Graph g = random_graph(rng, 8, 0.35);
        corpus.push_back(g);
        corpus.push_back(permute(g, random_permutation(rng, 8)));
    }
    auto res = pair_suite(corpus, {"ph", "ph_lpe", "pipe"}, 0);
    CHECK(res.monotone);
    CHECK(res.find("pipe")->count() >= res.find("ph_lpe")->count());
    CHECK(res.find("ph_lpe")->count() >= res.find("ph")->count());
}
