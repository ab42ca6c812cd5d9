#include "holoshear/fatgraph.hpp"
#include "holoshear/rng.hpp"
#include "holoshear/shipped_graphs.hpp"

#include <doctest.h>

#include <numeric>
#include <set>

using namespace holoshear;

TEST_CASE("shipped graphs validate with the expected invariants") {
    struct Expect {
        const char* name;
        int V, E, F, g;
    };
    const Expect table[] = {
        {"torus_1", 2, 3, 1, 1},
        {"sphere_3", 2, 3, 3, 0},
        {"sphere_4", 4, 6, 4, 0},
        {"genus2_1", 6, 9, 1, 2},
    };
    for (const auto& e : table) {
        const FatGraph g = shipped_graph(e.name);
        CHECK(g.vertex_count() == e.V);
        CHECK(g.edge_count() == e.E);
        CHECK(g.face_count() == e.F);
        CHECK(g.genus() == e.g);

        // half-edges partition into faces; every edge borders faces twice
        int total = 0;
        for (const Face& f : g.faces()) total += static_cast<int>(f.boundary.size());
        CHECK(total == g.half_edge_count());
        for (int a = 0; a < g.edge_count(); ++a) {
            int mult = 0;
            for (const Face& f : g.faces()) mult += f.multiplicity[a];
            CHECK(mult == 2);
        }
    }
}

TEST_CASE("torus and three-punctured sphere face structure") {
    const FatGraph t = shipped_graph("torus_1");
    CHECK(t.faces()[0].multiplicity == std::vector<int>{2, 2, 2});

    const FatGraph s = shipped_graph("sphere_3");
    for (const Face& f : s.faces()) {
        CHECK(f.boundary.size() == 2);
        int distinct = 0;
        for (int m : f.multiplicity) distinct += m == 1;
        CHECK(distinct == 2);
    }
}

TEST_CASE("face boundary paths take a single turn direction") {
    for (const auto& name : shipped_graph_names()) {
        const FatGraph g = shipped_graph(name);
        for (int i = 0; i < g.face_count(); ++i) {
            const EdgePath p = g.face_boundary_path(i);
            const Turn t0 = g.turn(p, 0);
            for (std::size_t k = 1; k < p.tails.size(); ++k) CHECK(g.turn(p, k) == t0);
        }
    }
}

TEST_CASE("turn rejects backtracks and non-incident steps") {
    const FatGraph g = shipped_graph("torus_1");
    CHECK_THROWS_AS(g.turn_between(0, g.sigma(0)), PathError);
    EdgePath bad{{0, 0}};   // re-uses the same tail; not incident
    CHECK_THROWS_AS(g.validate_path(bad), PathError);
}

TEST_CASE("whitehead move rejects loops") {
    // figure with a loop at each end: valid fat graph, loop edges unflippable
    const FatGraph g(6, {{0, 1}, {2, 3}, {4, 5}}, {{0, 1, 2}, {3, 4, 5}},
                     {"loop1", "mid", "loop2"});
    CHECK(g.is_loop(0));
    CHECK(!g.is_loop(1));
    CHECK_THROWS_AS(g.whitehead(0), GraphValidationError);
    CHECK_NOTHROW(g.neighbor_frame(1));
}

TEST_CASE("whitehead involutivity and invariants") {
    Rng rng(5);
    for (const auto& name : shipped_graph_names()) {
        const FatGraph g = shipped_graph(name);
        for (int e = 0; e < g.edge_count(); ++e) {
            if (g.is_loop(e)) continue;
            auto [g1, r1] = g.whitehead(e);
            CHECK(g1.face_count() == g.face_count());
            CHECK(g1.genus() == g.genus());
            auto [g2, r2] = g1.whitehead(e);
            CHECK(FatGraph::isomorphic_labeled(g, g2));
        }
    }
}

TEST_CASE("torus flips to an isomorphic copy of itself") {
    const FatGraph g = shipped_graph("torus_1");
    auto [g1, rec] = g.whitehead(0);
    // there is only one trivalent fat graph with V=2, E=3, F=1; the flip
    // relabels it, so compare after forgetting which label sits where
    bool iso_up_to_label = false;
    const std::string l1 = g.label(1), l2 = g.label(2);
    for (const FatGraph& cand :
         {g1, g1.with_labels_swapped(l1, l2), g1.with_labels_swapped(g.label(0), l1),
          g1.with_labels_swapped(g.label(0), l2)}) {
        iso_up_to_label = iso_up_to_label || FatGraph::isomorphic_labeled(g, cand);
    }
    CHECK(iso_up_to_label);
}

TEST_CASE("euler data is invariant under random move sequences") {
    Rng rng(9);
    for (const auto& name : shipped_graph_names()) {
        FatGraph g = shipped_graph(name);
        const int g0 = g.genus(), f0 = g.face_count();
        for (int step = 0; step < 12; ++step) {
            std::vector<int> candidates;
            for (int e = 0; e < g.edge_count(); ++e)
                if (!g.is_loop(e)) candidates.push_back(e);
            REQUIRE(!candidates.empty());
            const int e = candidates[rng.below(candidates.size())];
            g = g.whitehead(e).first;
            CHECK(g.genus() == g0);
            CHECK(g.face_count() == f0);
        }
    }
}

TEST_CASE("path transport across a move") {
    const FatGraph g = shipped_graph("sphere_4");
    // path on the outer triangle e12, e23, e13 avoids edge e01 and its frame?
    // e01 frame touches e02, e03, e13, e12 -- transport must leave a path
    // through untouched junction vertices alone; use face boundaries instead.
    auto [post, rec] = g.whitehead(0);
    const auto corr = g.face_correspondence(rec, post);
    std::set<int> distinct(corr.begin(), corr.end());
    CHECK(distinct.size() == static_cast<std::size_t>(g.face_count()));

    // a path staying away from both endpoints of the flipped edge is unchanged
    const FatGraph g2 = shipped_graph("genus2_1");
    // edge 3 joins vertices 1,2; find a closed two-edge path on vertices {0,3}
    EdgePath far{{1, 10}};   // e1 then e2 between vertices 0 and 3
    g2.validate_path(far);
    auto [post2, rec2] = g2.whitehead(3);
    const EdgePath moved = g2.transport_path(far, rec2, post2);
    CHECK(moved.tails == far.tails);
}

TEST_CASE("json round trip") {
    for (const auto& name : shipped_graph_names()) {
        const FatGraph g = shipped_graph(name);
        const FatGraph h = FatGraph::from_json(g.to_json());
        CHECK(g.fingerprint() == h.fingerprint());
        CHECK(FatGraph::isomorphic_labeled(g, h));
    }
}

TEST_CASE("validation failures") {
    // sigma fixed point
    CHECK_THROWS_AS(FatGraph(6, {{0, 0}, {1, 2}, {3, 4}}, {{0, 1, 2}, {3, 4, 5}},
                             {"a", "b", "c"}),
                    GraphValidationError);
    // disconnected: two separate theta graphs would need 12 half-edges; easier:
    // nu cycle of wrong length is rejected at parse level by construction shape,
    // so check duplicate labels and out-of-range entries instead
    CHECK_THROWS_AS(FatGraph(6, {{0, 3}, {1, 4}, {2, 5}}, {{0, 1, 2}, {3, 4, 5}},
                             {"a", "a", "c"}),
                    GraphValidationError);
    CHECK_THROWS_AS(FatGraph(6, {{0, 9}, {1, 4}, {2, 5}}, {{0, 1, 2}, {3, 4, 5}},
                             {"a", "b", "c"}),
                    GraphValidationError);
    const char* disconnected = R"({
      "half_edges": 12,
      "sigma": [[0,3],[1,4],[2,5],[6,9],[7,10],[8,11]],
      "nu": [[0,1,2],[3,4,5],[6,7,8],[9,10,11]],
      "edge_labels": ["a","b","c","d","e","f"]
    })";
    CHECK_THROWS_AS(FatGraph::from_json(disconnected), GraphValidationError);
}

TEST_CASE("splice and reversal") {
    const FatGraph g = shipped_graph("torus_1");
    const EdgePath a{{0, 4}}, b{{0, 5}};
    const EdgePath ab = g.splice(a, b);
    CHECK(ab.tails == std::vector<int>{0, 5, 0, 4});
    const EdgePath ar = g.reverse_path(a);
    CHECK(ar.tails == std::vector<int>{g.sigma(4), g.sigma(0)});
    g.validate_path(ar);
    CHECK(g.cyclically_equal(a, EdgePath{{4, 0}}));            // rotation of the same cycle
    CHECK(!g.cyclically_equal(a, b));
    CHECK(g.cyclically_equal(ab, EdgePath{{0, 4, 0, 5}}));
}
