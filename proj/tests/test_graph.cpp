#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "pursuit/graph.hpp"

using namespace pursuit;

TEST_CASE("build_graph computes distances") {
    Graph g = build_graph(2, {{0, 1}});
    CHECK(g.distance(0, 1) == 1);

    Graph p3 = build_graph(3, {{0, 1}, {1, 2}});
    CHECK(p3.distance(0, 2) == 2);

    Graph c4 = build_graph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    CHECK(c4.distance(0, 2) == 2);
    CHECK(c4.edge_count() == 4);
}

TEST_CASE("build_graph rejects bad input") {
    CHECK_THROWS_AS(build_graph(0, {}), std::invalid_argument);
    CHECK_THROWS_AS(build_graph(2, {{0, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(build_graph(2, {{0, 2}}), std::invalid_argument);
}

TEST_CASE("build_graph merges duplicate edges and supports disconnection") {
    Graph g = build_graph(3, {{0, 1}, {1, 0}});
    CHECK(g.edge_count() == 1);
    CHECK_FALSE(g.connected());
    CHECK(g.distance(0, 2) == Graph::kUnreachable);
}

TEST_CASE("generators produce the documented families") {
    Graph p5 = generate("path:5");
    CHECK(p5.vertex_count() == 5);
    CHECK(eccentricity_profile(p5).diameter == 4);

    Graph spider = generate("spider:3x4");
    CHECK(spider.vertex_count() == 13);
    auto prof = eccentricity_profile(spider);
    CHECK(prof.radius == 4);
    CHECK(prof.diameter == 8);
    CHECK(prof.center == std::vector<int>{0});

    Graph c7 = generate("cycle:7");
    auto cyc = eccentricity_profile(c7);
    CHECK(cyc.radius == 3);
    CHECK(cyc.diameter == 3);
    CHECK(cyc.center.size() == 7);

    Graph k4 = generate("clique:4");
    CHECK(k4.edge_count() == 6);

    Graph tree = generate("tree:-1,0,0,1");
    CHECK(tree.vertex_count() == 4);
    CHECK(tree.edge_count() == 3);
    CHECK(tree.distance(2, 3) == 3);

    CHECK(generate("grid:2x2") == generate("cycle:4"));
    CHECK(generate("king:2x2") == generate("clique:4"));
}

TEST_CASE("generator rejects malformed specs") {
    CHECK_THROWS_AS(generate("cycle:2"), std::invalid_argument);
    CHECK_THROWS_AS(generate("path:0"), std::invalid_argument);
    CHECK_THROWS_AS(generate("wat:3"), std::invalid_argument);
    CHECK_THROWS_AS(generate("path"), std::invalid_argument);
    CHECK_THROWS_AS(generate("spider:3"), std::invalid_argument);
    CHECK_THROWS_AS(generate("tree:-1,-1"), std::invalid_argument);
    CHECK_THROWS_AS(generate("tree:-1,2,1"), std::invalid_argument);
}

TEST_CASE("family sizes and degree sequences match the closed forms") {
    for (int n = 1; n <= 7; ++n) {
        Graph p = generate("path:" + std::to_string(n));
        CHECK(p.vertex_count() == n);
        CHECK(p.edge_count() == n - 1);
    }
    for (int n = 3; n <= 8; ++n) {
        Graph c = generate("cycle:" + std::to_string(n));
        CHECK(c.vertex_count() == n);
        for (int v = 0; v < n; ++v) CHECK(c.degree(v) == 2);
    }
    for (int b = 1; b <= 4; ++b)
        for (int len = 1; len <= 3; ++len) {
            Graph s = generate("spider:" + std::to_string(b) + "x" + std::to_string(len));
            CHECK(s.vertex_count() == b * len + 1);
            CHECK(s.degree(0) == b);
            int leaves = 0;
            for (int v = 1; v < s.vertex_count(); ++v)
                if (s.degree(v) == 1) ++leaves;
            CHECK(leaves == b);
        }
}

TEST_CASE("strong product examples") {
    Graph k4 = strong_product(generate("path:2"), generate("path:2"));
    CHECK(k4 == generate("clique:4"));

    Graph king = strong_product(generate("path:3"), generate("path:3"));
    CHECK(king.distance(0, 8) == 2);  // opposite corners of the 3x3 king graph

    Graph same = strong_product(generate("path:2"), generate("path:1"));
    CHECK(same == generate("path:2"));
}

TEST_CASE("cartesian product examples") {
    CHECK(cartesian_product(generate("path:2"), generate("path:2")) == generate("cycle:4"));
    Graph grid = cartesian_product(generate("path:3"), generate("path:3"));
    CHECK(grid.distance(0, 8) == 4);
    for (int m = 2; m <= 4; ++m)
        CHECK(cartesian_product(generate("path:" + std::to_string(m)), generate("path:1")) ==
              generate("path:" + std::to_string(m)));
}

TEST_CASE("product distance laws hold against BFS") {
    std::vector<std::string> zoo = {"path:2", "path:4", "cycle:3", "cycle:5", "clique:3",
                                    "spider:2x2"};
    for (const auto& sa : zoo)
        for (const auto& sb : zoo) {
            Graph a = generate(sa), b = generate(sb);
            REQUIRE(a.vertex_count() <= 6);
            REQUIRE(b.vertex_count() <= 6);
            Graph strong = strong_product(a, b);
            Graph cart = cartesian_product(a, b);
            int hn = b.vertex_count();
            for (int u = 0; u < a.vertex_count(); ++u)
                for (int up = 0; up < hn; ++up)
                    for (int v = 0; v < a.vertex_count(); ++v)
                        for (int vp = 0; vp < hn; ++vp) {
                            int du = a.distance(u, v);
                            int dv = b.distance(up, vp);
                            CHECK(strong.distance(u * hn + up, v * hn + vp) ==
                                  std::max(du, dv));
                            CHECK(cart.distance(u * hn + up, v * hn + vp) == du + dv);
                        }
        }
}

TEST_CASE("product size guard") {
    Graph p = generate("path:20");
    CHECK_THROWS_AS(strong_product(p, p, 100), std::invalid_argument);
}

TEST_CASE("eccentricity profile rejects disconnected input") {
    Graph g = build_graph(3, {{0, 1}});
    CHECK_THROWS_AS(eccentricity_profile(g), std::invalid_argument);
}

TEST_CASE("verify_retraction") {
    Graph p4 = generate("path:4");
    CHECK(verify_retraction(identity_map(p4)).ok);

    VertexMap fold;
    fold.source = p4;
    fold.target = {0, 1, 2};
    fold.map = {0, 1, 2, 2};
    CHECK(verify_retraction(fold).ok);

    // C_4 with one fixed edge: 2 maps to 1, 3 must map to 0; mapping 3 to 1
    // and 2 to 0 breaks the edge (2,3).
    Graph c4 = generate("cycle:4");
    VertexMap bad;
    bad.source = c4;
    bad.target = {0, 1};
    bad.map = {0, 1, 0, 1};
    auto check = verify_retraction(bad);
    CHECK_FALSE(check.ok);
    CHECK(check.detail.find("(2,3)") != std::string::npos);

    VertexMap good;
    good.source = c4;
    good.target = {0, 1};
    good.map = {0, 1, 1, 0};
    CHECK(verify_retraction(good).ok);

    VertexMap notFixed;
    notFixed.source = p4;
    notFixed.target = {0, 1};
    notFixed.map = {1, 1, 1, 1};
    CHECK_FALSE(verify_retraction(notFixed).ok);
}

TEST_CASE("subgrid retraction follows the peel clauses") {
    CHECK(subgrid_retraction(3, 3, 3, 3).map == identity_map(generate("grid:3x3")).map);

    // Peeling the last row of a 4x3 grid: (row 3, y) -> (row 2, y+1) for
    // y < 2 and the corner (3,2) -> (2,1), in 0-based coordinates.
    VertexMap m = subgrid_retraction(4, 3, 3, 3);
    auto id = [](int x, int y) { return x * 3 + y; };
    CHECK(m.map[id(3, 0)] == id(2, 1));
    CHECK(m.map[id(3, 1)] == id(2, 2));
    CHECK(m.map[id(3, 2)] == id(2, 1));
    for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y) CHECK(m.map[id(x, y)] == id(x, y));
    CHECK(verify_retraction(m).ok);

    CHECK(verify_retraction(subgrid_retraction(5, 5, 3, 3)).ok);
    CHECK_THROWS_AS(subgrid_retraction(4, 4, 2, 4), std::invalid_argument);
}

TEST_CASE("subgrid retraction verifies across the whole range") {
    for (int m = 3; m <= 6; ++m)
        for (int n = 3; n <= 6; ++n)
            for (int a = 3; a <= m; ++a)
                for (int b = 3; b <= n; ++b)
                    CHECK(verify_retraction(subgrid_retraction(m, n, a, b)).ok);
}

TEST_CASE("composed retractions still verify") {
    VertexMap rows = subgrid_retraction(6, 6, 4, 6);
    VertexMap full = subgrid_retraction(6, 6, 4, 4);
    VertexMap composed = compose(rows, full);
    CHECK(verify_retraction(composed).ok);
    CHECK(composed.map == full.map);

    Graph g = generate("grid:5x5");
    CHECK(compose(identity_map(g), subgrid_retraction(5, 5, 3, 3)).map ==
          subgrid_retraction(5, 5, 3, 3).map);
}

TEST_CASE("edge list round trip") {
    Graph g = generate("spider:3x4");
    std::stringstream buffer;
    write_edge_list(g, buffer);
    Graph back = parse_edge_list(buffer);
    CHECK(back == g);
    CHECK(back.hash() == g.hash());

    std::stringstream commented("# a comment\n3 2\n0 1\n# mid comment\n1 2\n");
    CHECK(parse_edge_list(commented) == generate("path:3"));

    std::stringstream bad("3 5\n0 1\n");
    CHECK_THROWS_AS(parse_edge_list(bad), std::invalid_argument);
}

TEST_CASE("induced subgraph keeps the induced edges") {
    Graph c5 = generate("cycle:5");
    auto sub = induced_subgraph(c5, {0, 1, 2});
    CHECK(sub.graph == generate("path:3"));
    CHECK(sub.to_original == std::vector<int>{0, 1, 2});
    CHECK(sub.from_original[4] == -1);
}
