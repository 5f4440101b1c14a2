#include <doctest.h>

#include <algorithm>

#include "sg/error.hpp"
#include "sg/game.hpp"
#include "test_util.hpp"

using namespace sg;
using namespace sg::test;

TEST_CASE("validate_game accepts total games and reports violations") {
    CHECK_NOTHROW(validate_game(box_game(1, {{0, 0}})));
    try {
        validate_game(box_game(2, {{0, 1}}));
        FAIL("expected DanglingState");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DanglingState);
    }
    try {
        box_game(2, {{0, 1}, {1, 2}});
        FAIL("expected BadEdge");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::BadEdge);
    }
    auto [g, r] = bimodal_example();
    CHECK_NOTHROW(validate_game(g));
    CHECK(g.num_states() == 4);
    CHECK(g.edges().size() == 7);
    CHECK(g.is_graph());
}

TEST_CASE("duplicate edges collapse") {
    Game g = box_game(2, {{0, 1}, {0, 1}, {1, 0}});
    CHECK(g.edges().size() == 2);
}

TEST_CASE("lasso indexing and validation") {
    Lasso l{{5, 6}, {1, 2, 3}};
    CHECK(l.at(0) == 5);
    CHECK(l.at(1) == 6);
    CHECK(l.at(2) == 1);
    CHECK(l.at(4) == 3);
    CHECK(l.at(5) == 1);
    CHECK(l.at(3 + 300) == 2);

    Game g = box_game(3, {{0, 1}, {1, 2}, {2, 1}});
    CHECK_NOTHROW(validate_lasso(g, Lasso{{0}, {1, 2}}));
    CHECK_THROWS_AS(validate_lasso(g, Lasso{{0}, {2, 1}}), Error);  // 0->2 missing
    CHECK_THROWS_AS(validate_lasso(g, Lasso{{}, {0, 1, 2}}), Error);  // 2->0 missing
    CHECK_THROWS_AS(validate_lasso(g, Lasso{{}, {}}), Error);
}

TEST_CASE("simple cycle enumeration on the example graph") {
    auto [g, r] = bimodal_example();
    auto cycles = simple_cycles(g);
    // A<->B, the D loop, C<->D, and A->B->C->A.
    CHECK(cycles.size() == 4);
    std::vector<std::vector<int>> expect{{0, 1}, {0, 1, 2}, {2, 3}, {3}};
    std::sort(cycles.begin(), cycles.end());
    CHECK(cycles == expect);
}

TEST_CASE("strongly connected components in topological order") {
    auto [g, r] = bimodal_example();
    CHECK(strongly_connected_components(g).size() == 1);

    Game h = box_game(4, {{0, 1}, {1, 0}, {1, 2}, {2, 3}, {3, 2}});
    auto comps = strongly_connected_components(h);
    REQUIRE(comps.size() == 2);
    CHECK(comps[0] == std::vector<int>{0, 1});
    CHECK(comps[1] == std::vector<int>{2, 3});
    CHECK(reachable_states(h, 2) == std::vector<int>{2, 3});
}
