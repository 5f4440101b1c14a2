#include <doctest.h>

#include <random>
#include <set>

#include "sg/error.hpp"
#include "sg/oracle.hpp"
#include "sg/runcheck.hpp"
#include "sg/window.hpp"
#include "test_util.hpp"

using namespace sg;
using namespace sg::test;

namespace {

// Scheme with a single memory element admitting every move.
StrategyScheme trivial_scheme(const Game& g) {
    StrategyScheme sch;
    sch.game = &g;
    sch.init_mem = sch.intern_mem({0});
    for (int s = 0; s < g.num_states(); ++s) sch.add_node(s, sch.init_mem);
    for (int s = 0; s < g.num_states(); ++s) {
        sch.up_mem.push_back(sch.init_mem);
        std::vector<int> kids;
        for (int t : g.successors(s)) kids.push_back(t);
        sch.succ.push_back(kids);
        sch.box_csucc.push_back(g.is_box(s) ? kids : std::vector<int>{});
    }
    sch.alive.assign(sch.nodes.size(), 1);
    sch.init_ok.assign(g.num_states(), 1);
    sch.finalize_box_admissible();
    return sch;
}

}  // namespace

TEST_CASE("reach_init walks exactly the admitted region") {
    Game loop = box_game(1, {{0, 0}});
    StrategyScheme sch = trivial_scheme(loop);
    CHECK(reach_init(sch) == std::vector<int>{0});

    // No initial pairs: nothing reachable.
    sch.init_ok.assign(1, 0);
    CHECK(reach_init(sch).empty());
}

TEST_CASE("reach_init equals forward search in the product game") {
    std::mt19937_64 rng(211);
    for (int iter = 0; iter < 50; ++iter) {
        Game g = random_total_game(rng, 5, 6, 0.4);
        RewardFunction rho = random_reward(rng, g, 2);
        WindowObjective phi = random_window_objective(rng, rho, {2, 3});
        StrategyScheme sch = build_scheme(g, phi);
        ProductGame pg = product_game(sch);

        std::set<int> bfs;
        std::vector<int> todo;
        for (int s = 0; s < g.num_states(); ++s)
            if (sch.init_defined(s)) {
                int p = sch.node_of(s, sch.init_mem);
                if (bfs.insert(p).second) todo.push_back(p);
            }
        while (!todo.empty()) {
            int p = todo.back();
            todo.pop_back();
            for (int q : pg.game.successors(p))
                if (bfs.insert(q).second) todo.push_back(q);
        }
        auto reached = reach_init(sch);
        CHECK(std::vector<int>(bfs.begin(), bfs.end()) == reached);
    }
}

TEST_CASE("product game over a trivial scheme is the game itself") {
    auto [g, r] = bimodal_example();
    StrategyScheme sch = trivial_scheme(g);
    ProductGame pg = product_game(sch);
    CHECK(pg.game.num_states() == g.num_states());
    CHECK(pg.game.edges().size() == g.edges().size());
    for (auto [a, b] : g.edges())
        CHECK(pg.game.has_edge(sch.node_of(a, 0), sch.node_of(b, 0)));
    RewardFunction lifted = lift_reward(pg, r);
    for (int p = 0; p < pg.game.num_states(); ++p)
        CHECK(lifted.values[p] == r.values[pg.pair_of_state[p].state]);
}

TEST_CASE("empty constrainers become self-loops in the product game") {
    // One Box state that can only violate the window: its pair self-loops.
    Game g = box_game(2, {{0, 1}, {1, 1}});
    RewardFunction rho = reward({0, 0});
    WindowObjective phi = wobj(1, 1, rho, rat(1), rat(1));  // unachievable everywhere
    StrategyScheme sch = build_scheme(g, phi);
    CHECK_FALSE(sch.init_defined(0));
    ProductGame pg = product_game(sch);
    int self_loops = 0;
    for (int p = 0; p < pg.game.num_states(); ++p)
        if (pg.game.successors(p) == std::vector<int>{p}) ++self_loops;
    CHECK(self_loops > 0);
    CHECK(pg.game.num_states() <= g.num_states() * static_cast<int>(sch.mem_payload.size()));
}

TEST_CASE("product of one scheme preserves winning sets and admitted plays") {
    std::mt19937_64 rng(223);
    for (int iter = 0; iter < 40; ++iter) {
        Game g = random_total_game(rng, 5, 6, 0.4);
        RewardFunction rho = random_reward(rng, g, 2);
        WindowObjective phi = random_window_objective(rng, rho, {2, 3});
        StrategyScheme one = build_scheme(g, phi);
        StrategyScheme prod = product_scheme({&one});
        StrategyScheme twice = product_scheme({&one, &one});
        for (int s = 0; s < g.num_states(); ++s) {
            REQUIRE(prod.init_defined(s) == one.init_defined(s));
            REQUIRE(twice.init_defined(s) == one.init_defined(s));
        }
        // Sampled play admitted by the product iff admitted by the component.
        for (int s = 0; s < g.num_states(); ++s) {
            if (!one.init_defined(s)) continue;
            std::vector<int> path{s};
            for (int step = 0; step < 6; ++step) {
                const auto& succ = g.successors(path.back());
                path.push_back(
                    succ[std::uniform_int_distribution<std::size_t>(0, succ.size() - 1)(rng)]);
            }
            CHECK(admits(one, path) == admits(prod, path));
        }
    }
}

TEST_CASE("product of two window schemes matches the joint oracle") {
    std::mt19937_64 rng(227);
    for (int iter = 0; iter < 40; ++iter) {
        Game g = random_total_game(rng, 5, 6, 0.4);
        RewardFunction rho = random_reward(rng, g, 2);
        WindowObjective a = random_window_objective(rng, rho, {2, 3});
        WindowObjective b = random_window_objective(rng, rho, {2, 4});
        StrategyScheme sa = build_scheme(g, a);
        StrategyScheme sb = build_scheme(g, b);
        StrategyScheme prod = product_scheme({&sa, &sb});
        CHECK(Int(prod.mem_payload.size()) <=
              Int(sa.mem_payload.size()) * Int(sb.mem_payload.size()));
        auto oracle = window_winning_set(g, {a, b}, {});
        for (int s = 0; s < g.num_states(); ++s)
            REQUIRE(prod.init_defined(s) == static_cast<bool>(oracle[s]));
    }
}

TEST_CASE("induced strategies are unique up to play equivalence") {
    // A deterministic product admits a single induced strategy; choices on
    // unreachable product states do not matter.
    Game g = box_game(3, {{0, 1}, {1, 2}, {2, 0}, {2, 2}});
    RewardFunction rho = reward({1, 1, 1});
    WindowObjective phi = wobj(2, 1, rho, rat(1), rat(1));
    StrategyScheme sch = build_scheme(g, phi);
    REQUIRE(sch.init_defined(0));
    ProductGame pg = product_game(sch);

    std::vector<int> tau(pg.game.num_states(), -1);
    for (int p = 0; p < pg.game.num_states(); ++p)
        if (pg.game.is_box(p)) tau[p] = pg.game.successors(p)[0];
    FiniteStrategy s1 = induce_strategy(pg, tau, 0);

    // Perturb tau on product states unreachable from (0, init).
    auto reached = reach_init(sch);
    std::vector<int> tau2 = tau;
    for (int p = 0; p < pg.game.num_states(); ++p)
        if (pg.game.is_box(p) && !std::binary_search(reached.begin(), reached.end(), p))
            tau2[p] = pg.game.successors(p).back();
    FiniteStrategy s2 = induce_strategy(pg, tau2, 0);

    std::vector<int> adversary(g.num_states(), -1);
    Lasso l1 = simulate(g, s1, adversary);
    Lasso l2 = simulate(g, s2, adversary);
    CHECK(l1.prefix == l2.prefix);
    CHECK(l1.cycle == l2.cycle);
}

TEST_CASE("admission: induced strategies pass, violating strategies fail") {
    // Two-state alternation forced by the window bounds; a strategy that
    // stays on the 0-reward loop violates the lower bound.
    Game g = box_game(2, {{0, 1}, {1, 0}, {0, 0}});
    RewardFunction rho = reward({0, 4});
    WindowObjective phi = wobj(2, 1, rho, rat(2), rat(2));
    StrategyScheme sch = build_scheme(g, phi);
    REQUIRE(sch.init_defined(0));

    ProductGame pg = product_game(sch);
    std::vector<int> tau(pg.game.num_states(), -1);
    for (int p = 0; p < pg.game.num_states(); ++p)
        if (pg.game.is_box(p)) tau[p] = pg.game.successors(p)[0];
    FiniteStrategy good = induce_strategy(pg, tau, 0);
    CHECK(admits(sch, 0, good));

    FiniteStrategy bad;
    bad.initial_state = 0;
    bad.num_memories = 1;
    bad.init_mem = 0;
    bad.update[FiniteStrategy::key(0, 0)] = 0;
    bad.update[FiniteStrategy::key(0, 1)] = 0;
    bad.choice[FiniteStrategy::key(0, 0)] = 0;  // loop on the 0-reward state
    bad.choice[FiniteStrategy::key(0, 1)] = 0;
    CHECK_FALSE(admits(sch, 0, bad));

    StrategyScheme lose = build_scheme(g, wobj(2, 1, rho, rat(3), rat(3)));
    CHECK_FALSE(lose.init_defined(0));
    CHECK_FALSE(admits(lose, 0, good));

    // Prefix admission agrees: the admitted alternation vs the bad loop.
    CHECK(admits(sch, {0, 1, 0, 1}));
    CHECK_FALSE(admits(sch, {0, 0}));
}

TEST_CASE("admission equals universal satisfaction on small games") {
    std::mt19937_64 rng(229);
    int agreements = 0;
    for (int iter = 0; iter < 30; ++iter) {
        Game g = random_total_game(rng, 4, 4, 0.4);
        RewardFunction rho = random_reward(rng, g, 1);
        WindowObjective phi = random_window_objective(rng, rho, {2});
        StrategyScheme sch = build_scheme(g, phi);
        MultiObjective delta{{phi}};
        // Positional strategies of Box, tested both ways.
        for (const auto& choice : all_positional(g, Owner::Box)) {
            for (int s = 0; s < g.num_states(); ++s) {
                FiniteStrategy sigma;
                sigma.initial_state = s;
                for (int v = 0; v < g.num_states(); ++v) {
                    sigma.update[FiniteStrategy::key(0, v)] = 0;
                    if (choice[v] >= 0) sigma.choice[FiniteStrategy::key(0, v)] = choice[v];
                }
                bool all_satisfy = true;
                for (const auto& adv : all_positional(g, Owner::Diamond)) {
                    Lasso l = simulate(g, sigma, adv);
                    all_satisfy = all_satisfy && check_window_run(l, delta);
                }
                REQUIRE(admits(sch, s, sigma) == all_satisfy);
                ++agreements;
            }
        }
    }
    CHECK(agreements > 100);
}
