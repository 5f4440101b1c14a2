#include <doctest.h>

#include <random>

#include "sg/error.hpp"
#include "sg/mpsolve.hpp"
#include "sg/oracle.hpp"
#include "sg/runcheck.hpp"
#include "sg/window.hpp"
#include "test_util.hpp"

using namespace sg;
using namespace sg::test;

TEST_CASE("threshold solving on fixed instances") {
    Game loop = box_game(1, {{0, 0}});
    CHECK(mp_threshold(loop, reward({3}), rat(3)).winning[0]);
    CHECK_FALSE(mp_threshold(loop, reward({3}), rat(7, 2)).winning[0]);

    auto [g, r] = bimodal_example();
    auto res = mp_threshold(g, r, rat(2));
    for (int s = 0; s < 4; ++s) CHECK(res.winning[s]);  // everyone reaches the 0/4 cycle
    auto above = mp_threshold(g, r, rat(2) + rat(1, 100));
    for (int s = 0; s < 4; ++s) CHECK_FALSE(above.winning[s]);
}

TEST_CASE("threshold winning sets match the enumeration oracle") {
    std::mt19937_64 rng(307);
    for (int iter = 0; iter < 60; ++iter) {
        Game g = random_total_game(rng, 5, 6, 0.4);
        RewardFunction rho = random_reward(rng, g, 3);
        ValueTable oracle = mp_oracle(g, rho);
        for (int k = 0; k < 4; ++k) {
            Rat b(std::uniform_int_distribution<int>(0, 6)(rng),
                  std::uniform_int_distribution<int>(1, 2)(rng));
            auto res = mp_threshold(g, rho, b);
            for (int s = 0; s < g.num_states(); ++s)
                REQUIRE(static_cast<bool>(res.winning[s]) == (oracle.value[s] >= b));
        }
    }
}

TEST_CASE("energy iteration stays within its lift budget") {
    std::mt19937_64 rng(311);
    for (int iter = 0; iter < 40; ++iter) {
        Game g = random_total_game(rng, 6, 8, 0.5);
        RewardFunction rho = random_reward(rng, g, 4);
        Rat b(std::uniform_int_distribution<int>(0, 8)(rng), 2);
        auto res = mp_threshold(g, rho, b);
        long long max_w = 0;
        for (int s = 0; s < g.num_states(); ++s)
            max_w = std::max(max_w, std::abs(2 * rho.values[s][0] - 1));
        Int budget = Int(g.num_states()) * g.num_states() * g.edges().size() *
                     std::max<long long>(1, 8 * max_w);
        CHECK(Int(res.lifts) <= budget);
    }
}

TEST_CASE("exact values on fixed instances") {
    Game loop = box_game(1, {{0, 0}});
    CHECK(mp_value_at(loop, reward({5}), 0) == rat(5));
    CHECK(mp_value_at(loop, reward({7}, 2), 0) == rat(7, 2));

    // Two loops of reward 1 and 4 reachable from a fork state.
    Game fork = box_game(3, {{0, 1}, {0, 2}, {1, 1}, {2, 2}});
    ValueTable t = mp_value(fork, reward({0, 1, 4}));
    CHECK(t.value[0] == rat(4));
    CHECK(t.value[1] == rat(1));
    CHECK(t.value[2] == rat(4));

    auto [g, r] = bimodal_example();
    ValueTable bt = mp_value(g, r);
    for (int s = 0; s < 4; ++s) CHECK(bt.value[s] == rat(2));
}

TEST_CASE("values match the enumeration oracle and the threshold duality") {
    std::mt19937_64 rng(313);
    for (int iter = 0; iter < 50; ++iter) {
        Game g = random_total_game(rng, 5, 6, 0.4);
        RewardFunction rho = random_reward(rng, g, 3);
        ValueTable solver = mp_value(g, rho);
        ValueTable oracle = mp_oracle(g, rho);
        for (int s = 0; s < g.num_states(); ++s) REQUIRE(solver.value[s] == oracle.value[s]);
        for (int s = 0; s < g.num_states(); ++s) {
            CHECK(mp_threshold(g, rho, solver.value[s]).winning[s]);
            CHECK_FALSE(mp_threshold(g, rho, solver.value[s] + rat(1, 1000)).winning[s]);
        }
    }
}

TEST_CASE("threshold witnesses survive adversarial play") {
    std::mt19937_64 rng(317);
    int exercised = 0;
    for (int iter = 0; iter < 30; ++iter) {
        Game g = random_total_game(rng, 5, 6, 0.5);
        RewardFunction rho = random_reward(rng, g, 3);
        Rat b(std::uniform_int_distribution<int>(0, 5)(rng), 2);
        auto res = mp_threshold(g, rho, b);
        for (int s = 0; s < g.num_states(); ++s) {
            if (!res.winning[s]) continue;
            FiniteStrategy sigma;
            sigma.initial_state = s;
            for (int v = 0; v < g.num_states(); ++v) {
                sigma.update[FiniteStrategy::key(0, v)] = 0;
                if (res.strategy[v] >= 0)
                    sigma.choice[FiniteStrategy::key(0, v)] = res.strategy[v];
            }
            for (const auto& adv : all_positional(g, Owner::Diamond)) {
                Lasso l = simulate(g, sigma, adv);
                REQUIRE(mp_of_lasso(l, rho)[0] >= b);
                ++exercised;
            }
        }
    }
    CHECK(exercised > 50);
}

TEST_CASE("combined solving degenerates correctly") {
    std::mt19937_64 rng(331);
    for (int iter = 0; iter < 25; ++iter) {
        Game g = random_total_game(rng, 4, 5, 0.4);
        RewardFunction rho = random_reward(rng, g, 2);
        // A window objective admitting everything.
        WindowObjective trivial =
            wobj(2, 1, rho, rat(0), rat(2 * rho.max_stored(), 1));
        MultiObjective delta{{trivial}};
        for (int k = 0; k < 2; ++k) {
            Rat b(std::uniform_int_distribution<int>(0, 4)(rng), 2);
            auto mp = mp_threshold(g, rho, b);
            for (int s = 0; s < g.num_states(); ++s) {
                auto res = solve_combined(g, delta, MeanPayoffObjective{rho, b}, s);
                REQUIRE(res.achievable == static_cast<bool>(mp.winning[s]));
            }
        }
        // A zero bound on non-negative rewards reduces to the windows alone.
        WindowObjective phi = random_window_objective(rng, rho, {2});
        StrategyScheme sch = build_scheme(g, phi);
        for (int s = 0; s < g.num_states(); ++s) {
            auto res = solve_combined(g, MultiObjective{{phi}}, MeanPayoffObjective{rho, rat(0)}, s);
            REQUIRE(res.achievable == sch.init_defined(s));
        }
    }
}

TEST_CASE("combined verdicts and witnesses against the joint oracle") {
    std::mt19937_64 rng(337);
    int verdicts = 0, wins = 0;
    for (int iter = 0; iter < 40; ++iter) {
        Game g = random_total_game(rng, 4, 5, 0.3);
        RewardFunction rho = random_reward(rng, g, 1);
        WindowObjective phi = random_window_objective(rng, rho, {2});
        MultiObjective delta{{phi}};
        Rat b(std::uniform_int_distribution<int>(0, 2)(rng), 2);
        MeanPayoffObjective psi{rho, b};
        for (int s = 0; s < g.num_states(); ++s) {
            bool oracle;
            try {
                oracle = combined_oracle(g, {phi}, rho, b, s);
            } catch (const Error& e) {
                if (e.kind() == ErrorKind::TooLarge) continue;
                throw;
            }
            auto res = solve_combined(g, delta, psi, s);
            REQUIRE(res.achievable == oracle);
            ++verdicts;
            if (!res.achievable) continue;
            ++wins;
            for (const auto& adv : all_positional(g, Owner::Diamond)) {
                Lasso l = simulate(g, *res.strategy, adv);
                REQUIRE(check_window_run(l, delta));
                REQUIRE(mp_of_lasso(l, rho)[0] >= b);
            }
        }
    }
    CHECK(verdicts > 80);
    CHECK(wins > 10);
}

TEST_CASE("maximal bound: degenerate, forced-alternation and monotonicity") {
    {
        // Fully permissive windows: the bound is the plain optimum.
        auto [g, r] = bimodal_example();
        RewardFunction shifted = affine_shift(r, rat(10), Int(1));  // make rewards non-negative
        WindowObjective trivial = wobj(2, 1, shifted, rat(0), rat(shifted.max_stored()));
        auto bound = max_bound(g, MultiObjective{{trivial}}, shifted, 0);
        REQUIRE(bound.has_value());
        CHECK(*bound == mp_value_at(g, shifted, 0));
    }
    {
        // The windows force strict 0,4 alternation even though a reward-4
        // self-loop exists: the constrained optimum drops from 4 to 2.
        Game g = box_game(2, {{0, 1}, {1, 0}, {1, 1}});
        RewardFunction rho = reward({0, 4});
        WindowObjective phi = wobj(2, 1, rho, rat(2), rat(2));
        CHECK(mp_value_at(g, rho, 0) == rat(4));
        auto bound = max_bound(g, MultiObjective{{phi}}, rho, 0);
        REQUIRE(bound.has_value());
        CHECK(*bound == rat(2));
        // Unachievable windows yield no bound.
        CHECK_FALSE(max_bound(g, MultiObjective{{wobj(2, 1, rho, rat(3), rat(3))}}, rho, 0)
                        .has_value());
    }
    std::mt19937_64 rng(347);
    for (int iter = 0; iter < 25; ++iter) {
        Game g = random_total_game(rng, 4, 5, 0.3);
        RewardFunction rho = random_reward(rng, g, 1);
        WindowObjective phi = random_window_objective(rng, rho, {2});
        for (int s = 0; s < g.num_states(); ++s) {
            auto bound = max_bound(g, MultiObjective{{phi}}, rho, s);
            if (bound) CHECK(*bound <= mp_value_at(g, rho, s));
            std::optional<Rat> oracle;
            try {
                oracle = combined_value_oracle(g, {phi}, rho, s);
            } catch (const Error& e) {
                if (e.kind() == ErrorKind::TooLarge) continue;
                throw;
            }
            REQUIRE(bound.has_value() == oracle.has_value());
            if (bound) REQUIRE(*bound == *oracle);
        }
    }
}

TEST_CASE("dimension restrictions are explicit errors") {
    Game loop = box_game(1, {{0, 0}});
    RewardFunction two;
    two.name = "r";
    two.dim = 2;
    two.scale = 1;
    two.values = {{1, 2}};
    CHECK_THROWS_AS(mp_threshold(loop, two, rat(1)), Error);
    CHECK_THROWS_AS(
        solve_combined(loop, MultiObjective{{wobj(1, 1, reward({1}), rat(0), rat(1))}},
                       MeanPayoffObjective{two, rat(1)}, 0),
        Error);
}
