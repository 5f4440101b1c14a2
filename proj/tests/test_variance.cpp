#include <doctest.h>

#include <random>

#include "sg/error.hpp"
#include "sg/mpsolve.hpp"
#include "sg/runcheck.hpp"
#include "sg/variance.hpp"
#include "test_util.hpp"

using namespace sg;
using namespace sg::test;

namespace {

FrequencyVector freq_on(const Game& g, std::vector<std::pair<std::pair<int, int>, Rat>> entries) {
    FrequencyVector f;
    f.f.assign(g.edges().size(), Rat(0));
    for (auto& [e, v] : entries) f.f[g.edge_index(e.first, e.second)] = v;
    return f;
}

ErrorKind kind_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    throw std::logic_error("expected an error");
}

}  // namespace

TEST_CASE("frequency statistics reproduce the example graph numbers") {
    auto [g, r] = bimodal_example();
    // Quarter weight on each direction of the 0/4 cycle, half on the stable
    // loop: mean 3/2 and variance 9/4, exactly.
    FrequencyVector f =
        freq_on(g, {{{0, 1}, rat(1, 4)}, {{1, 0}, rat(1, 4)}, {{3, 3}, rat(1, 2)}});
    FreqStats st = freq_stats(g, f, r, SupportRule::WithinScc);
    CHECK(st.mp == rat(3, 2));
    CHECK(st.va == rat(9, 4));
    CHECK(freq_constraints_check(g, f, r, rat(3, 2), rat(9, 4), SupportRule::WithinScc));
    // The support itself is two disconnected pieces: the strict rule rejects.
    CHECK(kind_of([&] { freq_stats(g, f, r, SupportRule::Strict); }) == ErrorKind::SupportNotScc);
}

TEST_CASE("frequency invariants are reported individually") {
    Game loop = box_game(1, {{0, 0}});
    RewardFunction r5 = reward({5});
    FrequencyVector f = freq_on(loop, {{{0, 0}, rat(1)}});
    FreqStats st = freq_stats(loop, f, r5);
    CHECK(st.mp == rat(5));
    CHECK(st.va == rat(0));

    Game two = box_game(2, {{0, 1}, {1, 0}, {1, 1}});
    CHECK(kind_of([&] {
              freq_stats(two, freq_on(two, {{{0, 1}, rat(1, 2)}, {{1, 1}, rat(1, 2)}}),
                         reward({0, 1}));
          }) == ErrorKind::FlowViolation);
    CHECK(kind_of([&] {
              freq_stats(two, freq_on(two, {{{0, 1}, rat(1, 2)}, {{1, 0}, rat(1, 4)}}),
                         reward({0, 1}));
          }) == ErrorKind::NotDistribution);

    // Two disjoint loops: support crosses two components under both rules.
    Game split = box_game(2, {{0, 0}, {1, 1}});
    FrequencyVector half = freq_on(split, {{{0, 0}, rat(1, 2)}, {{1, 1}, rat(1, 2)}});
    CHECK(kind_of([&] { freq_stats(split, half, reward({0, 1}), SupportRule::Strict); }) ==
          ErrorKind::SupportNotScc);
    CHECK(kind_of([&] { freq_stats(split, half, reward({0, 1}), SupportRule::WithinScc); }) ==
          ErrorKind::SupportNotScc);
}

TEST_CASE("feasibility search finds the exact optimum vertices") {
    auto [g, r] = bimodal_example();
    auto found = freq_feasibility(g, r, rat(3, 2), rat(9, 4), 0);
    REQUIRE(found.has_value());
    FreqStats st = freq_stats(g, *found, r, SupportRule::WithinScc);
    CHECK(st.mp >= rat(3, 2));
    CHECK(st.va <= rat(9, 4));

    // Above the graph's optimum nothing is feasible.
    CHECK_FALSE(freq_feasibility(g, r, rat(3), rat(1000), 0).has_value());
    // Zero variance at the stable loop's payoff: supported on that loop.
    auto stable = freq_feasibility(g, r, rat(1), rat(0), 0);
    REQUIRE(stable.has_value());
    CHECK(stable->f[g.edge_index(3, 3)] == rat(1));
    // Tighter than the exact optimum at mp >= 3/2 is infeasible.
    CHECK_FALSE(freq_feasibility(g, r, rat(3, 2), rat(9, 4) - rat(1, 1000), 0).has_value());
}

TEST_CASE("feasibility respects reachability") {
    // State 2's loop is not reachable from 0.
    Game g = box_game(3, {{0, 1}, {1, 0}, {2, 2}});
    RewardFunction rho = reward({0, 0, 5});
    CHECK_FALSE(freq_feasibility(g, rho, rat(5), rat(0), 0).has_value());
    CHECK(freq_feasibility(g, rho, rat(5), rat(0), 2).has_value());
}

TEST_CASE("euler realization hits the requested frequencies exactly") {
    {
        Game two = box_game(2, {{0, 1}, {1, 0}});
        Lasso l = euler_strategy(two, freq_on(two, {{{0, 1}, rat(1, 2)}, {{1, 0}, rat(1, 2)}}));
        CHECK(l.cycle.size() == 2);
    }
    {
        // Self-loop at weight 1/3 plus the two-cycle: period 3, each edge once.
        Game g = box_game(2, {{0, 0}, {0, 1}, {1, 0}});
        FrequencyVector f =
            freq_on(g, {{{0, 0}, rat(1, 3)}, {{0, 1}, rat(1, 3)}, {{1, 0}, rat(1, 3)}});
        Lasso l = euler_strategy(g, f);
        CHECK(l.cycle == std::vector<int>{0, 0, 1});
        std::vector<int> period(l.cycle);
        period.push_back(l.cycle[0]);
        CHECK(empirical_frequencies(g, period) == f.f);
    }
    std::mt19937_64 rng(503);
    for (int iter = 0; iter < 60; ++iter) {
        Game g = random_strongly_connected_graph(rng, 5);
        FrequencyVector f = random_circulation(rng, g, 3);
        Lasso l = euler_strategy(g, f);
        std::vector<int> period(l.cycle);
        period.push_back(l.cycle[0]);
        REQUIRE(empirical_frequencies(g, period) == f.f);

        // Frequency semantics equals run semantics on the realized lasso.
        RewardFunction rho = random_reward(rng, g, 4);
        FreqStats st = freq_stats(g, f, rho);
        REQUIRE(st.mp == mp_of_lasso(l, rho)[0]);
        REQUIRE(st.va == va_of_lasso(l, rho)[0]);
    }
}

TEST_CASE("empirical frequencies count transitions") {
    Game two = box_game(2, {{0, 1}, {1, 0}});
    auto f = empirical_frequencies(two, {0, 1, 0, 1, 0});
    CHECK(f[two.edge_index(0, 1)] == rat(1, 2));
    CHECK(f[two.edge_index(1, 0)] == rat(1, 2));
    CHECK_THROWS_AS(empirical_frequencies(two, {0}), Error);
}

TEST_CASE("variance expression: fixed points, positivity, consistency") {
    CHECK(variance_expression(rat(3, 2), rat(0)) == rat(9, 4));
    CHECK(variance_expression(rat(2), rat(0)) == rat(4));

    // The penalty coefficient alone, recovered as a difference.
    Rat coeff = variance_expression(rat(3, 2), rat(1)) - variance_expression(rat(3, 2), rat(0));
    CHECK(coeff > rat(0));

    // Consistency with the direct frequency computation of the example
    // graph: f_B = f_A = (x + 11 f_C - 1)/2, f_D = 2 - x - 12 f_C.
    auto direct = [](const Rat& x, const Rat& fc) {
        Rat fa = (x + Rat(11) * fc - Rat(1)) / Rat(2);
        Rat fd = Rat(2) - x - Rat(12) * fc;
        return fa * x * x + fa * (Rat(4) - x) * (Rat(4) - x) +
               fc * (Rat(-10) - x) * (Rat(-10) - x) + fd * (Rat(1) - x) * (Rat(1) - x);
    };
    for (int i = 0; i <= 40; ++i) {
        Rat x = rat(3, 2) + rat(i, 80);
        for (int j = 0; j <= 3; ++j) {
            Rat fc = rat(j, 100);
            CHECK(variance_expression(x, fc) == direct(x, fc));
        }
    }
}

TEST_CASE("phase schedule: validation and a degenerate single phase") {
    Game two = box_game(2, {{0, 1}, {1, 0}});
    FrequencyVector f = freq_on(two, {{{0, 1}, rat(1, 2)}, {{1, 0}, rat(1, 2)}});
    CHECK_THROWS_AS(phase_plan(two, {f}, {rat(1, 5)}), Error);          // eps too large
    CHECK_THROWS_AS(phase_plan(two, {f, f}, {rat(1, 20), rat(1, 20)}), Error);  // not decreasing
    CHECK_THROWS_AS(phase_plan(two, {f, f}, {rat(1, 20)}), Error);      // arity mismatch

    PhasePlan plan = phase_plan(two, {f}, {rat(1, 10)});
    REQUIRE(plan.phases.size() == 1);
    std::vector<int> prefix;
    plan_visit(two, plan, plan.total_steps(), [&](int s) { prefix.push_back(s); });
    prefix.push_back(prefix[0]);  // close the period for counting
    auto emp = empirical_frequencies(two, prefix);
    CHECK(emp == f.f);
}

TEST_CASE("phase schedule drives the example graph towards the limit point") {
    auto [g, r] = bimodal_example();
    // Round n: n+1 high-low swings, a bridge crossing, 2n stable steps.
    auto round_target = [&](long long n) {
        FrequencyVector f;
        f.f.assign(g.edges().size(), Rat(0));
        long long len = 4 * n + 5;
        f.f[g.edge_index(0, 1)] = rat(n + 1, len);
        f.f[g.edge_index(1, 0)] = rat(n, len);
        f.f[g.edge_index(1, 2)] = rat(1, len);
        f.f[g.edge_index(2, 3)] = rat(1, len);
        f.f[g.edge_index(3, 3)] = rat(2 * n, len);
        f.f[g.edge_index(3, 2)] = rat(1, len);
        f.f[g.edge_index(2, 0)] = rat(1, len);
        return f;
    };
    std::vector<FrequencyVector> targets;
    std::vector<Rat> eps;
    long long n = 4;
    for (int i = 0; i < 5; ++i, n *= 4) {
        targets.push_back(round_target(n));
        eps.push_back(rat(1, 10) - rat(i, 200));
    }
    PhasePlan probe = phase_plan(g, targets, eps, 0);
    PhasePlan plan = phase_plan(g, targets, eps, 0, 4 * probe.total_steps());

    // The guaranteed lower bound on empirical frequencies between cutovers.
    std::mt19937_64 rng(509);
    for (std::size_t i = 0; i + 1 < plan.phases.size(); ++i) {
        long long k0 = plan.phases[i].end, k1 = plan.phases[i + 1].end;
        long long probe = k0 + (k1 - k0) / 2;
        std::vector<long long> counts(g.edges().size(), 0);
        int prev = -1;
        long long steps = 0;
        plan_visit(g, plan, probe + 1, [&](int s) {
            if (prev >= 0) ++counts[g.edge_index(prev, s)];
            prev = s;
            ++steps;
        });
        for (std::size_t e = 0; e < counts.size(); ++e) {
            Rat emp(counts[e], steps - 1);
            Rat floor_i = std::min(targets[i].f[e], targets[i + 1].f[e]) - Rat(2) * eps[i];
            REQUIRE(emp >= floor_i);
        }
    }

    RunMeasurement m = measure_plan(g, r, plan);
    CHECK(std::abs(m.mp - 1.5) < 0.1);
    CHECK(std::abs(m.va - 2.25) < 0.35);
    CHECK(m.edge_freq[g.edge_index(1, 2)] < 0.01);
}
