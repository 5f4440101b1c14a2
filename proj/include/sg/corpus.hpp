#pragma once

#include <random>
#include <utility>
#include <vector>

#include "sg/cnf.hpp"
#include "sg/game.hpp"
#include "sg/objective.hpp"
#include "sg/variance.hpp"

namespace sg {

// Seeded generators for the randomized cross-validation corpora, plus the
// small fixed examples used throughout the tests and docs. Deterministic
// for a fixed seed.
using Rng = std::mt19937_64;

Game random_total_game(Rng& rng, int max_states, int max_extra_edges, double diamond_prob);
Game random_strongly_connected_graph(Rng& rng, int max_states);

// Uniform stored values in [0, max_value], at least one state positive.
RewardFunction random_reward(Rng& rng, const Game& g, long long max_value,
                             const std::string& name = "r");

// Window bounds sampled as integer window-sum brackets mu = a/W, nu = b/W,
// biased to straddle achievable sums so both verdicts occur.
WindowObjective random_window_objective(Rng& rng, const RewardFunction& rho,
                                        const std::vector<int>& window_sizes);

// Random 3-CNF without tautological clauses (balanced problems treat them
// as noise: they are satisfied by every assignment).
Cnf random_cnf(Rng& rng, int num_vars, int max_clauses);
Qbf random_qbf(Rng& rng, int num_vars, int max_clauses);

// Circulation sampled as a sum of random closed walks through state 0,
// normalized; the support is strongly connected by construction.
FrequencyVector random_circulation(Rng& rng, const Game& g, int walks, int max_walk_len = 32);

// All positional strategies of one player: per strategy, the chosen
// successor per owned state (-1 elsewhere).
std::vector<std::vector<int>> all_positional(const Game& g, Owner player);

// Four-state example graph with one high-reward unstable cycle (rewards 0
// and 4), one low-reward stable loop (reward 1), and a heavily penalized
// bridge state (reward -10) connecting them.
std::pair<Game, RewardFunction> bimodal_example();

}  // namespace sg
