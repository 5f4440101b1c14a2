#pragma once

#include <optional>
#include <vector>

#include "sg/objective.hpp"
#include "sg/scheme.hpp"

namespace sg {

// Winning set and positional witness for "mean payoff >= b" (Box maximizes
// the limit-inferior average of one-dimensional state rewards).
struct MpThresholdResult {
    std::vector<char> winning;
    std::vector<int> strategy;  // per Box state: chosen successor, -1 otherwise
    long long lifts = 0;        // lift counter of the energy iteration
};

// Solved by energy-game progress measures on the threshold-shifted integer
// game: "mp >= p/q" holds iff Box keeps the running sum of q*r(s) - p*scale
// bounded below, i.e. wins the energy game. Potentials are bounded by
// (|S|-1) * max negative weight; exceeding the bound means losing.
MpThresholdResult mp_threshold(const Game& g, const RewardFunction& rho, const Rat& b);

struct ValueTable {
    std::vector<Rat> value;  // per state: optimal mean payoff, in lowest terms
};

// Exact per-state optimal values. Each value is a reachable cycle average
// p/q with q <= |S|*scale, found by bisecting mp_threshold verdicts down to
// an interval containing a single such fraction and taking the simplest
// rational inside; the result is re-verified by two more threshold calls.
ValueTable mp_value(const Game& g, const RewardFunction& rho);
Rat mp_value_at(const Game& g, const RewardFunction& rho, int s);

struct CombinedResult {
    bool achievable = false;
    std::optional<FiniteStrategy> strategy;
};

// Window multi-objective Delta and mean-payoff objective Psi together:
// build the permissive scheme for Delta, lift Psi onto the scheme's product
// game, solve the threshold there from (s, Init(s)), and induce the
// finite-memory witness on success. Psi must be one-dimensional.
CombinedResult solve_combined(const Game& g, const MultiObjective& delta,
                              const MeanPayoffObjective& psi, int s);

// Maximal b such that Delta together with (rho, b) is achievable from s:
// the mean-payoff value of the scheme's product game at (s, Init(s)).
// nullopt when Delta itself is unachievable from s.
std::optional<Rat> max_bound(const Game& g, const MultiObjective& delta,
                             const RewardFunction& rho, int s);

}  // namespace sg
