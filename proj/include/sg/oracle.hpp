#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "sg/cnf.hpp"
#include "sg/mpsolve.hpp"
#include "sg/objective.hpp"

namespace sg {

// Brute-force reference implementations, deliberately independent of the
// scheme/energy solving paths: the history automaton stores raw reward
// windows (never accumulated sums), mean payoffs come from positional
// enumeration over reachable cycle means, and the balanced SAT/QBF answers
// come from exhaustive search. Exceeding a cap is an error, never a silent
// truncation.
struct OracleCaps {
    std::size_t max_history_nodes = 2000000;
    long long max_strategy_leaves = 1000000;
    int max_balanced_vars = 24;
    int max_qbf_vars = 16;
};

// Explicit safety game over (state, reward-window history) nodes for a
// conjunction of window objectives. A node is bad iff some window closing
// there has an out-of-bounds sum; bad nodes are absorbing. Box wins from s
// iff the fresh-history node of s avoids the adversary attractor of bad.
struct HistoryGame {
    std::vector<int> state_of;            // per node: underlying game state
    std::vector<std::vector<int>> succ;   // per node: successor nodes (empty for bad)
    std::vector<char> bad;
    std::vector<char> box_safe;
    std::vector<int> init_node;           // per game state
};

HistoryGame history_safety_game(const Game& g, const std::vector<WindowObjective>& objs,
                                const OracleCaps& caps = {});

std::vector<char> window_winning_set(const Game& g, const std::vector<WindowObjective>& objs,
                                     const OracleCaps& caps = {});
bool window_oracle(const Game& g, const WindowObjective& phi, int s, const OracleCaps& caps = {});

// Exact minimum cycle mean over cycles reachable from `from` (semantic
// units, i.e. stored weights divided by scale). nullopt if no cycle is
// reachable -- impossible in a total game.
std::optional<Rat> min_reachable_cycle_mean(const std::vector<std::vector<int>>& succ,
                                            const std::vector<long long>& weight, long long scale,
                                            int from);

// Optimal mean payoff from s by enumeration: Box choices are branched
// lazily over the states actually reached, the adversary's best reply on
// each fully-determined subgraph is its minimum reachable cycle mean.
// Throws Error{TooLarge} past caps.max_strategy_leaves leaves.
Rat positional_minmax_value(const Game& g, const RewardFunction& rho, int s,
                            const OracleCaps& caps = {});

ValueTable mp_oracle(const Game& g, const RewardFunction& rho, const OracleCaps& caps = {});

// Joint verdict for (window conjunction) and (mean payoff >= b): solves the
// mean-payoff part by positional enumeration on the safety-restricted
// history game. value variant returns the exact optimum, nullopt when the
// window part alone is unachievable.
bool combined_oracle(const Game& g, const std::vector<WindowObjective>& objs,
                     const RewardFunction& rho, const Rat& b, int s, const OracleCaps& caps = {});
std::optional<Rat> combined_value_oracle(const Game& g, const std::vector<WindowObjective>& objs,
                                         const RewardFunction& rho, int s,
                                         const OracleCaps& caps = {});

// True iff some assignment with exactly n/2 ones satisfies the formula
// (full enumeration; n must be even).
bool balanced_sat_oracle(const Cnf& f, const OracleCaps& caps = {});

// True iff the formula has a balanced model: the existential player can
// ensure that every completed assignment has exactly n/2 ones and
// satisfies the matrix (exhaustive game-tree search).
bool balanced_qbf_oracle(const Qbf& f, const OracleCaps& caps = {});

}  // namespace sg
