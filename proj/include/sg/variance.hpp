#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "sg/game.hpp"
#include "sg/objective.hpp"

namespace sg {

// Per-edge long-run frequencies, aligned with game.edges().
struct FrequencyVector {
    std::vector<Rat> f;
};

// Connectedness requirement on the support {e : f_e > 0}.
//   Strict:    the support edges themselves form one strongly connected
//              subgraph (realizable by a single finite cycle).
//   WithinScc: the support lies inside one strongly connected component of
//              the full graph (realizable only in the limit, by phases that
//              bridge the support components with vanishing frequency).
enum class SupportRule { Strict, WithinScc };

struct FreqStats {
    Rat mp;
    Rat va;
};

// Validates the frequency invariants (throws Error{NotDistribution,
// FlowViolation, SupportNotScc} naming the broken one) and returns the
// exact mean payoff  mp = sum_s f_s * rho(s)  with f_s the inflow of s,
// and variance  va = sum_s f_s * (rho(s) - mp)^2.
FreqStats freq_stats(const Game& g, const FrequencyVector& f, const RewardFunction& rho,
                     SupportRule rule = SupportRule::Strict);

// freq_stats plus the verdict  mp >= b  and  va <= c.
bool freq_constraints_check(const Game& g, const FrequencyVector& f, const RewardFunction& rho,
                            const Rat& b, const Rat& c, SupportRule rule = SupportRule::Strict);

// Searches the flow polytopes of the strongly connected components
// reachable from `from` for a vector minimizing va subject to mp >= b. The
// variance is concave over each polytope slice, so the minimum sits at a
// vertex: a single simple-cycle flow with mp >= b, or a combination of two
// simple cycles whose means straddle b, mixed to hit mp = b exactly. Both
// families are enumerated exactly and the winner is re-verified through
// freq_constraints_check before being returned. nullopt means no vector
// with support inside one reachable component satisfies the constraints.
std::optional<FrequencyVector> freq_feasibility(const Game& g, const RewardFunction& rho,
                                                const Rat& b, const Rat& c, int from = 0,
                                                std::size_t cycle_cap = 200000);

// Realizes a rational frequency vector with strongly connected support as a
// finite cycle: multiplies f by the least common denominator to integer
// edge multiplicities and threads an Euler circuit through the resulting
// multigraph. The returned lasso (empty prefix) visits each edge e exactly
// f_e * lcm times per period, so its empirical frequencies equal f.
// start picks the circuit's first state (-1: smallest support state).
Lasso euler_strategy(const Game& g, const FrequencyVector& f, int start = -1);

struct Phase {
    FrequencyVector target;
    std::vector<int> cycle;   // one Euler period of the target
    Rat eps;
    long long stabilization;  // L: length after which the cycle's empirical
                              // frequencies stay eps-close to the target
    long long end;            // K: run position where the phase ends
};

struct PhasePlan {
    std::vector<Phase> phases;
    long long total_steps() const { return phases.empty() ? 0 : phases.back().end; }
};

// Phase schedule approximating a limit frequency vector: phase i plays the
// Euler cycle of f^i (full support required, so consecutive phases connect
// at whatever state the cutover happens) until the run's empirical
// frequencies are within eps_i of f^i and eps_i^2 * K_i covers the next
// phase's stabilization length. eps must be strictly decreasing with
// eps_0 <= 1/10 (Error{BadSchedule} otherwise). final_min_steps, when
// non-negative, overrides the length rule of the last phase.
PhasePlan phase_plan(const Game& g, const std::vector<FrequencyVector>& targets,
                     const std::vector<Rat>& eps, int start_state = 0,
                     long long final_min_steps = -1, long long step_cap = 2000000000LL);

// Streams the first n states of the plan's run.
void plan_visit(const Game& g, const PhasePlan& plan, long long n,
                const std::function<void(int)>& visit);

// Empirical per-edge frequencies of a finite run prefix: occurrence counts
// of each edge among the consecutive transitions, divided by the number of
// transitions.
std::vector<Rat> empirical_frequencies(const Game& g, const std::vector<int>& prefix);

// Cumulative empirical statistics of a plan run (measurement only, double
// precision): mean payoff, variance, and per-edge frequencies after n steps.
struct RunMeasurement {
    double mp = 0;
    double va = 0;
    std::vector<double> edge_freq;
};
RunMeasurement measure_plan(const Game& g, const RewardFunction& rho, const PhasePlan& plan,
                            long long n = -1);

// Variance of the four-state example family expressed through the achieved
// mean x and the frequency f_c of the penalty state:
//   ((x-1)/2) * (x^2 + (4-x)^2) + (2-x) * (1-x)^2
//   + f_c * ((11/2) * (x^2 + (4-x)^2) + (-10-x)^2 - 12 * (1-x)^2)
Rat variance_expression(const Rat& x, const Rat& f_c);

}  // namespace sg
