#pragma once

#include <vector>

#include "sg/game.hpp"
#include "sg/rational.hpp"

namespace sg {

// Requires every local window average (over W states, evaluated at every
// checkpoint 0, D, 2D, ...) to lie in [mu, nu] component-wise. D must
// divide W. The very first window, starting at position 0, is checked too.
struct WindowObjective {
    int W = 1;
    int D = 1;
    RewardFunction rho;
    std::vector<Rat> mu;  // length rho.dim
    std::vector<Rat> nu;

    int checkpoints_per_window() const { return W / D; }
};

// Throws Error{BadObjective} if D does not divide W, bounds have the wrong
// dimension, or W, D are not positive. (mu > nu is representable: the
// objective is then unachievable and solvers report an empty winning set.)
void validate_objective(const Game& g, const WindowObjective& phi);

struct MultiObjective {
    std::vector<WindowObjective> conjuncts;  // non-empty
};

void validate_objective(const Game& g, const MultiObjective& delta);

// Product over conjuncts of W * (maxr*W)^(k*W/D) -- the memory bound of the
// permissive-scheme construction.
Int memory_bound(const MultiObjective& delta);

// Satisfied by runs with mean payoff >= b (one-dimensional rewards).
struct MeanPayoffObjective {
    RewardFunction rho;
    Rat b;
};

// Satisfied by runs with mean payoff >= b and long-run variance <= c.
struct VarianceObjective {
    RewardFunction rho;
    Rat b;
    Rat c;
};

// Closed integer window-sum bounds equivalent to mu*W <= sum/scale <= nu*W.
// A window of W states with stored integer rewards satisfies the objective
// in dimension d iff lo[d] <= sum <= hi[d].
struct WindowSumBounds {
    std::vector<long long> lo;
    std::vector<long long> hi;
};
WindowSumBounds window_sum_bounds(const WindowObjective& phi);

// rho'(s) = c * (rho(s) + t) with integer, non-negative outputs (scale 1).
// Throws Error{BadReward} if some output is negative or non-integral.
RewardFunction affine_shift(const RewardFunction& rho, const Rat& t, const Int& c);

// Bound transformation matching affine_shift: window satisfaction is
// preserved because every window has exactly W summands.
WindowObjective affine_shift(const WindowObjective& phi, const Rat& t, const Int& c);
MultiObjective affine_shift(const MultiObjective& delta, const Rat& t, const Int& c);
MeanPayoffObjective affine_shift(const MeanPayoffObjective& psi, const Rat& t, const Int& c);

}  // namespace sg
